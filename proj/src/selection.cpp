#include "rcop/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcop/errors.hpp"

namespace rcop {

void Hyperparams::validate() const {
    if (!(delta > 2.0)) {
        throw IntegrabilityError("prior shape delta must exceed 2 (got " + std::to_string(delta) + ")");
    }
    if (D.rows() != D.cols() || D.rows() == 0) throw ShapeError("prior scale D must be square");
    if ((D - D.transpose()).norm() > 1e-12 * std::max(1.0, D.norm())) {
        throw DomainError("prior scale D must be symmetric");
    }
    if (!is_positive_definite(D)) throw DomainError("prior scale D must be positive definite");
}

DataSummary summarize_data(const MatrixXd& rows, bool center) {
    if (rows.rows() < 2) throw ShapeError("need at least two observations");
    DataSummary out;
    out.n_raw = static_cast<int>(rows.rows());
    out.centered = center;
    if (center) {
        const MatrixXd c = rows.rowwise() - rows.colwise().mean();
        out.scatter = c.transpose() * c;
        out.n_effective = out.n_raw - 1;
    } else {
        out.scatter = rows.transpose() * rows;
        out.n_effective = out.n_raw;
    }
    out.scatter = symmetrized(out.scatter);
    return out;
}

DataSummary exam_marks_fixture() {
    DataSummary d;
    d.scatter.resize(5, 5);
    // Cell (2,5) is 8614.05 by symmetry with (5,2).
    d.scatter << 26601.82, 11068.36, 8837.41, 9245.73, 10214.23,
                 11068.36, 15037.27, 7408.68, 8236.55, 8614.05,
                 8837.41, 7408.68, 9821.08, 9753.86, 10602.74,
                 9245.73, 8236.55, 9753.86, 19173.09, 13531.59,
                 10214.23, 8614.05, 10602.74, 13531.59, 25904.72;
    d.n_raw = 88;
    d.n_effective = 87;
    d.centered = true;
    return d;
}

double log_I(const Model& model, double delta, const MatrixXd& D, EvaluationPath path,
             const PsiOptions<double>& newton) {
    Hyperparams{delta, D}.validate();
    if (D.rows() != model.space.ambient_dim()) throw ShapeError("prior scale has wrong dimension");
    if (!model.realization) {
        throw CapabilityError("model " + model.id +
                              " has no matrix realization; its gamma integral is unavailable");
    }
    const double alpha = (delta - 2.0) / 2.0;
    const MatrixXd y = model.space.project(D) / 2.0;

    double ld = 0, lp = 0;
    if (path == EvaluationPath::fast) {
        const auto dp = model.realization->delta_phi(y);
        ld = dp.log_delta;
        lp = dp.log_phi;
    } else {
        const auto cv = cone_values(model.space, y, newton);
        ld = cv.log_delta;
        lp = cv.log_phi;
    }
    return model.realization->log_gamma(alpha) + lp - alpha * ld;
}

const ModelScore& SelectionReport::best() const {
    for (const auto& m : models) {
        if (m.model_id == winner) return m;
    }
    throw Error("selection report has no winner");
}

SelectionReport posterior(const std::vector<Model>& models, const DataSummary& data,
                          const Hyperparams& h, EvaluationPath path,
                          const PsiOptions<double>& newton) {
    h.validate();
    if (models.empty()) throw InputError("no candidate models");
    SelectionReport report;
    const MatrixXd post_scale = h.D + data.scatter;
    const double post_delta = h.delta + data.n_effective;
    for (const auto& m : models) {
        if (!(m.space.graph() == models.front().space.graph())) {
            throw InputError("candidate models must share one graph");
        }
        ModelScore s;
        s.model_id = m.id;
        s.merged_labels = m.merged_labels;
        s.dim = m.space.dim();
        s.log_I_prior = log_I(m, h.delta, h.D, path, newton);
        s.log_I_posterior = log_I(m, post_delta, post_scale, path, newton);
        s.log_score = s.log_I_posterior - s.log_I_prior;
        report.models.push_back(std::move(s));
    }
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& s : report.models) top = std::max(top, s.log_score);
    double total = 0;
    for (const auto& s : report.models) total += std::exp(s.log_score - top);
    const double lse = top + std::log(total);
    const ModelScore* best = nullptr;
    for (auto& s : report.models) {
        s.probability = std::exp(s.log_score - lse);
        if (!best || s.probability > best->probability) best = &s;
    }
    report.winner = best->model_id;
    return report;
}

MatrixXd fit_concentration(const Model& model, const DataSummary& data,
                           const PsiOptions<double>& newton) {
    if (data.n_effective <= 0) throw DomainError("need a positive effective sample size");
    const MatrixXd y = model.space.project(data.scatter / static_cast<double>(data.n_effective));
    MatrixXd k = psi(model.space, y, newton).x_star;
    // Structural zeros are exact, not merely small.
    const auto& g = model.space.graph();
    for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j) {
            if (i != j && !g.adjacent(i, j)) k(i, j) = 0.0;
        }
    }
    return k;
}

Model make_model(const Graph& g, const PermutationGroup& group, std::string id,
                 const Registry* registry) {
    InvariantSpace<double> z(g, group);
    auto realization = find_realization(z, registry);
    return Model{id, {id}, std::move(z), std::move(realization)};
}

std::vector<Model> candidate_models(const Graph& g, const Registry* registry) {
    if (!is_homogeneous_graph(g)) {
        throw DomainError("homogeneous graph required (chordal and without induced 4-vertex paths)");
    }
    const auto subgroups = enumerate_subgroups(automorphism_group(g));
    const bool labelled = registry && registry->graph == g;

    struct Entry {
        std::string label;
        InvariantSpace<double> space;
    };
    std::vector<Entry> all;
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        std::string label = "S" + std::to_string(i + 1);
        if (labelled) {
            if (auto l = registry->label_of(subgroups[i])) label = *l;
        }
        all.push_back({std::move(label), InvariantSpace<double>(g, subgroups[i])});
    }
    // Registry labels follow their own numbering; order classes by it.
    auto label_key = [](const std::string& s) {
        std::size_t pos = s.find_first_of("0123456789");
        const int num = pos == std::string::npos ? 0 : std::stoi(s.substr(pos));
        return std::make_pair(s.substr(0, pos), num);
    };
    std::stable_sort(all.begin(), all.end(),
                     [&](const Entry& a, const Entry& b) { return label_key(a.label) < label_key(b.label); });

    std::vector<Model> models;
    for (auto& e : all) {
        auto it = std::find_if(models.begin(), models.end(),
                               [&](const Model& m) { return same_space(m.space, e.space); });
        if (it != models.end()) {
            it->merged_labels.push_back(e.label);
            continue;
        }
        auto realization = find_realization(e.space, registry);
        models.push_back(Model{e.label, {e.label}, std::move(e.space), std::move(realization)});
    }
    return models;
}

}  // namespace rcop
