#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "rcop/cone.hpp"
#include "rcop/errors.hpp"
#include "rcop/graph.hpp"
#include "rcop/io.hpp"
#include "rcop/oracle.hpp"
#include "rcop/registry.hpp"
#include "rcop/selection.hpp"

namespace rcop::cli {

namespace {

struct RunConfig {
    std::string graph_path;
    std::string data_path;
    std::string scatter_path;
    std::string fixture;
    int scatter_n = 0;
    double delta = 3.0;
    double d_scale = 1.0;
    std::string D_path;
    bool no_center = false;
    std::string output = "table";
    std::uint64_t seed = kDefaultMcSeed;
    bool verbose = false;
    // command-specific
    std::string model_id;
    std::string point_path;
    std::optional<double> alpha;
    std::string path = "fast";
    std::string level = "fast";
    std::string registry_path;
    long samples = 200000;
};

/// Verification failures are reported, not thrown, so they carry their own code.
struct VerificationFailed {};

bool json_output(const RunConfig& c) { return c.output == "json"; }

bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

MatrixXd read_matrix_file(const std::string& path) {
    if (is_json_path(path)) {
        return matrix_from_json(read_json_file(path));
    }
    return read_csv_file(path);
}

void require_known_fixture(const RunConfig& c) {
    if (!c.fixture.empty() && c.fixture != "exam-marks") {
        throw InputError("unknown fixture \"" + c.fixture + "\" (available: exam-marks)");
    }
}

Graph load_graph(const RunConfig& c) {
    require_known_fixture(c);
    if (!c.graph_path.empty()) return read_graph_file(c.graph_path);
    if (c.fixture == "exam-marks") return butterfly_graph();
    throw InputError("a graph is required: pass --graph PATH or --fixture exam-marks");
}

DataSummary load_data(const RunConfig& c) {
    require_known_fixture(c);
    const int sources = !c.data_path.empty() + !c.scatter_path.empty() + !c.fixture.empty();
    if (sources != 1) throw InputError("exactly one of --data, --scatter, --fixture is required");
    if (!c.data_path.empty()) return summarize_data(read_csv_file(c.data_path), !c.no_center);
    if (!c.scatter_path.empty()) {
        DataSummary d;
        if (is_json_path(c.scatter_path) && read_json_file(c.scatter_path).is_object()) {
            const json j = read_json_file(c.scatter_path);
            try {
                d.scatter = matrix_from_json(j.at("scatter"));
                d.n_raw = j.at("n_raw").get<int>();
                d.centered = j.value("centered", true);
            } catch (const json::exception& ex) {
                throw InputError(std::string("malformed scatter JSON: ") + ex.what());
            }
            d.n_effective = d.centered ? d.n_raw - 1 : d.n_raw;
        } else {
            if (c.scatter_n <= 0) throw InputError("a CSV or array --scatter needs a positive sample count via --n");
            d.scatter = read_matrix_file(c.scatter_path);
            d.n_raw = d.n_effective = c.scatter_n;
        }
        if (c.scatter_n > 0) d.n_effective = c.scatter_n;
        if (d.n_effective <= 0) throw InputError("sample count must be positive");
        if (d.scatter.rows() != d.scatter.cols()) throw InputError("scatter matrix must be square");
        if ((d.scatter - d.scatter.transpose()).norm() > 1e-9 * d.scatter.norm()) {
            throw InputError("scatter matrix must be symmetric");
        }
        return d;
    }
    return exam_marks_fixture();
}

Hyperparams load_hyperparams(const RunConfig& c, int p) {
    if (!(c.delta > 2.0)) throw InputError("--delta must exceed 2");
    Hyperparams h;
    h.delta = c.delta;
    if (!c.D_path.empty()) {
        h.D = read_matrix_file(c.D_path);
    } else {
        if (!(c.d_scale > 0)) throw InputError("--d-scale must be positive");
        h.D = c.d_scale * MatrixXd::Identity(p, p);
    }
    if (h.D.rows() != p || h.D.cols() != p) throw InputError("prior scale D must be " + std::to_string(p) + "x" + std::to_string(p));
    if (!is_positive_definite(h.D) || (h.D - h.D.transpose()).norm() > 1e-12 * h.D.norm()) {
        throw InputError("prior scale D must be symmetric positive definite");
    }
    return h;
}

PsiOptions<double> newton_options(const RunConfig& c, std::ostream& err) {
    PsiOptions<double> opts;
    if (c.verbose) {
        opts.observer = [&err](const NewtonTrace<double>& t) {
            err << json{{"iteration", t.iteration},
                        {"objective", t.objective},
                        {"gradient_norm", t.gradient_norm},
                        {"decrement", t.decrement},
                        {"step", t.step}}
                       .dump()
                << '\n';
        };
    }
    return opts;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

std::vector<std::string> cycle_strings(const std::vector<Permutation>& perms) {
    std::vector<std::string> out;
    for (const auto& p : perms) out.push_back(p.to_cycle_string());
    return out;
}

const Model& find_model(const std::vector<Model>& models, const std::string& id) {
    for (const auto& m : models) {
        if (std::find(m.merged_labels.begin(), m.merged_labels.end(), id) != m.merged_labels.end()) return m;
    }
    std::vector<std::string> known;
    for (const auto& m : models) known.insert(known.end(), m.merged_labels.begin(), m.merged_labels.end());
    throw InputError("unknown model \"" + id + "\" (available: " + join(known, ", ") + ")");
}

std::string scientific(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << v;
    return s.str();
}

/// Sorts "Gamma10" after "Gamma9".
std::pair<std::string, int> label_key(const std::string& s) {
    const std::size_t pos = s.find_first_of("0123456789");
    return {s.substr(0, pos), pos == std::string::npos ? 0 : std::stoi(s.substr(pos))};
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

// ---------------------------------------------------------------------------

int cmd_aut(const RunConfig& c, std::ostream& out) {
    const auto g = load_graph(c);
    const auto aut = automorphism_group(g);
    const auto gens = cycle_strings(aut.generators());
    if (json_output(c)) {
        out << json{{"order", aut.order()}, {"generators", gens}, {"elements", cycle_strings(aut.elements())}}.dump(2)
            << '\n';
    } else {
        out << "order " << aut.order() << "; generators " << (gens.empty() ? "none" : join(gens, ", ")) << '\n';
    }
    return kOk;
}

int cmd_subgroups(const RunConfig& c, std::ostream& out) {
    const auto g = load_graph(c);
    const auto subgroups = enumerate_subgroups(automorphism_group(g));
    const Registry& reg = butterfly_registry();
    const bool labelled = reg.graph == g;

    struct Row {
        std::string label;
        std::size_t order;
        std::vector<std::string> generators;
        int dim;
        std::string space_class;
    };
    std::vector<std::pair<std::string, const PermutationGroup*>> labelled_groups;
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        std::string label = "S" + std::to_string(i + 1);
        if (labelled) {
            if (auto l = reg.label_of(subgroups[i])) label = *l;
        }
        labelled_groups.emplace_back(std::move(label), &subgroups[i]);
    }
    std::stable_sort(labelled_groups.begin(), labelled_groups.end(),
                     [](const auto& a, const auto& b) { return label_key(a.first) < label_key(b.first); });

    std::vector<Row> rows;
    std::vector<std::pair<std::string, InvariantSpace<double>>> classes;
    for (const auto& [label, group] : labelled_groups) {
        InvariantSpace<double> z(g, *group);
        std::string cls = label;
        for (const auto& [name, space] : classes) {
            if (same_space(space, z)) {
                cls = name;
                break;
            }
        }
        if (cls == label) classes.emplace_back(label, z);
        rows.push_back({label, group->order(), cycle_strings(group->generators()), z.dim(), cls});
    }
    if (json_output(c)) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"label", r.label},
                           {"order", r.order},
                           {"generators", r.generators},
                           {"dim", r.dim},
                           {"space_class", r.space_class}});
        }
        out << json{{"count", rows.size()}, {"classes", classes.size()}, {"subgroups", arr}}.dump(2) << '\n';
        return kOk;
    }
    out << std::left << std::setw(9) << "label" << std::setw(7) << "order" << std::setw(5) << "dim"
        << std::setw(9) << "class"
        << "generators\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(9) << r.label << std::setw(7) << r.order << std::setw(5) << r.dim
            << std::setw(9) << r.space_class << (r.generators.empty() ? "e" : join(r.generators, ", ")) << '\n';
    }
    out << rows.size() << " subgroups, " << classes.size() << " distinct invariant spaces\n";
    return kOk;
}

int cmd_select(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto g = load_graph(c);
    const auto data = load_data(c);
    if (data.scatter.rows() != g.size()) throw InputError("data dimension does not match the graph");
    const auto h = load_hyperparams(c, g.size());
    const auto models = candidate_models(g, &butterfly_registry());
    const auto path = c.path == "numeric" ? EvaluationPath::numeric : EvaluationPath::fast;
    const auto report = posterior(models, data, h, path, newton_options(c, err));

    if (json_output(c)) {
        json arr = json::array();
        for (const auto& m : report.models) {
            arr.push_back({{"model_id", m.model_id},
                           {"merged_labels", m.merged_labels},
                           {"dim", m.dim},
                           {"log_I_prior", m.log_I_prior},
                           {"log_I_posterior", m.log_I_posterior},
                           {"log_score", m.log_score},
                           {"probability", m.probability}});
        }
        out << json{{"models", arr}, {"winner", report.winner}}.dump(2) << '\n';
        return kOk;
    }
    out << "delta " << h.delta << ", n " << data.n_effective << ", " << models.size() << " model classes\n";
    out << std::left << std::setw(9) << "model" << std::setw(24) << "merged" << std::right << std::setw(4) << "dim"
        << std::setw(14) << "log I prior" << std::setw(14) << "log I post" << std::setw(12) << "log score"
        << std::setw(7) << "prob" << '\n';
    for (const auto& m : report.models) {
        out << std::left << std::setw(9) << m.model_id << std::setw(24) << join(m.merged_labels, ",") << std::right
            << std::setw(4) << m.dim << std::setw(14) << fixed(m.log_I_prior, 4) << std::setw(14)
            << fixed(m.log_I_posterior, 4) << std::setw(12) << fixed(m.log_score, 4) << std::setw(7)
            << fixed(m.probability, 2) << '\n';
    }
    out << "winner " << report.winner << " (probability " << fixed(report.best().probability, 2) << ")\n";
    return kOk;
}

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.model_id.empty()) throw InputError("fit needs --model ID");
    const auto g = load_graph(c);
    const auto data = load_data(c);
    if (data.scatter.rows() != g.size()) throw InputError("data dimension does not match the graph");
    const auto models = candidate_models(g, &butterfly_registry());
    const Model& m = find_model(models, c.model_id);
    const MatrixXd k = fit_concentration(m, data, newton_options(c, err));

    if (json_output(c)) {
        json rows = json::array();
        for (int i = 0; i < k.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < k.cols(); ++j) row.push_back(k(i, j));
            rows.push_back(row);
        }
        out << json{{"model_id", m.id}, {"labels", g.labels()}, {"concentration", rows}}.dump(2) << '\n';
        return kOk;
    }
    int width = 9;
    for (const auto& l : g.labels()) width = std::max<int>(width, static_cast<int>(l.size()) + 2);
    out << "fitted concentration x 10^3 under " << m.id << '\n';
    out << std::left << std::setw(width) << "";
    for (const auto& l : g.labels()) out << std::right << std::setw(width) << l;
    out << '\n';
    for (int i = 0; i < k.rows(); ++i) {
        out << std::left << std::setw(width) << g.labels()[i];
        for (int j = 0; j < k.cols(); ++j) {
            out << std::right << std::setw(width) << (k(i, j) == 0.0 ? std::string("0") : fixed(1e3 * k(i, j), 2));
        }
        out << '\n';
    }
    return kOk;
}

int cmd_constants(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.model_id.empty()) throw InputError("constants needs --model ID");
    const auto g = load_graph(c);
    const auto models = candidate_models(g, &butterfly_registry());
    const Model& m = find_model(models, c.model_id);

    MatrixXd y;
    if (!c.point_path.empty()) {
        y = read_matrix_file(c.point_path);
        if (y.rows() != g.size() || y.cols() != g.size()) throw InputError("point has the wrong dimension");
        y = m.space.project(y);
    } else {
        y = m.space.project(load_hyperparams(c, g.size()).D) / 2.0;
    }
    const double alpha = c.alpha.value_or((c.delta - 2.0) / 2.0);
    if (!(alpha >= 0)) throw InputError("alpha must be nonnegative");

    const auto numeric = cone_values(m.space, y, newton_options(c, err));
    if (!m.realization) {
        throw CapabilityError("model " + m.id + " has no matrix realization; log gamma is unavailable");
    }
    const auto fast = m.realization->delta_phi(y);
    const double log_gamma = m.realization->log_gamma(alpha);

    if (json_output(c)) {
        out << json{{"model_id", m.id},
                    {"dim", m.space.dim()},
                    {"alpha", alpha},
                    {"log_gamma", log_gamma},
                    {"log_delta", fast.log_delta},
                    {"log_phi", fast.log_phi},
                    {"log_delta_numeric", numeric.log_delta},
                    {"log_phi_numeric", numeric.log_phi},
                    {"multi_degree", m.realization->vstructure().multi_degree()}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << std::setprecision(12);
    out << "model " << m.id << " (dim " << m.space.dim() << "), alpha " << alpha << '\n';
    out << "log gamma  " << log_gamma << '\n';
    out << "log delta  " << fast.log_delta << "  (numeric " << numeric.log_delta << ")\n";
    out << "log phi    " << fast.log_phi << "  (numeric " << numeric.log_phi << ")\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct CheckLine {
    std::string name;
    bool ok;
    std::string detail;
};

std::vector<CheckLine> fast_checks(const Registry& reg, std::uint64_t seed) {
    std::vector<CheckLine> lines;
    const auto failures = check_registry(reg);
    for (const auto& f : failures) lines.push_back({"registry entry", false, f});
    if (failures.empty()) lines.push_back({"registry conjugations", true, std::to_string(reg.entries.size()) + " entries"});

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int p = reg.graph.size();
    for (const auto& e : reg.entries) {
        const bool healthy = std::none_of(failures.begin(), failures.end(),
                                         [&](const std::string& f) { return f.rfind(e.id + ":", 0) == 0; });
        if (!healthy) continue;
        const InvariantSpace<double> z(reg.graph, reg.group(e.id));
        const auto real = conjugate_space<double>(z, e.u, e.v);
        double worst = 0;
        for (int t = 0; t < 20; ++t) {
            MatrixXd a(p, p);
            for (int i = 0; i < p; ++i) {
                for (int j = 0; j < p; ++j) a(i, j) = normal(rng);
            }
            const MatrixXd y = z.project(a * a.transpose() / p + 0.5 * MatrixXd::Identity(p, p));
            const auto fast = real.delta_phi(y);
            const auto num = cone_values(z, y);
            worst = std::max({worst, std::abs(std::expm1(fast.log_delta - num.log_delta)),
                              std::abs(std::expm1(fast.log_phi - num.log_phi))});
        }
        lines.push_back({"delta/phi fast vs numeric " + e.id, worst <= 1e-8, "max relative gap " + scientific(worst)});
    }

    for (int n = 2; n <= 4; ++n) {
        const auto v = VStructure<double>::full_symmetric(n);
        double worst = 0;
        for (double a : {0.0, 0.5, 1.0, 10.0}) {
            double classical = (n * (n + 1) / 2.0 - n) / 2.0 * std::log(2.0) + n * (n - 1) / 4.0 * std::log(M_PI);
            for (int j = 1; j <= n; ++j) classical += std::lgamma(a + (n + 1) / 2.0 - (j - 1) / 2.0);
            worst = std::max(worst, std::abs(log_gamma_v(v, a) - classical));
        }
        lines.push_back({"Siegel gamma Sym(" + std::to_string(n) + ")", worst <= 1e-10, "max gap " + scientific(worst)});
    }
    return lines;
}

CheckLine mc_check(const std::string& name, const Realization<double>& real, double alpha, const MatrixXd& y,
                   long samples, std::uint64_t seed) {
    const auto dp = real.delta_phi(y);
    const double closed = std::exp(real.log_gamma(alpha) + dp.log_phi - alpha * dp.log_delta);
    const auto est = mc_cone_integral(real.space(), alpha, y, samples, seed);
    const double z = std::abs(closed - est.value) / est.std_error;
    std::string detail = "closed " + fixed(closed, 6) + ", mc " + fixed(est.value, 6) + " +- " + fixed(est.std_error, 6) +
                         " (" + fixed(z, 2) + " sigma)";
    if (est.variance_warning) detail += ", low effective sample size";
    return {name, z <= 3.0, detail};
}

std::vector<CheckLine> mc_checks(const Registry& reg, long samples, std::uint64_t seed) {
    std::vector<CheckLine> lines;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto dual_point = [&](const SymSubspace<double>& z) {
        const int p = z.ambient_dim();
        MatrixXd a(p, p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) a(i, j) = normal(rng);
        }
        return MatrixXd(z.project(a * a.transpose() / p + 0.5 * MatrixXd::Identity(p, p)));
    };
    auto run = [&](const std::string& name, const InvariantSpace<double>& z, const Registry* r) {
        const auto real = find_realization(z, r);
        if (!real) return;
        for (double alpha : {0.5, 1.0}) {
            lines.push_back(mc_check(name + " alpha=" + fixed(alpha, 1), *real, alpha, dual_point(z), samples, seed));
        }
    };
    const Graph k2 = Graph::unlabeled(2, {{0, 1}});
    run("Sym(2)", InvariantSpace<double>(k2, PermutationGroup::generated_by(2, {})), nullptr);
    const Graph e3 = Graph::unlabeled(3, {});
    run("ray p=3", InvariantSpace<double>(e3, automorphism_group(e3)), nullptr);
    for (const auto& e : reg.entries) {
        const InvariantSpace<double> z(reg.graph, reg.group(e.id));
        if (z.dim() <= kMaxMcDimension) run(e.id, z, &reg);
    }
    return lines;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    if (c.level != "fast" && c.level != "mc") throw InputError("--level must be fast or mc");
    std::optional<Registry> loaded;
    if (!c.registry_path.empty()) loaded = load_registry_file(c.registry_path);
    const Registry& reg = loaded ? *loaded : butterfly_registry();

    auto lines = fast_checks(reg, c.seed);
    if (c.level == "mc") {
        auto more = mc_checks(reg, c.samples, c.seed);
        lines.insert(lines.end(), more.begin(), more.end());
    }
    const bool all_ok = std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
    if (json_output(c)) {
        json arr = json::array();
        for (const auto& l : lines) arr.push_back({{"check", l.name}, {"ok", l.ok}, {"detail", l.detail}});
        out << json{{"level", c.level}, {"ok", all_ok}, {"checks", arr}}.dump(2) << '\n';
    } else {
        for (const auto& l : lines) out << (l.ok ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
        out << (all_ok ? "all checks passed" : "verification failed") << '\n';
    }
    if (!all_ok) throw VerificationFailed{};
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Bayesian model selection for permutation-invariant Gaussian graphical models", "rcop"};
    app.require_subcommand(1);

    auto add_graph = [&](CLI::App* s) {
        s->add_option("--graph", c.graph_path, "graph JSON file (labels, 1-based edges)");
        s->add_option("--fixture", c.fixture, "builtin dataset (exam-marks); implies its graph");
        s->add_option("--output", c.output, "table or json")->check(CLI::IsMember({"table", "json"}));
    };
    auto add_data = [&](CLI::App* s) {
        auto* data = s->add_option("--data", c.data_path, "CSV of observations, one row per sample");
        auto* scatter = s->add_option("--scatter", c.scatter_path, "scatter matrix: CSV, JSON array, or {scatter, n_raw, centered}");
        data->excludes(scatter);
        s->add_option("--n", c.scatter_n, "effective sample count for --scatter");
        s->add_flag("--no-center", c.no_center, "do not subtract column means from --data");
    };
    auto add_prior = [&](CLI::App* s) {
        s->add_option("--delta", c.delta, "prior shape, > 2")->capture_default_str();
        auto* d = s->add_option("--d-scale", c.d_scale, "prior scale D = d I")->capture_default_str();
        auto* m = s->add_option("--D", c.D_path, "prior scale matrix file (CSV or JSON)");
        d->excludes(m);
    };
    auto add_verbose = [&](CLI::App* s) { s->add_flag("-v,--verbose", c.verbose, "Newton trace as JSON lines on stderr"); };

    auto* aut = app.add_subcommand("aut", "automorphism group of the graph");
    add_graph(aut);
    auto* subs = app.add_subcommand("subgroups", "subgroups of Aut(G) and their invariant spaces");
    add_graph(subs);
    auto* select = app.add_subcommand("select", "posterior probabilities of the model classes");
    add_graph(select);
    add_data(select);
    add_prior(select);
    add_verbose(select);
    select->add_option("--path", c.path, "fast (triangular factorization) or numeric (Newton)")
        ->check(CLI::IsMember({"fast", "numeric"}));
    auto* fit = app.add_subcommand("fit", "maximum-likelihood concentration under one model");
    add_graph(fit);
    add_data(fit);
    add_verbose(fit);
    fit->add_option("--model", c.model_id, "model label, e.g. Gamma3")->required();
    auto* constants = app.add_subcommand("constants", "log gamma, log delta and log phi at a point");
    add_graph(constants);
    add_prior(constants);
    add_verbose(constants);
    constants->add_option("--model", c.model_id, "model label")->required();
    constants->add_option("--point", c.point_path, "dual point y (CSV or JSON); default pi(D)/2");
    constants->add_option("--alpha", c.alpha, "exponent; default (delta - 2)/2");
    auto* verify = app.add_subcommand("verify", "cross-check closed forms against independent paths");
    verify->add_option("--level", c.level, "fast or mc")->check(CLI::IsMember({"fast", "mc"}));
    verify->add_option("--registry", c.registry_path, "realization registry JSON");
    verify->add_option("--samples", c.samples, "Monte-Carlo draws per check")->capture_default_str();
    verify->add_option("--output", c.output, "table or json")->check(CLI::IsMember({"table", "json"}));
    for (auto* s : {aut, subs, select, fit, constants, verify}) {
        s->add_option("--seed", c.seed, "random seed")->capture_default_str();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (aut->parsed()) return cmd_aut(c, out);
        if (subs->parsed()) return cmd_subgroups(c, out);
        if (select->parsed()) return cmd_select(c, out, err);
        if (fit->parsed()) return cmd_fit(c, out, err);
        if (constants->parsed()) return cmd_constants(c, out, err);
        if (verify->parsed()) return cmd_verify(c, out);
    } catch (const VerificationFailed&) {
        return kVerificationFailure;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kCapability;
    } catch (const IntegrabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kModelPrecondition;
    } catch (const ScopeError& e) {
        err << "error: " << e.what() << '\n';
        return kModelPrecondition;
    } catch (const InvarianceError& e) {
        err << "error: " << e.what() << '\n';
        return kModelPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

}  // namespace rcop::cli
