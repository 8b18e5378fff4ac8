#include "rcop/oracle.hpp"

#include <cmath>
#include <future>
#include <random>
#include <vector>

#include "rcop/cone.hpp"
#include "rcop/errors.hpp"

namespace rcop {

namespace {

constexpr int kChunks = 16;
constexpr double kTDegrees = 5.0;  // heavy tails keep f/q bounded
constexpr double kScaleInflation = 1.2;

struct ChunkSums {
    double sum = 0;     // of w = f/q, scaled by exp(-shift)
    double sum_sq = 0;
    long n = 0;
};

}  // namespace

McEstimate mc_cone_integral(const SymSubspace<double>& z, double alpha, const MatrixXd& y,
                            long samples, std::uint64_t seed) {
    const int dim = z.dim();
    if (dim > kMaxMcDimension) {
        throw ScopeError("Monte-Carlo integration is limited to dim Z <= " +
                         std::to_string(kMaxMcDimension) + " (got " + std::to_string(dim) + ")");
    }
    if (!(alpha >= 0)) throw DomainError("alpha must be nonnegative");
    if (samples < kChunks) throw DomainError("need at least 16 samples");

    // Laplace matching: the mode solves pi(x^{-1}) = y / alpha and the
    // curvature there is alpha times the barrier Hessian.
    const double a = alpha > 0 ? alpha : 1.0;
    const MatrixXd mode = psi(z, MatrixXd(y / a)).x_star;
    const VectorXd center = z.coordinates(mode);
    const VectorXd yc = z.coordinates(y);
    const MatrixXd cov = kScaleInflation * (a * barrier_hessian(z, mode)).inverse();
    const Eigen::LLT<MatrixXd> cov_llt(symmetrized(cov));
    const MatrixXd chol = cov_llt.matrixL();
    const double log_det_cov = 2.0 * chol.diagonal().array().log().sum();

    const double nu = kTDegrees;
    const double log_q_norm = std::lgamma((nu + dim) / 2.0) - std::lgamma(nu / 2.0) -
                              0.5 * dim * std::log(nu * M_PI) - 0.5 * log_det_cov;
    const double shift = -yc.dot(center) + alpha * log_det_pd(mode);

    auto run_chunk = [&](int chunk, long count) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::chi_squared_distribution<double> chi2(nu);
        ChunkSums s;
        VectorXd g(dim);
        for (long i = 0; i < count; ++i) {
            for (int d = 0; d < dim; ++d) g[d] = normal(rng);
            const double w2 = chi2(rng) / nu;
            const VectorXd c = center + chol * g / std::sqrt(w2);
            const double maha = g.squaredNorm() / w2;
            const double log_q = log_q_norm - 0.5 * (nu + dim) * std::log1p(maha / nu);
            ++s.n;
            auto llt = positive_definite_factor(z.from_coordinates(c));
            if (!llt) continue;  // outside the cone: integrand is zero
            const double log_det = 2.0 * llt->matrixLLT().diagonal().array().log().sum();
            const double log_f = -yc.dot(c) + alpha * log_det;
            const double w = std::exp(log_f - shift - log_q);
            s.sum += w;
            s.sum_sq += w * w;
        }
        return s;
    };

    std::vector<std::future<ChunkSums>> futures;
    const long base = samples / kChunks;
    for (int c = 0; c < kChunks; ++c) {
        const long count = base + (c < samples % kChunks ? 1 : 0);
        futures.push_back(std::async(std::launch::async, run_chunk, c, count));
    }
    ChunkSums total;
    for (auto& f : futures) {  // fixed merge order
        const auto s = f.get();
        total.sum += s.sum;
        total.sum_sq += s.sum_sq;
        total.n += s.n;
    }

    McEstimate est;
    est.samples = total.n;
    est.seed = seed;
    const double n = static_cast<double>(total.n);
    const double mean = total.sum / n;
    const double var = std::max(0.0, total.sum_sq / n - mean * mean);
    est.value = std::exp(shift) * mean;
    est.std_error = std::exp(shift) * std::sqrt(var / n);
    est.effective_sample_size = total.sum_sq > 0 ? total.sum * total.sum / total.sum_sq : 0.0;
    est.variance_warning = est.effective_sample_size < 0.01 * n;
    return est;
}

VectorXd finite_diff_gradient(const ScalarField& f, const VectorXd& at, double step) {
    if (!(step > 0)) throw DomainError("finite-difference step must be positive");
    VectorXd g(at.size());
    for (Eigen::Index i = 0; i < at.size(); ++i) {
        VectorXd up = at, dn = at;
        up[i] += step;
        dn[i] -= step;
        try {
            g[i] = (f(up) - f(dn)) / (2.0 * step);
        } catch (const Error& ex) {
            throw DomainError("stencil evaluation failed along coordinate " + std::to_string(i + 1) +
                              ": " + ex.what());
        }
    }
    return g;
}

MatrixXd finite_diff_hessian(const ScalarField& f, const VectorXd& at, double step) {
    if (!(step > 0)) throw DomainError("finite-difference step must be positive");
    const Eigen::Index n = at.size();
    MatrixXd h(n, n);
    auto eval = [&](const VectorXd& v) {
        try {
            return f(v);
        } catch (const Error& ex) {
            throw DomainError(std::string("stencil evaluation failed: ") + ex.what());
        }
    };
    const double f0 = eval(at);
    for (Eigen::Index i = 0; i < n; ++i) {
        VectorXd up = at, dn = at;
        up[i] += step;
        dn[i] -= step;
        h(i, i) = (eval(up) - 2.0 * f0 + eval(dn)) / (step * step);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            VectorXd pp = at, pm = at, mp = at, mm = at;
            pp[i] += step, pp[j] += step;
            pm[i] += step, pm[j] -= step;
            mp[i] -= step, mp[j] += step;
            mm[i] -= step, mm[j] -= step;
            h(i, j) = (eval(pp) - eval(pm) - eval(mp) + eval(mm)) / (4.0 * step * step);
            h(j, i) = h(i, j);
        }
    }
    return h;
}

ScalarField in_coordinates(const SymSubspace<double>& z, std::function<double(const MatrixXd&)> f) {
    return [z, f = std::move(f)](const VectorXd& c) { return f(z.from_coordinates(c)); };
}

}  // namespace rcop
