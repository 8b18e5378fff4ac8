#pragma once

// Test-only oracles: the printed closed forms for the butterfly spaces, and
// generators of random points. Nothing here calls into the realization code.

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "rcop/graph.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"
#include "rcop/registry.hpp"

namespace rcop::testing {

inline MatrixXd random_pd(int p, std::mt19937_64& rng, double ridge = 0.5) {
    std::normal_distribution<double> n(0.0, 1.0);
    MatrixXd a(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) a(i, j) = n(rng);
    }
    return a * a.transpose() / p + ridge * MatrixXd::Identity(p, p);
}

inline MatrixXd random_symmetric(int p, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    MatrixXd a(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) a(i, j) = n(rng);
    }
    return symmetrized(a);
}

/// pi(D) for random positive definite D lies in the open dual cone.
inline MatrixXd random_dual_point(const SymSubspace<double>& z, std::mt19937_64& rng) {
    return z.project(random_pd(z.ambient_dim(), rng));
}

inline InvariantSpace<double> butterfly_space(const std::string& label) {
    const auto& reg = butterfly_registry();
    return InvariantSpace<double>(reg.graph, reg.group(label));
}

inline const char* const kDistinctLabels[] = {"Gamma1", "Gamma2", "Gamma3", "Gamma4",
                                              "Gamma5", "Gamma6", "Gamma7"};

// ---------------------------------------------------------------------------
// Printed closed forms (vertices 1..5 map to indices 0..4).

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double det3_block(const MatrixXd& x, int start) { return x.block(start, start, 3, 3).determinant(); }

/// delta on Z_G^{Gamma1}; restricts to every other space.
inline double closed_delta(const MatrixXd& x) {
    return det3_block(x, 0) * det3_block(x, 2) / x(2, 2);
}

inline double closed_phi(const std::string& label, const MatrixXd& x) {
    const double r2 = std::sqrt(2.0);
    if (label == "Gamma1") {
        return x(2, 2) * std::pow(det3_block(x, 0), -2) * std::pow(det3_block(x, 2), -2);
    }
    if (label == "Gamma2") {
        const double a = x(0, 0), b = x(0, 1), c = x(0, 2), d = x(2, 2);
        return d / (a - b) * std::pow(det2(a + b, r2 * c, r2 * c, d), -1.5) *
               std::pow(det3_block(x, 2), -2);
    }
    if (label == "Gamma3" || label == "Gamma5") {
        return std::pow(det3_block(x, 0), -2);
    }
    if (label == "Gamma4") {
        const double c = x(2, 2), g = x(2, 3), h = x(3, 3), i = x(3, 4);
        return c / (h - i) * std::pow(det2(h + i, r2 * g, r2 * g, c), -1.5) *
               std::pow(det3_block(x, 0), -2);
    }
    if (label == "Gamma6") {
        const double a = x(0, 0), b = x(0, 1), c = x(0, 2), d = x(2, 2), e = x(2, 3), f = x(3, 3),
                     g = x(3, 4);
        return d / ((a - b) * (f - g)) * std::pow(det2(a + b, r2 * c, r2 * c, d), -1.5) *
               std::pow(det2(f + g, r2 * e, r2 * e, d), -1.5);
    }
    if (label == "Gamma7") {
        const double a = x(0, 0), b = x(2, 2), c = x(0, 1), d = x(0, 2);
        return std::pow(a - c, -1) * std::pow(det2(a + c, r2 * d, r2 * d, b), -1.5);
    }
    throw std::invalid_argument("no closed form for " + label);
}

inline double closed_log_gamma(const std::string& label, double a) {
    const double l2pi = std::log(2.0 * M_PI);
    const double l2 = std::log(2.0);
    using std::lgamma;
    if (label == "Gamma1") {
        return 3 * l2pi + lgamma(a + 1) + 2 * lgamma(a + 1.5) + 2 * lgamma(a + 2);
    }
    if (label == "Gamma2" || label == "Gamma4") {
        return 2 * l2pi + 2 * lgamma(a + 1) + 2 * lgamma(a + 1.5) + lgamma(a + 2);
    }
    if (label == "Gamma3" || label == "Gamma5") {
        return 1.5 * l2pi + (-4 * a - 2.5) * l2 + lgamma(2 * a + 2) + lgamma(2 * a + 1.5) + lgamma(a + 1);
    }
    if (label == "Gamma6") {
        return l2pi + 3 * lgamma(a + 1) + 2 * lgamma(a + 1.5);
    }
    if (label == "Gamma7") {
        return 0.5 * l2pi + (-4 * a - 1.5) * l2 + lgamma(2 * a + 1) + lgamma(2 * a + 1.5) + lgamma(a + 1);
    }
    throw std::invalid_argument("no closed form for " + label);
}

/// Classical Siegel integral of Sym(p) times the trace-measure factor 2^{(N-p)/2}.
inline double siegel_log_gamma(int p, double a) {
    const double n = p * (p + 1) / 2.0;
    double s = (n - p) / 2.0 * std::log(2.0) + p * (p - 1) / 4.0 * std::log(M_PI);
    for (int j = 1; j <= p; ++j) s += std::lgamma(a + (p + 1) / 2.0 - (j - 1) / 2.0);
    return s;
}

// ---------------------------------------------------------------------------
// Brute force over S_p, independent of the backtracking search.

inline std::vector<Permutation> brute_force_automorphisms(const Graph& g) {
    std::vector<int> images(g.size());
    for (int i = 0; i < g.size(); ++i) images[i] = i;
    std::vector<Permutation> out;
    do {
        bool ok = true;
        for (int i = 0; i < g.size() && ok; ++i) {
            for (int j = 0; j < g.size() && ok; ++j) {
                if (i != j) ok = g.adjacent(i, j) == g.adjacent(images[i], images[j]);
            }
        }
        if (ok) out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

/// Every subset of the element list closed under composition (|G| <= 16).
inline std::vector<std::vector<Permutation>> brute_force_subgroups(const std::vector<Permutation>& elems) {
    std::vector<std::vector<Permutation>> out;
    const std::size_t n = elems.size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<Permutation> s;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) s.push_back(elems[i]);
        }
        bool closed = true;
        for (const auto& a : s) {
            for (const auto& b : s) {
                if (!std::binary_search(s.begin(), s.end(), a * b)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace rcop::testing
