#pragma once

// Independent checks used by the tests and the `verify` command: Monte-Carlo
// estimates of cone integrals and central finite differences.

#include <cstdint>
#include <functional>

#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"

namespace rcop {

struct McEstimate {
    double value = 0;
    double std_error = 0;
    long samples = 0;
    std::uint64_t seed = 0;
    double effective_sample_size = 0;
    /// Set when the effective sample size falls below 1% of the draws.
    bool variance_warning = false;
};

inline constexpr int kMaxMcDimension = 7;
inline constexpr std::uint64_t kDefaultMcSeed = 0xC0FFEE;

/// Importance-sampling estimate of the integral of exp(-<x,y>) det(x)^alpha
/// over Z cap Sym+, in orthonormal coordinates. Deterministic per seed.
McEstimate mc_cone_integral(const SymSubspace<double>& z, double alpha, const MatrixXd& y,
                            long samples, std::uint64_t seed = kDefaultMcSeed);

using ScalarField = std::function<double(const VectorXd&)>;

VectorXd finite_diff_gradient(const ScalarField& f, const VectorXd& at, double step);
/// Symmetrized central-difference Hessian.
MatrixXd finite_diff_hessian(const ScalarField& f, const VectorXd& at, double step);

/// A field on Z given in matrix form, seen through basis coordinates.
ScalarField in_coordinates(const SymSubspace<double>& z, std::function<double(const MatrixXd&)> f);

}  // namespace rcop
