#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "rcop/errors.hpp"

namespace rcop {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

/// Trace inner product <x, y> = tr(x y) for symmetric arguments.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar trace_inner(const Eigen::MatrixBase<DerivedA>& x,
                                      const Eigen::MatrixBase<DerivedB>& y) {
    return x.cwiseProduct(y.transpose()).sum();
}

template <typename Derived>
Matrix<typename Derived::Scalar> symmetrized(const Eigen::MatrixBase<Derived>& x) {
    return (x + x.transpose()) / typename Derived::Scalar(2);
}

/// Cholesky factor if x is (numerically) positive definite.
template <typename Derived>
std::optional<Eigen::LLT<Matrix<typename Derived::Scalar>>> positive_definite_factor(
    const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    if (!x.allFinite()) return std::nullopt;
    Eigen::LLT<Matrix<Scalar>> llt(x);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const auto d = llt.matrixLLT().diagonal();
    if ((d.array() <= Scalar(0)).any()) return std::nullopt;
    return llt;
}

template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& x) {
    return positive_definite_factor(x).has_value();
}

/// log det of a positive definite matrix; throws DomainError otherwise.
template <typename Derived>
typename Derived::Scalar log_det_pd(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    auto llt = positive_definite_factor(x);
    if (!llt) throw DomainError("matrix is not positive definite");
    return Scalar(2) * llt->matrixLLT().diagonal().array().log().sum();
}

/// log |det x| for a general square matrix.
template <typename Derived>
typename Derived::Scalar log_abs_det(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    Eigen::PartialPivLU<Matrix<Scalar>> lu(x);
    return lu.matrixLU().diagonal().array().abs().log().sum();
}

}  // namespace rcop
