#pragma once

// Realization-free evaluation of the cone maps on Z cap Sym+(p): membership,
// the inverse map psi of x -> pi(x^{-1}), delta = 1/det psi, the Hessian
// operator S of -log delta and phi = sqrt(det S).

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "rcop/errors.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"

namespace rcop {

template <typename Scalar>
struct NewtonTrace {
    int iteration = 0;
    Scalar objective = 0;
    Scalar gradient_norm = 0;
    Scalar decrement = 0;  // Newton decrement lambda
    Scalar step = 0;
};

template <typename Scalar>
struct PsiOptions {
    /// Gradient norm target, relative to max(1, |y|_F).
    Scalar tolerance = Scalar(1e-11);
    /// Residual accepted at exit, relative to max(1, |y|_F).
    Scalar acceptance = Scalar(1e-10);
    int max_iterations = 100;
    std::function<void(const NewtonTrace<Scalar>&)> observer;
};

template <typename Scalar>
struct PsiResult {
    Matrix<Scalar> x_star;
    Vector<Scalar> coords;
    int iterations = 0;
    /// |pi(x*^{-1}) - y|_F
    Scalar residual = 0;
};

namespace detail {

template <typename Scalar>
void require_in_space(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    space.check_shape(y);
    const Scalar scale = std::max(Scalar(1), y.norm());
    const Scalar r = space.residual(y);
    if (!(r <= Scalar(1e-10) * scale)) {
        throw DomainError("argument does not lie in the subspace (projection residual " +
                          std::to_string(static_cast<double>(r)) + ")");
    }
}

}  // namespace detail

template <typename Scalar>
bool in_primal_cone(const SymSubspace<Scalar>& space, const Matrix<Scalar>& x) {
    detail::require_in_space(space, x);
    return is_positive_definite(x);
}

/// psi(y): the maximizer of exp(-<x,y>) det x over the primal cone, found by
/// damped Newton on <x,y> - log det x.
template <typename Scalar>
PsiResult<Scalar> psi(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y,
                      const PsiOptions<Scalar>& opts = {}) {
    using MatrixType = Matrix<Scalar>;
    using VectorType = Vector<Scalar>;
    detail::require_in_space(space, y);

    const int p = space.ambient_dim();
    const Scalar tr = y.trace();
    if (!(tr > Scalar(0))) {
        throw DualMembershipError("point is not in the dual cone: <I, y> = " +
                                  std::to_string(static_cast<double>(tr)) + " <= 0");
    }
    const Scalar scale = std::max(Scalar(1), y.norm());
    const VectorType yc = space.coordinates(y);

    // Exact minimizer along the identity ray.
    VectorType xc = space.coordinates(MatrixType::Identity(p, p) * (Scalar(p) / tr));
    const Scalar x0_norm = xc.norm();

    auto objective = [&](const VectorType& c, const Eigen::LLT<MatrixType>& llt) {
        return c.dot(yc) - Scalar(2) * llt.matrixLLT().diagonal().array().log().sum();
    };

    Scalar grad_norm = std::numeric_limits<Scalar>::infinity();
    int it = 0;
    for (; it <= opts.max_iterations; ++it) {
        const MatrixType x = space.from_coordinates(xc);
        auto llt = positive_definite_factor(x);
        if (!llt) throw ConvergenceError("Newton iterate left the cone", static_cast<double>(grad_norm));
        const MatrixType xinv = llt->solve(MatrixType::Identity(p, p));
        const VectorType grad = yc - space.coordinates(symmetrized(xinv));
        grad_norm = grad.norm();
        const Scalar f = objective(xc, *llt);
        if (!(xc.dot(yc) > Scalar(0))) {
            throw DualMembershipError("point is not in the dual cone: a primal point x has <x, y> <= 0");
        }

        NewtonTrace<Scalar> trace{it, f, grad_norm, Scalar(0), Scalar(0)};
        if (grad_norm <= opts.tolerance * scale || it == opts.max_iterations) {
            if (opts.observer) opts.observer(trace);
            break;
        }

        const MatrixType hess = space.sandwich_operator(symmetrized(xinv));
        const VectorType dir = hess.ldlt().solve(-grad);
        const Scalar lambda2 = -grad.dot(dir);
        if (!(lambda2 > Scalar(0))) {
            if (opts.observer) opts.observer(trace);
            break;
        }
        const Scalar lambda = std::sqrt(lambda2);
        trace.decrement = lambda;

        // Damped phase keeps the step inside the Dikin ellipsoid.
        Scalar t = lambda > Scalar(0.25) ? Scalar(1) / (Scalar(1) + lambda) : Scalar(1);
        VectorType next = xc + t * dir;
        for (int halvings = 0;; ++halvings) {
            auto next_llt = positive_definite_factor(space.from_coordinates(next));
            const bool armijo = lambda <= Scalar(0.25) ||
                                (next_llt && objective(next, *next_llt) <=
                                                 f - Scalar(1e-4) * t * lambda2);
            if (next_llt && armijo) break;
            if (halvings > 60) {
                throw DualMembershipError("line search collapsed; point is not in the dual cone");
            }
            t /= Scalar(2);
            next = xc + t * dir;
        }
        trace.step = t;
        if (opts.observer) opts.observer(trace);
        xc = std::move(next);

        // Objective unbounded below: iterates run off to infinity.
        if (xc.norm() > Scalar(1e12) * x0_norm) {
            throw DualMembershipError("Newton iterates diverge; point is not in the dual cone");
        }
    }

    PsiResult<Scalar> out;
    out.coords = xc;
    out.x_star = space.from_coordinates(xc);
    out.iterations = it;
    const MatrixType xinv = out.x_star.llt().solve(MatrixType::Identity(p, p));
    out.residual = (space.project(symmetrized(xinv)) - y).norm();
    if (!(out.residual <= opts.acceptance * scale)) {
        throw ConvergenceError("psi did not converge: residual " +
                                   std::to_string(static_cast<double>(out.residual)) + " after " +
                                   std::to_string(it) + " iterations",
                               static_cast<double>(out.residual));
    }
    return out;
}

/// Dual membership certified by a converged psi solve.
template <typename Scalar>
bool in_dual_cone(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    detail::require_in_space(space, y);
    try {
        const auto r = psi(space, y);
        return is_positive_definite(r.x_star);
    } catch (const DualMembershipError&) {
        return false;
    } catch (const ConvergenceError&) {
        return false;
    }
}

/// Matrix of u -> pi(x^{-1} u x^{-1}) in the basis: the Hessian of -log det at x.
template <typename Scalar>
Matrix<Scalar> barrier_hessian(const SymSubspace<Scalar>& space, const Matrix<Scalar>& x) {
    const int p = space.ambient_dim();
    auto llt = positive_definite_factor(x);
    if (!llt) throw DomainError("barrier Hessian needs a positive definite point");
    return space.sandwich_operator(symmetrized(Matrix<Scalar>(llt->solve(Matrix<Scalar>::Identity(p, p)))));
}

template <typename Scalar>
Scalar log_delta(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    return -log_det_pd(psi(space, y).x_star);
}

template <typename Scalar>
Scalar delta(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    return std::exp(log_delta(space, y));
}

/// Matrix of S(y) in the orthonormal basis: the inverse of the barrier
/// Hessian at psi(y).
template <typename Scalar>
Matrix<Scalar> hessian_matrix(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    const Matrix<Scalar> h = barrier_hessian(space, psi(space, y).x_star);
    return symmetrized(Matrix<Scalar>(h.ldlt().solve(Matrix<Scalar>::Identity(h.rows(), h.cols()))));
}

/// All three cone quantities from one psi solve.
template <typename Scalar>
struct ConeValues {
    PsiResult<Scalar> psi;
    Scalar log_delta = 0;
    Scalar log_phi = 0;
};

template <typename Scalar>
ConeValues<Scalar> cone_values(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y,
                               const PsiOptions<Scalar>& opts = {}) {
    ConeValues<Scalar> v;
    v.psi = psi(space, y, opts);
    v.log_delta = -log_det_pd(v.psi.x_star);
    // det S = 1 / det H, so log phi = -log det H / 2.
    v.log_phi = -log_det_pd(barrier_hessian(space, v.psi.x_star)) / Scalar(2);
    return v;
}

template <typename Scalar>
Scalar log_phi(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    return cone_values(space, y).log_phi;
}

template <typename Scalar>
Scalar phi(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    return std::exp(log_phi(space, y));
}

}  // namespace rcop
