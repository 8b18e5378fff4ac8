#pragma once

// Block matrix realization of a homogeneous cone. A VStructure holds block
// sizes n_1..n_r and subspaces V_lk of n_l x n_k matrices (l > k). Z_V is the
// space of symmetric matrices with scalar diagonal blocks x_kk I and lower
// blocks in V_lk; the lower triangular group H_V acts simply transitively on
// its positive definite part by T . x = T x T^T.

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcop/errors.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"

namespace rcop {

/// Block index pair (l, k), l > k, 0-based.
using BlockIndex = std::pair<int, int>;

template <typename Scalar>
class VStructure {
public:
    using MatrixType = Matrix<Scalar>;

    VStructure() = default;
    /// Each subspace basis must be orthonormal under (A|B) = tr(A B^T).
    VStructure(std::vector<int> block_sizes, std::map<BlockIndex, std::vector<MatrixType>> subspaces)
        : sizes_(std::move(block_sizes)), subspaces_(std::move(subspaces)) {
        if (sizes_.empty()) throw ShapeError("VStructure needs at least one block");
        offsets_.resize(sizes_.size());
        int off = 0;
        for (std::size_t k = 0; k < sizes_.size(); ++k) {
            if (sizes_[k] <= 0) throw ShapeError("block sizes must be positive");
            offsets_[k] = off;
            off += sizes_[k];
        }
        p_ = off;
        for (auto& [idx, basis] : subspaces_) {
            const auto [l, k] = idx;
            if (!(l > k && k >= 0 && l < rank())) {
                throw ShapeError("subspace index (" + std::to_string(l + 1) + "," +
                                 std::to_string(k + 1) + ") must satisfy 1 <= k < l <= r");
            }
            for (const auto& a : basis) {
                if (a.rows() != sizes_[l] || a.cols() != sizes_[k]) {
                    throw ShapeError("V_" + std::to_string(l + 1) + std::to_string(k + 1) +
                                     " element has wrong shape");
                }
            }
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    const Scalar ip = basis[i].cwiseProduct(basis[j]).sum();
                    if (std::abs(ip - (i == j ? Scalar(1) : Scalar(0))) > Scalar(1e-12)) {
                        throw DomainError("basis of V_" + std::to_string(l + 1) +
                                          std::to_string(k + 1) + " is not orthonormal");
                    }
                }
            }
        }
        std::erase_if(subspaces_, [](const auto& kv) { return kv.second.empty(); });
    }

    /// Canonical realization of all of Sym(p): r = p blocks of size 1, V_lk = R.
    static VStructure full_symmetric(int p) {
        std::map<BlockIndex, std::vector<MatrixType>> subs;
        for (int k = 0; k < p; ++k) {
            for (int l = k + 1; l < p; ++l) subs[{l, k}] = {MatrixType::Ones(1, 1)};
        }
        return VStructure(std::vector<int>(p, 1), std::move(subs));
    }

    int rank() const noexcept { return static_cast<int>(sizes_.size()); }
    int ambient_dim() const noexcept { return p_; }
    int block_size(int k) const { return sizes_[k]; }
    int offset(int k) const { return offsets_[k]; }
    const std::vector<int>& block_sizes() const noexcept { return sizes_; }
    const std::map<BlockIndex, std::vector<MatrixType>>& subspaces() const noexcept { return subspaces_; }

    const std::vector<MatrixType>& subspace(int l, int k) const {
        static const std::vector<MatrixType> empty;
        auto it = subspaces_.find({l, k});
        return it == subspaces_.end() ? empty : it->second;
    }
    int subspace_dim(int l, int k) const { return static_cast<int>(subspace(l, k).size()); }

    /// q_k = sum over l > k of dim V_lk.
    int q(int k) const {
        int s = 0;
        for (int l = k + 1; l < rank(); ++l) s += subspace_dim(l, k);
        return s;
    }

    /// N = dim Z_V.
    int dim() const {
        int n = rank();
        for (const auto& [idx, basis] : subspaces_) n += static_cast<int>(basis.size());
        return n;
    }

    /// Orthogonal projection onto V_lk.
    MatrixType project_block(int l, int k, const MatrixType& m) const {
        MatrixType out = MatrixType::Zero(sizes_[l], sizes_[k]);
        for (const auto& a : subspace(l, k)) out += a.cwiseProduct(m).sum() * a;
        return out;
    }

    /// Orthonormal basis of Z_V: diagonal generators first, then V_lk blocks
    /// ordered by column k, then row l.
    SymSubspace<Scalar> space() const {
        std::vector<MatrixType> basis;
        for (int k = 0; k < rank(); ++k) {
            MatrixType e = MatrixType::Zero(p_, p_);
            e.block(offsets_[k], offsets_[k], sizes_[k], sizes_[k]).diagonal().setConstant(
                Scalar(1) / std::sqrt(Scalar(sizes_[k])));
            basis.push_back(std::move(e));
        }
        const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
        for (int k = 0; k < rank(); ++k) {
            for (int l = k + 1; l < rank(); ++l) {
                for (const auto& a : subspace(l, k)) {
                    MatrixType e = MatrixType::Zero(p_, p_);
                    e.block(offsets_[l], offsets_[k], sizes_[l], sizes_[k]) = s * a;
                    e.block(offsets_[k], offsets_[l], sizes_[k], sizes_[l]) = s * a.transpose();
                    basis.push_back(std::move(e));
                }
            }
        }
        return SymSubspace<Scalar>(p_, std::move(basis));
    }

    /// Exponent of t_kk in det rho(T): 2 + q_k + sum over j < k of dim V_kj.
    std::vector<int> multi_degree() const {
        std::vector<int> sigma(rank());
        for (int k = 0; k < rank(); ++k) {
            int below = 0;
            for (int j = 0; j < k; ++j) below += subspace_dim(k, j);
            sigma[k] = 2 + q(k) + below;
        }
        return sigma;
    }

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int p_ = 0;
    std::map<BlockIndex, std::vector<MatrixType>> subspaces_;
};

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
    bool v1 = true;
    bool v2 = true;
    bool v3 = true;
    std::vector<std::string> failures;  // one witness per failed check
    bool ok() const { return v1 && v2 && v3; }
};

template <typename Scalar>
AxiomReport validate_vstructure(const VStructure<Scalar>& v, Scalar tol = Scalar(1e-12)) {
    using MatrixType = Matrix<Scalar>;
    AxiomReport report;
    auto name = [](const char* sym, int l, int k, std::size_t i) {
        std::ostringstream s;
        s << sym << "[" << i << "] in V_" << (l + 1) << (k + 1);
        return s.str();
    };
    auto is_scalar = [&](const MatrixType& m) {
        const Scalar c = m.trace() / Scalar(m.rows());
        return (m - c * MatrixType::Identity(m.rows(), m.cols())).norm() <= tol;
    };
    const int r = v.rank();

    // (V1) is quadratic: A_i A_i^T and A_i A_j^T + A_j A_i^T must be scalar.
    for (const auto& [idx, basis] : v.subspaces()) {
        const auto [l, k] = idx;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i; j < basis.size(); ++j) {
                MatrixType m = basis[i] * basis[j].transpose();
                if (i != j) m += basis[j] * basis[i].transpose();
                if (!is_scalar(m)) {
                    report.v1 = false;
                    report.failures.push_back("V1: " + name("A", l, k, i) + ", " + name("B", l, k, j) +
                                              ": product is not a multiple of the identity");
                }
            }
        }
    }
    // (V2) A in V_lj, B in V_kj  =>  A B^T in V_lk.
    // (V3) A in V_lk, B in V_kj  =>  A B in V_lj.
    for (int j = 0; j < r; ++j) {
        for (int k = j + 1; k < r; ++k) {
            for (int l = k + 1; l < r; ++l) {
                const auto& vlj = v.subspace(l, j);
                const auto& vkj = v.subspace(k, j);
                const auto& vlk = v.subspace(l, k);
                for (std::size_t a = 0; a < vlj.size(); ++a) {
                    for (std::size_t b = 0; b < vkj.size(); ++b) {
                        const MatrixType m = vlj[a] * vkj[b].transpose();
                        if ((m - v.project_block(l, k, m)).norm() > tol) {
                            report.v2 = false;
                            report.failures.push_back("V2: " + name("A", l, j, a) + ", " +
                                                      name("B", k, j, b) + ": A B^T not in V_" +
                                                      std::to_string(l + 1) + std::to_string(k + 1));
                        }
                    }
                }
                for (std::size_t a = 0; a < vlk.size(); ++a) {
                    for (std::size_t b = 0; b < vkj.size(); ++b) {
                        const MatrixType m = vlk[a] * vkj[b];
                        if ((m - v.project_block(l, j, m)).norm() > tol) {
                            report.v3 = false;
                            report.failures.push_back("V3: " + name("A", l, k, a) + ", " +
                                                      name("B", k, j, b) + ": A B not in V_" +
                                                      std::to_string(l + 1) + std::to_string(j + 1));
                        }
                    }
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Triangular group

/// Element of H_V: lower block-triangular, scalar positive diagonal blocks.
template <typename Scalar>
struct TriangularElement {
    Vector<Scalar> diagonal;  // t_kk, k = 1..r
    Matrix<Scalar> matrix;    // dense p x p

    /// log det T = sum n_k log t_kk.
    Scalar log_det(const VStructure<Scalar>& v) const {
        Scalar s = 0;
        for (int k = 0; k < v.rank(); ++k) s += Scalar(v.block_size(k)) * std::log(diagonal[k]);
        return s;
    }
};

/// Assembles T from its diagonal scalars and lower blocks (projected into V_lk).
template <typename Scalar>
TriangularElement<Scalar> make_triangular(const VStructure<Scalar>& v, const Vector<Scalar>& diag,
                                          const std::map<BlockIndex, Matrix<Scalar>>& blocks = {}) {
    if (diag.size() != v.rank()) throw ShapeError("need one diagonal scalar per block");
    if ((diag.array() <= Scalar(0)).any()) throw DomainError("diagonal scalars of T must be positive");
    TriangularElement<Scalar> t;
    t.diagonal = diag;
    t.matrix = Matrix<Scalar>::Zero(v.ambient_dim(), v.ambient_dim());
    for (int k = 0; k < v.rank(); ++k) {
        t.matrix.block(v.offset(k), v.offset(k), v.block_size(k), v.block_size(k)).diagonal().setConstant(diag[k]);
    }
    for (const auto& [idx, b] : blocks) {
        const auto [l, k] = idx;
        t.matrix.block(v.offset(l), v.offset(k), v.block_size(l), v.block_size(k)) = v.project_block(l, k, b);
    }
    return t;
}

/// rho(T) x = T x T^T.
template <typename Scalar>
Matrix<Scalar> rho(const TriangularElement<Scalar>& t, const Matrix<Scalar>& x) {
    return t.matrix * x * t.matrix.transpose();
}

/// Adjoint of rho(T) under the trace inner product: y -> pi(T^T y T).
template <typename Scalar>
Matrix<Scalar> rho_adjoint(const SymSubspace<Scalar>& zv, const TriangularElement<Scalar>& t,
                           const Matrix<Scalar>& y) {
    return zv.project(symmetrized(Matrix<Scalar>(t.matrix.transpose() * y * t.matrix)));
}

/// Matrix of rho(T) acting on Z_V, in the orthonormal basis of Z_V.
template <typename Scalar>
Matrix<Scalar> rho_matrix(const SymSubspace<Scalar>& zv, const TriangularElement<Scalar>& t) {
    const int n = zv.dim();
    Matrix<Scalar> m(n, n);
    for (int b = 0; b < n; ++b) m.col(b) = zv.coordinates(rho(t, zv.basis(b)));
    return m;
}

/// The unique T in H_V with pi(T^T T) = y, by back-substitution from the
/// last block column to the first.
template <typename Scalar>
TriangularElement<Scalar> factor_T(const VStructure<Scalar>& v, const Matrix<Scalar>& y) {
    using MatrixType = Matrix<Scalar>;
    const int r = v.rank();
    if (y.rows() != v.ambient_dim() || y.cols() != v.ambient_dim()) {
        throw ShapeError("factor_T: point has wrong dimension");
    }
    auto block = [&](const MatrixType& m, int l, int k) {
        return m.block(v.offset(l), v.offset(k), v.block_size(l), v.block_size(k));
    };

    Vector<Scalar> t(r);
    std::map<BlockIndex, MatrixType> lower;
    auto lower_block = [&](int l, int k) -> MatrixType {
        auto it = lower.find({l, k});
        return it == lower.end() ? MatrixType::Zero(v.block_size(l), v.block_size(k)) : it->second;
    };

    for (int k = r - 1; k >= 0; --k) {
        for (int l = r - 1; l > k; --l) {
            if (v.subspace_dim(l, k) == 0) continue;
            MatrixType acc = MatrixType::Zero(v.block_size(l), v.block_size(k));
            for (int m = l + 1; m < r; ++m) acc += lower_block(m, l).transpose() * lower_block(m, k);
            const MatrixType target = v.project_block(l, k, MatrixType(block(y, l, k)));
            lower[{l, k}] = (target - v.project_block(l, k, acc)) / t[l];
        }
        Scalar s = block(y, k, k).trace() / Scalar(v.block_size(k));
        for (int m = k + 1; m < r; ++m) s -= lower_block(m, k).squaredNorm() / Scalar(v.block_size(k));
        if (!(s > Scalar(0))) {
            throw DualMembershipError("factor_T broke down at block " + std::to_string(k + 1) +
                                      " (t_kk^2 = " + std::to_string(static_cast<double>(s)) +
                                      "); point is not in the dual cone");
        }
        t[k] = std::sqrt(s);
    }
    return make_triangular(v, t, lower);
}

template <typename Scalar>
struct DeltaPhi {
    Scalar log_delta = 0;
    Scalar log_phi = 0;
};

/// delta = (det T_y)^2 and phi = 1 / det rho(T_y), in log form.
template <typename Scalar>
DeltaPhi<Scalar> delta_phi_fast(const VStructure<Scalar>& v, const SymSubspace<Scalar>& zv,
                                const Matrix<Scalar>& y) {
    const auto t = factor_T(v, y);
    return {Scalar(2) * t.log_det(v), -log_abs_det(rho_matrix(zv, t))};
}

template <typename Scalar>
DeltaPhi<Scalar> delta_phi_fast(const VStructure<Scalar>& v, const Matrix<Scalar>& y) {
    return delta_phi_fast(v, v.space(), y);
}

/// log of the gamma integral of Z_V:
/// (2 pi)^{(N-r)/2} prod_k n_k^{-n_k a - (q_k+1)/2} Gamma(n_k a + q_k/2 + 1).
template <typename Scalar>
Scalar log_gamma_v(const VStructure<Scalar>& v, Scalar alpha) {
    if (!(alpha >= Scalar(0))) throw DomainError("gamma integral needs alpha >= 0");
    using std::lgamma;
    using std::log;
    const Scalar two_pi = Scalar(2) * Scalar(3.14159265358979323846264338327950288L);
    Scalar s = Scalar(v.dim() - v.rank()) / Scalar(2) * log(two_pi);
    for (int k = 0; k < v.rank(); ++k) {
        const Scalar n = Scalar(v.block_size(k));
        const Scalar q = Scalar(v.q(k));
        s += (-n * alpha - (q + Scalar(1)) / Scalar(2)) * log(n) + lgamma(n * alpha + q / Scalar(2) + Scalar(1));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Conjugation Z -> U^T Z U = Z_V

template <typename Scalar>
class Realization {
public:
    using MatrixType = Matrix<Scalar>;

    Realization(SymSubspace<Scalar> space, MatrixType u, VStructure<Scalar> v)
        : space_(std::move(space)), u_(std::move(u)), v_(std::move(v)), zv_(v_.space()) {
        coord_map_.resize(zv_.dim(), space_.dim());
        for (int b = 0; b < space_.dim(); ++b) coord_map_.col(b) = zv_.coordinates(to_realized(space_.basis(b)));
    }

    const SymSubspace<Scalar>& space() const noexcept { return space_; }
    const MatrixType& u() const noexcept { return u_; }
    const VStructure<Scalar>& vstructure() const noexcept { return v_; }
    const SymSubspace<Scalar>& realized_space() const noexcept { return zv_; }
    /// Orthogonal map from Z coordinates to Z_V coordinates.
    const MatrixType& coordinate_map() const noexcept { return coord_map_; }

    MatrixType to_realized(const MatrixType& x) const { return u_.transpose() * x * u_; }
    MatrixType from_realized(const MatrixType& x) const { return u_ * x * u_.transpose(); }

    Scalar log_gamma(Scalar alpha) const { return log_gamma_v(v_, alpha); }

    /// log delta and log phi at a dual point y of Z (ambient coordinates).
    DeltaPhi<Scalar> delta_phi(const MatrixType& y) const {
        return delta_phi_fast(v_, zv_, symmetrized(to_realized(y)));
    }

    /// psi(y) = U T_y^{-1} T_y^{-T} U^T.
    MatrixType psi(const MatrixType& y) const {
        const auto t = factor_T(v_, MatrixType(symmetrized(to_realized(y))));
        const int p = v_.ambient_dim();
        const MatrixType tinv =
            t.matrix.template triangularView<Eigen::Lower>().solve(MatrixType::Identity(p, p));
        return symmetrized(from_realized(tinv * tinv.transpose()));
    }

private:
    SymSubspace<Scalar> space_;
    MatrixType u_;
    VStructure<Scalar> v_;
    SymSubspace<Scalar> zv_;
    MatrixType coord_map_;
};

/// Verifies U^T Z U = Z_V and returns the realization.
template <typename Scalar>
Realization<Scalar> conjugate_space(const SymSubspace<Scalar>& space, const Matrix<Scalar>& u,
                                    const VStructure<Scalar>& v, Scalar tol = Scalar(1e-10)) {
    const int p = space.ambient_dim();
    if (u.rows() != p || u.cols() != p || v.ambient_dim() != p) {
        throw ShapeError("conjugate_space: U, Z and V dimensions disagree");
    }
    const Scalar orth = (u.transpose() * u - Matrix<Scalar>::Identity(p, p)).norm();
    if (orth > Scalar(1e-12)) {
        throw ConjugationError("U is not orthogonal (|U^T U - I| = " +
                               std::to_string(static_cast<double>(orth)) + ")");
    }
    const auto zv = v.space();
    if (zv.dim() != space.dim()) {
        throw ConjugationError("dim Z = " + std::to_string(space.dim()) + " but dim Z_V = " +
                               std::to_string(zv.dim()));
    }
    for (int b = 0; b < space.dim(); ++b) {
        const Matrix<Scalar> m = u.transpose() * space.basis(b) * u;
        const Scalar res = zv.residual(m);
        if (res > tol) {
            throw ConjugationError("basis element " + std::to_string(b + 1) +
                                   " is not carried into Z_V (residual " +
                                   std::to_string(static_cast<double>(res)) + ")");
        }
    }
    return Realization<Scalar>(space, u, v);
}

}  // namespace rcop
