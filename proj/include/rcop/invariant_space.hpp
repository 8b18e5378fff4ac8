#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rcop/errors.hpp"
#include "rcop/graph.hpp"
#include "rcop/linalg.hpp"

namespace rcop {

/// Linear subspace of Sym(p) carried by an orthonormal basis under tr(xy).
template <typename Scalar>
class SymSubspace {
public:
    using MatrixType = Matrix<Scalar>;
    using VectorType = Vector<Scalar>;

    SymSubspace() = default;
    SymSubspace(int ambient_dim, std::vector<MatrixType> orthonormal_basis)
        : p_(ambient_dim), basis_(std::move(orthonormal_basis)) {
        for (const auto& b : basis_) {
            if (b.rows() != p_ || b.cols() != p_) throw ShapeError("basis element has wrong shape");
        }
    }

    int ambient_dim() const noexcept { return p_; }
    int dim() const noexcept { return static_cast<int>(basis_.size()); }
    const MatrixType& basis(int a) const { return basis_[a]; }
    const std::vector<MatrixType>& basis() const noexcept { return basis_; }

    VectorType coordinates(const MatrixType& y) const {
        check_shape(y);
        VectorType c(dim());
        for (int a = 0; a < dim(); ++a) c[a] = trace_inner(basis_[a], y);
        return c;
    }

    MatrixType from_coordinates(const VectorType& c) const {
        if (c.size() != dim()) throw ShapeError("coordinate vector has wrong length");
        MatrixType x = MatrixType::Zero(p_, p_);
        for (int a = 0; a < dim(); ++a) x += c[a] * basis_[a];
        return x;
    }

    /// Orthogonal projection onto the span.
    MatrixType project(const MatrixType& y) const { return from_coordinates(coordinates(y)); }

    /// Frobenius norm of y - project(y).
    Scalar residual(const MatrixType& y) const { return (y - project(y)).norm(); }

    bool contains(const MatrixType& y, Scalar tol = Scalar(1e-10)) const {
        return residual(y) <= tol * std::max(Scalar(1), y.norm());
    }

    /// Matrix of u -> pi(a u a) in this basis, a symmetric.
    MatrixType sandwich_operator(const MatrixType& a) const {
        check_shape(a);
        const int n = dim();
        MatrixType m(n, n);
        std::vector<MatrixType> images;
        images.reserve(n);
        for (int j = 0; j < n; ++j) images.push_back(a * basis_[j] * a);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                m(i, j) = trace_inner(basis_[i], images[j]);
                m(j, i) = m(i, j);
            }
        }
        return m;
    }

    void check_shape(const MatrixType& y) const {
        if (y.rows() != p_ || y.cols() != p_) {
            throw ShapeError("expected a " + std::to_string(p_) + "x" + std::to_string(p_) +
                             " matrix, got " + std::to_string(y.rows()) + "x" +
                             std::to_string(y.cols()));
        }
    }

private:
    int p_ = 0;
    std::vector<MatrixType> basis_;
};

/// One basis-generating orbit of cells (i, j), i <= j, 0-based.
struct CellOrbit {
    bool diagonal = false;
    std::vector<std::pair<int, int>> cells;
};

/// Cell orbits of the group on the graph: diagonal orbits first, then edge
/// orbits, each block ordered by smallest cell.
inline std::vector<CellOrbit> cell_orbits(const Graph& g, const PermutationGroup& group) {
    const int p = g.size();
    std::vector<CellOrbit> diag, off;
    std::map<std::pair<int, int>, bool> seen;
    auto orbit_of = [&](int i, int j) {
        std::vector<std::pair<int, int>> cells;
        for (const auto& s : group.elements()) cells.push_back(std::minmax(s(i), s(j)));
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        return cells;
    };
    for (int i = 0; i < p; ++i) {
        if (seen.count({i, i})) continue;
        CellOrbit o{true, orbit_of(i, i)};
        for (auto c : o.cells) seen[c] = true;
        diag.push_back(std::move(o));
    }
    for (auto [i, j] : g.edges()) {
        if (seen.count({i, j})) continue;
        CellOrbit o{false, orbit_of(i, j)};
        for (auto c : o.cells) seen[c] = true;
        off.push_back(std::move(o));
    }
    diag.insert(diag.end(), off.begin(), off.end());
    return diag;
}

/// Throws InvarianceError unless every group element is a graph automorphism.
inline void require_automorphisms(const Graph& g, const PermutationGroup& group) {
    if (group.degree() != g.size()) throw ShapeError("group degree differs from vertex count");
    for (const auto& s : group.elements()) {
        for (int i = 0; i < g.size(); ++i) {
            for (int j = i + 1; j < g.size(); ++j) {
                if (g.adjacent(i, j) != g.adjacent(s(i), s(j))) {
                    throw InvarianceError(
                        "permutation " + s.to_cycle_string() + " maps " +
                        (g.adjacent(i, j) ? "edge" : "non-edge") + " {" + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + "} to " +
                        (g.adjacent(s(i), s(j)) ? "edge" : "non-edge") + " {" +
                        std::to_string(s(i) + 1) + "," + std::to_string(s(j) + 1) + "}");
                }
            }
        }
    }
}

/// The space of group-invariant symmetric matrices vanishing off the graph.
template <typename Scalar>
class InvariantSpace : public SymSubspace<Scalar> {
public:
    using typename SymSubspace<Scalar>::MatrixType;

    InvariantSpace(const Graph& g, const PermutationGroup& group)
        : InvariantSpace(g, group, checked_orbits(g, group)) {}

    const Graph& graph() const noexcept { return graph_; }
    const PermutationGroup& group() const noexcept { return group_; }
    const std::vector<CellOrbit>& orbits() const noexcept { return orbits_; }

    /// Average over the group orbit, then zero the non-edge cells.
    MatrixType orbit_average(const MatrixType& y) const {
        this->check_shape(y);
        const int p = graph_.size();
        MatrixType out = MatrixType::Zero(p, p);
        for (const auto& s : group_.elements()) {
            for (int i = 0; i < p; ++i) {
                for (int j = 0; j < p; ++j) out(s(i), s(j)) += y(i, j);
            }
        }
        out /= Scalar(group_.order());
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                if (i != j && !graph_.adjacent(i, j)) out(i, j) = Scalar(0);
            }
        }
        return symmetrized(out);
    }

private:
    InvariantSpace(const Graph& g, const PermutationGroup& group, std::vector<CellOrbit> orbits)
        : SymSubspace<Scalar>(g.size(), orbit_basis(g.size(), orbits)),
          orbits_(std::move(orbits)),
          graph_(g),
          group_(group) {}

    static std::vector<CellOrbit> checked_orbits(const Graph& g, const PermutationGroup& group) {
        require_automorphisms(g, group);
        return cell_orbits(g, group);
    }

    static std::vector<MatrixType> orbit_basis(int p, const std::vector<CellOrbit>& orbits) {
        std::vector<MatrixType> basis;
        for (const auto& o : orbits) {
            MatrixType b = MatrixType::Zero(p, p);
            const Scalar scale = o.diagonal
                                     ? Scalar(1) / std::sqrt(Scalar(o.cells.size()))
                                     : Scalar(1) / std::sqrt(Scalar(2 * o.cells.size()));
            for (auto [i, j] : o.cells) {
                b(i, j) = scale;
                b(j, i) = scale;
            }
            basis.push_back(std::move(b));
        }
        return basis;
    }

    std::vector<CellOrbit> orbits_;
    Graph graph_;
    PermutationGroup group_;
};

template <typename Scalar>
InvariantSpace<Scalar> build_invariant_space(const Graph& g, const PermutationGroup& group) {
    return InvariantSpace<Scalar>(g, group);
}

template <typename Scalar>
Matrix<Scalar> project(const SymSubspace<Scalar>& space, const Matrix<Scalar>& y) {
    return space.project(y);
}

/// True iff the two spans coincide (mutual projection residuals below tol).
template <typename Scalar>
bool same_span(const SymSubspace<Scalar>& a, const SymSubspace<Scalar>& b,
               Scalar tol = Scalar(1e-10)) {
    if (a.ambient_dim() != b.ambient_dim()) throw ShapeError("subspaces live in different Sym(p)");
    if (a.dim() != b.dim()) return false;
    for (const auto& x : a.basis()) {
        if (b.residual(x) > tol) return false;
    }
    for (const auto& x : b.basis()) {
        if (a.residual(x) > tol) return false;
    }
    return true;
}

template <typename Scalar>
bool same_space(const InvariantSpace<Scalar>& a, const InvariantSpace<Scalar>& b,
                Scalar tol = Scalar(1e-10)) {
    if (!(a.graph() == b.graph())) throw InputError("same_space: spaces are built on different graphs");
    return same_span<Scalar>(a, b, tol);
}

}  // namespace rcop
