#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rcop {

// Vertices are 0-based internally; every textual form (JSON, cycle notation)
// is 1-based.

/// Undirected simple graph with labelled vertices.
class Graph {
public:
    Graph() = default;
    /// Edges are 0-based pairs. Throws InputError on loops or bad endpoints.
    Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);
    /// Unlabelled graph; vertices are named "1".."p".
    static Graph unlabeled(int p, const std::vector<std::pair<int, int>>& edges);

    int size() const noexcept { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool adjacent(int i, int j) const { return adj_[index(i, j)]; }
    /// Sorted edge list, each pair with first < second.
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * labels_.size() + j; }

    std::vector<std::string> labels_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<bool> adj_;
};

/// Bijection of {0..p-1}. Composition follows (a*b)(i) = a(b(i)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int p);
    /// Parses cycle notation such as "(1 2)(4 5)" or "e"/"()" for the identity.
    static Permutation from_cycles(std::string_view text, int p);

    int degree() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const noexcept { return images_; }

    Permutation inverse() const;
    bool is_identity() const;
    int order() const;
    /// Disjoint cycles of length >= 2, each starting at its smallest point.
    std::vector<std::vector<int>> cycles() const;
    /// 1-based cycle notation; the identity renders as "e".
    std::string to_cycle_string() const;

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// Finite permutation group with its full element list materialized.
class PermutationGroup {
public:
    PermutationGroup() = default;
    /// Closure of the generators under composition.
    static PermutationGroup generated_by(int degree, std::vector<Permutation> generators);

    int degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Permutation>& generators() const noexcept { return generators_; }
    /// Sorted lexicographically by image list; the identity is first.
    const std::vector<Permutation>& elements() const noexcept { return elements_; }
    bool contains(const Permutation& g) const;
    bool is_subgroup_of(const PermutationGroup& other) const;

    bool operator==(const PermutationGroup& other) const { return elements_ == other.elements_; }

private:
    int degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
};

/// Sorted closure of a set of permutations of the given degree.
std::vector<Permutation> closure(int degree, const std::vector<Permutation>& seeds);

/// A smallest generating set, found by scanning element tuples in sorted order.
std::vector<Permutation> minimal_generators(const std::vector<Permutation>& elements);

inline constexpr int kMaxAutomorphismVertices = 10;
inline constexpr std::size_t kMaxSubgroupEnumerationOrder = 120;

/// All adjacency-preserving permutations, by pruned backtracking over S_p.
PermutationGroup automorphism_group(const Graph& g);

/// Every subgroup exactly once, sorted by order and then by element list.
std::vector<PermutationGroup> enumerate_subgroups(const PermutationGroup& group);

/// Chordal (perfect elimination by simplicial vertices) and free of induced P4.
bool is_homogeneous_graph(const Graph& g);
bool is_chordal(const Graph& g);
bool has_induced_p4(const Graph& g);

}  // namespace rcop
