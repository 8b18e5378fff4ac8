#include "rcop/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "rcop/errors.hpp"

namespace rcop {

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)), adj_(labels_.size() * labels_.size(), false) {
    const int p = size();
    if (p == 0) throw InputError("graph must have at least one vertex");
    std::set<std::pair<int, int>> unique;
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= p || j >= p) {
            throw InputError("edge endpoint out of range: (" + std::to_string(i + 1) + ", " +
                             std::to_string(j + 1) + ")");
        }
        if (i == j) throw InputError("self-loop at vertex " + std::to_string(i + 1));
        unique.insert(std::minmax(i, j));
    }
    edges_.assign(unique.begin(), unique.end());
    for (auto [i, j] : edges_) {
        adj_[index(i, j)] = true;
        adj_[index(j, i)] = true;
    }
}

Graph Graph::unlabeled(int p, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> labels;
    for (int i = 1; i <= p; ++i) labels.push_back(std::to_string(i));
    return Graph(std::move(labels), edges);
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= degree() || seen[v]) throw InputError("images do not form a permutation");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int p) {
    std::vector<int> images(p);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::string_view text, int p) {
    std::vector<int> images(p);
    std::iota(images.begin(), images.end(), 0);
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    std::string s = first == std::string_view::npos ? std::string{}
                                                    : std::string(text.substr(first, last - first + 1));
    if (s == "e" || s == "()" || s.empty()) return Permutation(std::move(images));

    std::vector<bool> used(p, false);
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] == ' ') {
            ++pos;
            continue;
        }
        if (s[pos] != '(') throw InputError("bad cycle notation: " + s);
        const auto close = s.find(')', pos);
        if (close == std::string::npos) throw InputError("unterminated cycle: " + s);
        std::istringstream in(s.substr(pos + 1, close - pos - 1));
        std::vector<int> cycle;
        for (std::string tok; in >> tok;) {
            std::size_t used_chars = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used_chars);
            } catch (const std::exception&) {
                throw InputError("bad point in cycle notation: " + tok);
            }
            if (used_chars != tok.size() || v < 1 || v > p) {
                throw InputError("point out of range in cycle notation: " + tok);
            }
            if (used[v - 1]) throw InputError("point repeated in cycle notation: " + tok);
            used[v - 1] = true;
            cycle.push_back(v - 1);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            images[cycle[k]] = cycle[(k + 1) % cycle.size()];
        }
        pos = close + 1;
    }
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

int Permutation::order() const {
    int result = 1;
    for (const auto& c : cycles()) result = std::lcm(result, static_cast<int>(c.size()));
    return result;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int start = 0; start < degree(); ++start) {
        if (seen[start] || images_[start] == start) continue;
        std::vector<int> cycle;
        for (int v = start; !seen[v]; v = images_[v]) {
            seen[v] = true;
            cycle.push_back(v);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::string Permutation::to_cycle_string() const {
    const auto cs = cycles();
    if (cs.empty()) return "e";
    std::string out;
    for (const auto& c : cs) {
        out += '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) out += ' ';
            out += std::to_string(c[k] + 1);
        }
        out += ')';
    }
    return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw ShapeError("composing permutations of different degree");
    std::vector<int> images(a.images_.size());
    for (int i = 0; i < a.degree(); ++i) images[i] = a.images_[b.images_[i]];
    return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------

std::vector<Permutation> closure(int degree, const std::vector<Permutation>& seeds) {
    std::set<Permutation> elements{Permutation::identity(degree)};
    std::vector<Permutation> frontier{Permutation::identity(degree)};
    for (const auto& s : seeds) {
        if (s.degree() != degree) throw ShapeError("generator degree mismatch");
    }
    // Right-multiplying by generators reaches every element of a finite group.
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& g : frontier) {
            for (const auto& s : seeds) {
                Permutation h = g * s;
                if (elements.insert(h).second) next.push_back(std::move(h));
            }
        }
        frontier = std::move(next);
    }
    return {elements.begin(), elements.end()};
}

std::vector<Permutation> minimal_generators(const std::vector<Permutation>& elements) {
    if (elements.empty()) return {};
    const int degree = elements.front().degree();
    std::vector<Permutation> candidates;
    for (const auto& g : elements) {
        if (!g.is_identity()) candidates.push_back(g);
    }
    if (candidates.empty()) return {};
    const std::size_t target = elements.size();
    for (const auto& g : candidates) {
        if (closure(degree, {g}).size() == target) return {g};
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (closure(degree, {candidates[i], candidates[j]}).size() == target) {
                return {candidates[i], candidates[j]};
            }
        }
    }
    // Greedy fallback for groups that need three or more generators.
    std::vector<Permutation> gens;
    std::set<Permutation> current{Permutation::identity(degree)};
    for (const auto& g : candidates) {
        if (current.count(g)) continue;
        gens.push_back(g);
        auto c = closure(degree, gens);
        current = std::set<Permutation>(c.begin(), c.end());
        if (current.size() == target) break;
    }
    for (std::size_t k = 0; k < gens.size();) {
        auto trial = gens;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
        if (closure(degree, trial).size() == target) {
            gens = std::move(trial);
        } else {
            ++k;
        }
    }
    return gens;
}

PermutationGroup PermutationGroup::generated_by(int degree, std::vector<Permutation> generators) {
    PermutationGroup g;
    g.degree_ = degree;
    g.elements_ = closure(degree, generators);
    std::erase_if(generators, [](const Permutation& s) { return s.is_identity(); });
    g.generators_ = std::move(generators);
    return g;
}

bool PermutationGroup::contains(const Permutation& g) const {
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool PermutationGroup::is_subgroup_of(const PermutationGroup& other) const {
    if (degree_ != other.degree_) return false;
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
}

// ---------------------------------------------------------------------------

namespace {

void extend_automorphisms(const Graph& g, std::vector<int>& images, std::vector<bool>& used,
                          int next, std::vector<Permutation>& out) {
    const int p = g.size();
    if (next == p) {
        out.emplace_back(images);
        return;
    }
    for (int cand = 0; cand < p; ++cand) {
        if (used[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            ok = g.adjacent(prev, next) == g.adjacent(images[prev], cand);
        }
        if (!ok) continue;
        used[cand] = true;
        images[next] = cand;
        extend_automorphisms(g, images, used, next + 1, out);
        used[cand] = false;
    }
}

}  // namespace

PermutationGroup automorphism_group(const Graph& g) {
    if (g.size() > kMaxAutomorphismVertices) {
        throw ScopeError("automorphism search is limited to " +
                         std::to_string(kMaxAutomorphismVertices) + " vertices (graph has " +
                         std::to_string(g.size()) + ")");
    }
    std::vector<Permutation> all;
    std::vector<int> images(g.size(), -1);
    std::vector<bool> used(g.size(), false);
    extend_automorphisms(g, images, used, 0, all);
    std::sort(all.begin(), all.end());
    auto gens = minimal_generators(all);
    return PermutationGroup::generated_by(g.size(), std::move(gens));
}

std::vector<PermutationGroup> enumerate_subgroups(const PermutationGroup& group) {
    if (group.order() > kMaxSubgroupEnumerationOrder) {
        throw ScopeError("subgroup enumeration is limited to groups of order " +
                         std::to_string(kMaxSubgroupEnumerationOrder) + " (group has order " +
                         std::to_string(group.order()) + ")");
    }
    const int degree = group.degree();
    const auto& elems = group.elements();
    std::set<std::vector<Permutation>> found;
    std::vector<std::vector<Permutation>> worklist;
    auto add = [&](std::vector<Permutation> s) {
        if (found.insert(s).second) worklist.push_back(std::move(s));
    };

    add({Permutation::identity(degree)});
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i; j < elems.size(); ++j) add(closure(degree, {elems[i], elems[j]}));
    }
    // Joining any known subgroup with one more element reaches every subgroup,
    // including those needing three or more generators.
    while (!worklist.empty()) {
        auto h = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& g : elems) {
            if (std::binary_search(h.begin(), h.end(), g)) continue;
            auto seeds = h;
            seeds.push_back(g);
            add(closure(degree, seeds));
        }
    }

    std::vector<std::vector<Permutation>> sets(found.begin(), found.end());
    std::stable_sort(sets.begin(), sets.end(),
                     [](const auto& a, const auto& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    std::vector<PermutationGroup> out;
    out.reserve(sets.size());
    for (const auto& s : sets) out.push_back(PermutationGroup::generated_by(degree, minimal_generators(s)));
    return out;
}

// ---------------------------------------------------------------------------

bool is_chordal(const Graph& g) {
    const int p = g.size();
    std::vector<bool> alive(p, true);
    for (int removed = 0; removed < p; ++removed) {
        int simplicial = -1;
        for (int v = 0; v < p && simplicial < 0; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nbrs;
            for (int u = 0; u < p; ++u) {
                if (alive[u] && u != v && g.adjacent(u, v)) nbrs.push_back(u);
            }
            bool clique = true;
            for (std::size_t a = 0; a < nbrs.size() && clique; ++a) {
                for (std::size_t b = a + 1; b < nbrs.size() && clique; ++b) {
                    clique = g.adjacent(nbrs[a], nbrs[b]);
                }
            }
            if (clique) simplicial = v;
        }
        if (simplicial < 0) return false;
        alive[simplicial] = false;
    }
    return true;
}

bool has_induced_p4(const Graph& g) {
    const int p = g.size();
    // Ordered paths a-b-c-d with no chords a-c, b-d, a-d.
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
            if (b == a || !g.adjacent(a, b)) continue;
            for (int c = 0; c < p; ++c) {
                if (c == a || c == b || !g.adjacent(b, c) || g.adjacent(a, c)) continue;
                for (int d = 0; d < p; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (g.adjacent(c, d) && !g.adjacent(b, d) && !g.adjacent(a, d)) return true;
                }
            }
        }
    }
    return false;
}

bool is_homogeneous_graph(const Graph& g) { return is_chordal(g) && !has_induced_p4(g); }

}  // namespace rcop
