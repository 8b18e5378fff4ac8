#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcop/graph.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/io.hpp"
#include "rcop/realization.hpp"

namespace rcop {

/// A named subgroup, given by generators in cycle notation.
struct SubgroupLabel {
    std::string label;
    std::vector<std::string> generators;
};

/// One realization: the space of subgroup `id` (and of every subgroup in
/// `merged`) is carried onto Z_V by U^T (.) U.
struct RegistryEntry {
    std::string id;
    std::vector<std::string> merged;
    MatrixXd u;
    VStructure<double> v;
};

/// Realizations of the distinct invariant spaces of one graph.
struct Registry {
    std::string name;
    Graph graph;
    std::vector<SubgroupLabel> subgroups;
    std::vector<RegistryEntry> entries;

    PermutationGroup group(const std::string& label) const;
    /// Label whose group has exactly this element set.
    std::optional<std::string> label_of(const PermutationGroup& g) const;
    const RegistryEntry* find(const std::string& id) const;
};

Registry load_registry(const json& j);
Registry load_registry_file(const std::string& path);

/// The embedded registry for the five-vertex exam-marks graph.
const Registry& butterfly_registry();
Graph butterfly_graph();

/// Realization of z from the registry (if the graph matches) or from the
/// canonical structures of Sym(p) and the ray R I_p.
std::optional<Realization<double>> find_realization(const InvariantSpace<double>& z,
                                                    const Registry* registry);

/// Conjugation check of every entry; returns one message per failing entry.
std::vector<std::string> check_registry(const Registry& registry);

}  // namespace rcop
