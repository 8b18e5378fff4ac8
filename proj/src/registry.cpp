#include "rcop/registry.hpp"

#include <algorithm>

#include "rcop/embedded_registry.hpp"
#include "rcop/errors.hpp"

namespace rcop {

PermutationGroup Registry::group(const std::string& label) const {
    for (const auto& s : subgroups) {
        if (s.label != label) continue;
        std::vector<Permutation> gens;
        for (const auto& c : s.generators) gens.push_back(Permutation::from_cycles(c, graph.size()));
        return PermutationGroup::generated_by(graph.size(), std::move(gens));
    }
    throw InputError("registry " + name + " has no subgroup labelled " + label);
}

std::optional<std::string> Registry::label_of(const PermutationGroup& g) const {
    for (const auto& s : subgroups) {
        if (group(s.label) == g) return s.label;
    }
    return std::nullopt;
}

const RegistryEntry* Registry::find(const std::string& id) const {
    for (const auto& e : entries) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

Registry load_registry(const json& j) {
    Registry reg;
    try {
        reg.name = j.value("name", std::string("registry"));
        reg.graph = graph_from_json(j.at("graph"));
        for (const auto& s : j.at("subgroups")) {
            reg.subgroups.push_back(
                {s.at("label").get<std::string>(), s.at("generators").get<std::vector<std::string>>()});
        }
        for (const auto& e : j.at("entries")) {
            RegistryEntry entry;
            entry.id = e.at("id").get<std::string>();
            try {
                entry.merged = e.value("merged", std::vector<std::string>{entry.id});
                entry.u = matrix_from_json(e.at("U"));
                entry.v = vstructure_from_json(e.at("vstructure"));
            } catch (const Error& ex) {
                throw InputError("registry entry " + entry.id + ": " + ex.what());
            }
            reg.entries.push_back(std::move(entry));
        }
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed registry JSON: ") + ex.what());
    }
    for (const auto& e : reg.entries) {
        for (const auto& label : e.merged) reg.group(label);  // every label must resolve
    }
    return reg;
}

Registry load_registry_file(const std::string& path) { return load_registry(read_json_file(path)); }

const Registry& butterfly_registry() {
    static const Registry reg = load_registry(json::parse(detail::kEmbeddedRegistryJson));
    return reg;
}

Graph butterfly_graph() { return butterfly_registry().graph; }

std::optional<Realization<double>> find_realization(const InvariantSpace<double>& z,
                                                    const Registry* registry) {
    const int p = z.ambient_dim();
    if (registry && z.graph() == registry->graph) {
        for (const auto& e : registry->entries) {
            const InvariantSpace<double> rep(registry->graph, registry->group(e.id));
            if (same_space(z, rep)) return conjugate_space<double>(z, e.u, e.v);
        }
    }
    const MatrixXd identity = MatrixXd::Identity(p, p);
    if (z.dim() == p * (p + 1) / 2) {
        return conjugate_space<double>(z, identity, VStructure<double>::full_symmetric(p));
    }
    if (z.dim() == 1) {
        return conjugate_space<double>(z, identity, VStructure<double>({p}, {}));
    }
    // A diagonal space is a sum of rays, one per vertex orbit.
    if (std::all_of(z.orbits().begin(), z.orbits().end(), [](const CellOrbit& o) { return o.diagonal; })) {
        MatrixXd u = MatrixXd::Zero(p, p);
        std::vector<int> sizes;
        int column = 0;
        for (const auto& o : z.orbits()) {
            sizes.push_back(static_cast<int>(o.cells.size()));
            for (const auto& cell : o.cells) u(cell.first, column++) = 1.0;
        }
        return conjugate_space<double>(z, u, VStructure<double>(sizes, {}));
    }
    return std::nullopt;
}

std::vector<std::string> check_registry(const Registry& registry) {
    std::vector<std::string> failures;
    for (const auto& e : registry.entries) {
        try {
            const auto report = validate_vstructure(e.v);
            for (const auto& f : report.failures) failures.push_back(e.id + ": " + f);
            for (const auto& label : e.merged) {
                const InvariantSpace<double> z(registry.graph, registry.group(label));
                conjugate_space<double>(z, e.u, e.v);
            }
        } catch (const Error& ex) {
            failures.push_back(e.id + ": " + ex.what());
        }
    }
    return failures;
}

}  // namespace rcop
