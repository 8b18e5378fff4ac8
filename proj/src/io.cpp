#include "rcop/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rcop/errors.hpp"

namespace rcop {

Graph graph_from_json(const json& j) {
    try {
        std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair [i, j]");
            edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
        }
        return Graph(std::move(labels), edges);
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed graph JSON: ") + ex.what());
    }
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i + 1, j + 1});
    return {{"labels", g.labels()}, {"edges", edges}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

Graph read_graph_file(const std::string& path) { return graph_from_json(read_json_file(path)); }

double symbolic_entry(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const double r = std::sqrt(2.0);
        if (s == "1/sqrt2") return 1.0 / r;
        if (s == "-1/sqrt2") return -1.0 / r;
        if (s == "sqrt2") return r;
        if (s == "-sqrt2") return -r;
        throw InputError("unknown symbolic matrix entry \"" + s + "\"");
    }
    throw InputError("matrix entry must be a number or a known symbol");
}

MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix must be a nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw InputError("ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = symbolic_entry(j[i][c]);
    }
    return m;
}

json matrix_to_json(const MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        out.push_back(std::move(row));
    }
    return out;
}

json space_to_json(const InvariantSpace<double>& z) {
    json basis = json::array();
    for (int a = 0; a < z.dim(); ++a) {
        json cells = json::array();
        for (auto [i, j] : z.orbits()[a].cells) cells.push_back({i + 1, j + 1});
        basis.push_back({{"kind", z.orbits()[a].diagonal ? "diagonal" : "edge"},
                         {"cells", cells},
                         {"matrix", matrix_to_json(z.basis(a))}});
    }
    json gens = json::array();
    for (const auto& g : z.group().generators()) gens.push_back(g.to_cycle_string());
    return {{"dim", z.dim()},
            {"group_order", z.group().order()},
            {"generators", gens},
            {"graph", graph_to_json(z.graph())},
            {"basis", basis}};
}

VStructure<double> vstructure_from_json(const json& j) {
    try {
        auto sizes = j.at("block_sizes").get<std::vector<int>>();
        std::map<BlockIndex, std::vector<MatrixXd>> subs;
        for (const auto& s : j.at("subspaces")) {
            const int l = s.at("l").get<int>() - 1;
            const int k = s.at("k").get<int>() - 1;
            auto& basis = subs[{l, k}];
            for (const auto& b : s.at("basis")) basis.push_back(matrix_from_json(b));
        }
        return VStructure<double>(std::move(sizes), std::move(subs));
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed VStructure JSON: ") + ex.what());
    }
}

json vstructure_to_json(const VStructure<double>& v) {
    json subs = json::array();
    for (const auto& [idx, basis] : v.subspaces()) {
        json b = json::array();
        for (const auto& a : basis) b.push_back(matrix_to_json(a));
        subs.push_back({{"l", idx.first + 1}, {"k", idx.second + 1}, {"basis", b}});
    }
    return {{"block_sizes", v.block_sizes()}, {"subspaces", subs}};
}

MatrixXd read_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw InputError("non-numeric CSV cell in line: " + line);
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size()) throw InputError("ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("CSV contains no data rows");
    MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) m(i, c) = rows[i][c];
    }
    return m;
}

MatrixXd read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_csv_matrix(in);
}

}  // namespace rcop
