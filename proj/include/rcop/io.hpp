#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rcop/graph.hpp"
#include "rcop/invariant_space.hpp"
#include "rcop/linalg.hpp"
#include "rcop/realization.hpp"

namespace rcop {

using json = nlohmann::json;

/// { "labels": [...], "edges": [[i, j], ...] } with 1-based indices.
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);
Graph read_graph_file(const std::string& path);

/// Dense row-major matrix as nested arrays. Entries may be numbers or the
/// exact symbols "1/sqrt2", "-1/sqrt2", "sqrt2", "-sqrt2".
MatrixXd matrix_from_json(const json& j);
json matrix_to_json(const MatrixXd& m);
double symbolic_entry(const json& j);

/// Basis matrices plus the cell orbit behind each basis element.
json space_to_json(const InvariantSpace<double>& z);

/// { "block_sizes": [...], "subspaces": [{ "l", "k", "basis": [matrix...] }] }, 1-based l > k.
VStructure<double> vstructure_from_json(const json& j);
json vstructure_to_json(const VStructure<double>& v);

/// CSV with one observation per row; a non-numeric first row is a header.
MatrixXd read_csv_matrix(std::istream& in);
MatrixXd read_csv_file(const std::string& path);

json read_json_file(const std::string& path);

}  // namespace rcop
