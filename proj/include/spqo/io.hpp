#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "spqo/embedding.hpp"
#include "spqo/instance.hpp"
#include "spqo/interval.hpp"
#include "spqo/solver.hpp"

namespace spqo {

using Json = nlohmann::ordered_json;

/// {variant, nodes:[{id, kind, label?, neighbors}]}; kind is "P", "Q" or "leaf".
Json tree_to_json(const PQTree& t);
/// Accepts any tree shape and returns its canonical form. Throws InputError.
PQTree tree_from_json(const Json& j);

/// {trees:[...], arcs:[{source, target, map, reversing}]}.
Json instance_to_json(const Instance& d);
Instance instance_from_json(const Json& j);

/// {orders:{treeId:[labels]}, qAssignment:{"tree:node":bool}, status, reason?}.
Json solve_result_to_json(const SolveResult& r);

/// {vertexName:[edgeIds in circular order]}.
Json rotation_to_json(const Graph& g, const RotationSystem& rot);

/// {vertexName:[left, right]}; integral coordinates are written as integers.
Json interval_rep_to_json(const IntervalRep& rep);
IntervalRep interval_rep_from_json(const Json& j);

/// {vertexName: tree}; tree leaves are edge ids of edges incident to the vertex.
std::map<int, PQTree> constraints_from_json(const Json& j, const Graph& g);

/// {leaves:[...], triples:[[a, b, c], ...]}.
struct CyclicOrderingInput {
  std::vector<Label> leaves;
  std::vector<std::array<Label, 3>> triples;
};
CyclicOrderingInput cyclic_ordering_from_json(const Json& j);

/// Parses a file as JSON. Throws InputError.
Json read_json_file(const std::string& path);

}  // namespace spqo
