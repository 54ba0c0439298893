#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spqo/embedding.hpp"
#include "spqo/instance.hpp"

namespace spqo {

/// Closed interval. Coordinates are integral except where an extension has to
/// place endpoints strictly between two adjacent integers of the prescribed
/// representation.
struct Interval {
  double left = 0, right = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Vertex name -> interval.
using IntervalRep = std::map<std::string, Interval>;

/// Maximal cliques as ascending vertex id lists, sorted.
using CliqueSet = std::vector<std::vector<int>>;

/// Lexicographic breadth-first search order.
std::vector<int> lex_bfs(const Graph& g);

/// True iff the neighbours of every vertex that come later in `order` form a
/// clique.
bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order);

/// Maximal cliques of a chordal graph, or nothing when `g` is not chordal.
std::optional<CliqueSet> maximal_cliques(const Graph& g);

/// True iff `rep` covers exactly the vertices of `g` and its intersection
/// graph is `g`.
bool represents_graph(const Graph& g, const IntervalRep& rep);

/// Graph on the named intervals with an edge per intersecting pair.
Graph intersection_graph(const IntervalRep& rep);

/// Interval representation from the maximal-clique order, or nothing.
std::optional<IntervalRep> recognize_interval(const Graph& g);

/// Instance for two graphs sharing vertices by name, with the clique label
/// tables needed to read a solution back.
struct SimultaneousIntervalInstance {
  Instance instance;  // tree 0: all cliques, tree 1 and 2: cliques of each graph
  CliqueSet first, second;
};

/// Leaf used to root the linear-order trees.
inline const Label kSpecialLeaf = "$";
/// Leaf label of clique `index` of graph `graph` (1 or 2).
Label clique_label(int graph, int index);

/// Builds the three-tree instance, or nothing when a graph is not chordal.
std::optional<SimultaneousIntervalInstance> simultaneous_interval_instance(const Graph& g1, const Graph& g2);

struct SimultaneousIntervalResult {
  SolveStatus status = SolveStatus::Feasible;
  std::string reason;
  IntervalRep first, second;
  /// Clique labels in the chosen linear order of the union.
  std::vector<Label> cliqueOrder;
};

/// Representations of both graphs sharing the intervals of common vertices.
SimultaneousIntervalResult simultaneous_interval(const Graph& g1, const Graph& g2);

/// Endpoint of an interval in a signature.
struct Endpoint {
  std::string vertex;
  bool right = false;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Endpoints in increasing coordinate order. Throws InvalidRepresentation
/// when two endpoints coincide.
std::vector<Endpoint> signature(const IntervalRep& rep);

/// Signature of the mirrored representation.
std::vector<Endpoint> mirrored(const std::vector<Endpoint>& sig);

enum class GadgetRole { Original, Left, Middle, Right, Connector };

/// Graph G' holding H as induced subgraph plus markers L_i, M_i, R_i per
/// endpoint and connectors C_i per gap, built as an intersection graph.
struct ExtensionGadget {
  Graph graph;
  /// Per vertex of `graph` its role and endpoint or gap index (1-based).
  std::vector<std::pair<GadgetRole, int>> provenance;
  /// Representation of `graph` with H endpoints at 8, 16, ... in signature order.
  IntervalRep representation;
};

/// Builds G' for the representation `rep` of `h`. Marker names start with
/// `prefix`. Throws InvalidRepresentation when endpoints coincide or `rep`
/// does not represent `h`.
ExtensionGadget build_extension_gadget(const Graph& h, const IntervalRep& rep, const std::string& prefix = "_");

struct ExtensionResult {
  SolveStatus status = SolveStatus::Feasible;
  std::string reason;
  IntervalRep representation;
};

/// Representation of `g` that equals `prescribed` on its vertices. The
/// prescribed vertices must exist in `g`; throws InputError otherwise and
/// InvalidRepresentation when `prescribed` is not a representation of the
/// induced subgraph with distinct endpoints.
ExtensionResult extend_partial_interval(const Graph& g, const IntervalRep& prescribed);

/// Induced subgraph on the named vertices, in the order of `g`.
Graph induced_subgraph(const Graph& g, const std::vector<std::string>& names);

}  // namespace spqo
