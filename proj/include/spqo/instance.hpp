#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "spqo/orders.hpp"
#include "spqo/pqtree.hpp"

namespace spqo {

/// Arc (source, target; map) of an instance. `map` sends every target leaf
/// to a source leaf; a reversing arc asks for the reversed suborder.
struct Arc {
  int source = -1;
  int target = -1;
  LabelMap map;
  bool reversing = false;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// DAG of PQ-trees. Tree ids are vector indices and double as the creation
/// order; arc ids are indices as well.
struct Instance {
  std::vector<PQTree> trees;
  std::vector<Arc> arcs;

  std::vector<int> out_arcs(int tree) const;
  std::vector<int> in_arcs(int tree) const;
  /// All out-arc (resp. in-arc) lists at once, in arc order.
  std::vector<std::vector<int>> out_adjacency() const;
  std::vector<std::vector<int>> in_adjacency() const;
};

/// Validates maps and acyclicity. Throws InvalidMap, CyclicDAG or InputError.
Instance build_instance(std::vector<PQTree> trees, std::vector<Arc> arcs);

/// Sources first; ties broken by smallest tree id. Throws CyclicDAG.
std::vector<int> topological_order(const Instance& d);

/// Sum of tree sizes plus, per arc, the number of target leaves.
std::size_t instance_size(const Instance& d);

/// Everything the solver needs to know about one arc after normalization.
struct ArcInfo {
  ProjectionInfo proj;       // source projected onto the image of the map
  ProjectionInfo childView;  // target relabelled into source labels
  FixednessReport fixedness;  // source nodes w.r.t. this arc; reps are target node ids
};

/// Fixed/free data of an arc whose target already refines the projection of
/// its source. Throws NotAChild otherwise.
ArcInfo analyze_arc(const Instance& d, int arc);

struct NormalizedInstance {
  Instance instance;
  std::vector<ArcInfo> arcInfo;  // per arc
};

/// Replaces every target by its intersection with the pulled-back projection
/// of each parent, top-down, incoming arcs in creation order.
NormalizedInstance normalize(const Instance& d);

struct FixednessMap {
  /// value[tree][node]: fixedness of branching P-nodes, -1 elsewhere.
  std::vector<std::vector<int>> value;
  int maxValue = 0;
  bool twoFixed = true;
};

FixednessMap fixedness(const NormalizedInstance& n);

/// Instance deciding a Cyclic Ordering instance: a P-star over `leaves`,
/// one three-leaf tree per triple, and a shared sink over {1,2,3}.
Instance reduce_cyclic_ordering(const std::vector<Label>& leaves,
                                const std::vector<std::array<Label, 3>>& triples);

}  // namespace spqo
