#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "spqo/embedding.hpp"
#include "spqo/instance.hpp"
#include "spqo/interval.hpp"

namespace spqo {

/// Shape of random instances for solver cross-checks.
struct RandomInstanceParams {
  int maxTrees = 5;
  int maxLeaves = 6;
  double reversingProb = 0.4;
  double secondParentProb = 0.4;
  double noiseProb = 0.15;  // chance that a tree ignores its planted order
  double starTwinProb = 0.25;  // star child sharing the image of an earlier star child
  double parallelProb = 0.2;   // star child with a second, permuted arc from its parent
};

/// Random DAG of PQ-trees. Every tree is built around a planted order that is
/// inherited from its first parent, so feasible and infeasible cases both occur.
Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& p = {});

/// First random instance that normalizes to a 2-fixed one, within `attempts`.
std::optional<Instance> random_two_fixed_instance(std::mt19937_64& rng, const RandomInstanceParams& p = {},
                                                  int attempts = 200);

/// `count` triples of distinct labels from `leaves`.
std::vector<std::array<Label, 3>> random_triples(std::mt19937_64& rng, const std::vector<Label>& leaves, int count);

/// 2-fixed chain of `gadgets` six-leaf trees linked by four-leaf sinks, two
/// trees per gadget. Used for scaling measurements.
Instance scaling_instance(int gadgets);

/// Every biconnected simple graph with at most `maxEdges` edges, one per
/// isomorphism class, built by ear additions. Vertex names are "0", "1", ...
std::vector<Graph> biconnected_graphs(int maxEdges);

/// Random biconnected graph: a cycle plus random ears, at most `maxEdges` edges.
Graph random_biconnected_graph(std::mt19937_64& rng, int maxEdges);

/// Product over vertices of (degree - 1)!, saturating; the number of
/// rotation systems an exhaustive search visits.
std::uint64_t rotation_system_count(const Graph& g);

/// Graph on vertices "v0", "v1", ... whose edges are the set bits of `mask`,
/// pairs (i, j) with i < j enumerated lexicographically.
Graph graph_from_edge_mask(int n, std::uint64_t mask);

/// Random graph on "v0", "v1", ... with edge probability `p`.
Graph random_graph(std::mt19937_64& rng, int n, double p);

/// Intervals for `names` with pairwise distinct integer endpoints; gaps
/// between consecutive endpoints are drawn from 1..maxGap.
IntervalRep random_intervals(std::mt19937_64& rng, const std::vector<std::string>& names, int maxGap = 3);

}  // namespace spqo
