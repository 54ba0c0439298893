#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "spqo/embedding.hpp"
#include "spqo/instance.hpp"
#include "spqo/interval.hpp"
#include "spqo/orders.hpp"
#include "spqo/solver.hpp"

namespace spqo {

/// Limits for exhaustive searches. Exceeding one throws BudgetExceeded.
struct OracleBudget {
  std::uint64_t maxOrders = 5'000'000;     // search nodes / candidate orders
  std::uint64_t maxEmbeddings = 2'000'000;  // rotation systems tried
  double timeLimit = 120.0;                 // seconds
};

/// Exhaustive search over represented orders of every tree.
std::optional<Solution> brute_force_simultaneous_orders(const Instance& d, const OracleBudget& budget = {});

/// A circular order of `leaves` in which every triple appears in its given
/// cyclic order, by trying all of them.
std::optional<CircularOrder> brute_force_cyclic_ordering(const std::vector<Label>& leaves,
                                                         const std::vector<std::array<Label, 3>>& triples,
                                                         const OracleBudget& budget = {});

/// Every planar rotation system of `g`, by trying all of them and counting
/// faces. The smallest edge comes first in each rotation.
std::vector<RotationSystem> brute_force_embeddings(const Graph& g, const OracleBudget& budget = {});

/// A planar rotation system whose rotations respect the constraint trees.
std::optional<RotationSystem> brute_force_pq_constrained(const Graph& g, const std::map<int, PQTree>& constraints,
                                                         const OracleBudget& budget = {});

/// Planar rotation systems of both graphs ordering common edges alike.
std::optional<std::pair<RotationSystem, RotationSystem>> brute_force_sefe(const Graph& g1, const Graph& g2,
                                                                          const OracleBudget& budget = {});

/// Maximal cliques by Bron-Kerbosch, sorted, each ascending.
CliqueSet brute_force_maximal_cliques(const Graph& g);

/// Every linear order of the maximal cliques of `g` (indices into
/// brute_force_maximal_cliques) in which the cliques of each vertex are
/// consecutive, by exhaustive search pruned at the first violation.
std::vector<std::vector<int>> brute_force_clique_orders(const Graph& g, const OracleBudget& budget = {});

/// Representation from the first consecutive clique order, or nothing.
std::optional<IntervalRep> brute_force_interval(const Graph& g, const OracleBudget& budget = {});

/// Searches interleavings of both clique sets in which the cliques of every
/// common vertex are consecutive and each graph's own cliques are consecutive
/// for its vertices.
std::optional<std::pair<IntervalRep, IntervalRep>> brute_force_simultaneous_interval(const Graph& g1, const Graph& g2,
                                                                                     const OracleBudget& budget = {});

/// True iff some clique order of `g` admits a representation whose
/// restriction to the prescribed vertices has the prescribed signature.
bool brute_force_interval_extension(const Graph& g, const IntervalRep& prescribed, const OracleBudget& budget = {});

}  // namespace spqo
