#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spqo/instance.hpp"
#include "spqo/orders.hpp"

namespace spqo {

/// P-node `pnode` of `tree` fixed with respect to the targets of two arcs
/// leaving `tree` (the targets coincide for parallel arcs).
struct CriticalTriple {
  int tree = -1;
  int pnode = -1;
  int arcA = -1;
  int arcB = -1;
  bool reversingA = false;
  bool reversingB = false;
};

struct TreeProvenance {
  bool expansion = false;
  int respTree = -1;  // tree and P-node responsible for an expansion tree
  int respNode = -1;
  std::string key;  // processing-order independent name
};

/// Two parallel arcs into a single-P-node sink; the sink order O must satisfy
/// perm(O) = O, or perm(O) = reverse(O) when the arc signs differ.
struct DoubleArc {
  int arcA = -1;
  int arcB = -1;
  int sink = -1;
  Permutation perm;
  bool mixed = false;
};

struct ExpansionStats {
  std::size_t expansionSteps = 0;
  std::size_t finalizingSteps = 0;
  std::size_t doubleArcs = 0;
  std::size_t size = 0;       // |D_ex|
  std::size_t baseline = 0;   // p_max * |N| + |A| of the input
  double ratio = 0.0;         // size / baseline, the observed constant C
};

struct ExpansionGraph {
  Instance instance;
  std::vector<ArcInfo> arcInfo;
  std::vector<TreeProvenance> provenance;  // per tree
  std::vector<std::string> arcKeys;        // per arc, processing-order independent
  std::vector<int> finalizingArcs;
  std::vector<DoubleArc> doubleArcs;
  std::vector<CriticalTriple> triples;  // in processing order
  std::map<std::pair<int, int>, int> resp;  // original (tree, P-node) -> transitive count
  int nullTree = -1;  // an expansion tree that came out Null; construction stops there
  ExpansionStats stats;
};

struct ExpansionOptions {
  double budgetConstant = 64.0;
  /// Process the worklist in a seeded random order instead of FIFO.
  std::optional<std::uint64_t> shuffleSeed;
};

/// All critical triples at P-nodes of `tree`, from the current arc data.
std::vector<CriticalTriple> find_critical_triples(const Instance& d, const std::vector<ArcInfo>& arcInfo, int tree);

/// Fixpoint of expansion and finalizing steps. Throws NotOneCritical when a
/// P-node is fixed by more than two children, BudgetExceeded when the graph
/// outgrows the configured bound, InternalInconsistency when a structural law
/// fails.
ExpansionGraph build_expansion_graph(const NormalizedInstance& n, const ExpansionOptions& opts = {});

/// Text that is equal for isomorphic expansion graphs built from the same
/// input, whatever the processing order.
std::string expansion_signature(const ExpansionGraph& g);

}  // namespace spqo
