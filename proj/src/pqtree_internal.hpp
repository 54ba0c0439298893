#pragma once

#include <vector>

#include "spqo/pqtree.hpp"

namespace spqo {

/// Arbitrary (possibly non-canonical) unrooted tree; leaf ids index a label
/// vector supplied alongside.
struct RawTree {
  struct Node {
    NodeKind kind = NodeKind::Leaf;
    int leaf = -1;
    std::vector<int> nbrs;
  };
  std::vector<Node> nodes;
};

struct CanonResult {
  PQTree tree;
  std::vector<int> origin;
  std::vector<std::vector<int>> slotOrigin;
};

struct TreeBuilder {
  static PQTree make(Variant variant, std::vector<Label> labels, std::vector<PQTree::Node> nodes);
};

/// Drops leaves whose `keep` flag is 0 (all leaves are kept when `keep` is
/// null), prunes and splices inner nodes, and renumbers into canonical form.
/// `labels` must be sorted and cover every leaf id used by `raw`.
CanonResult canonicalize(const RawTree& raw, const std::vector<Label>& labels,
                         const std::vector<char>* keep);

RawTree to_raw(const PQTree& t);

/// Reduction on a rooted tree given as a membership mask over its labels.
bool reduce_rooted_mask(RootedPQTree& t, const std::vector<char>& inS);

/// Rewrites degree-3 rooted Q-nodes (two children) as P-nodes and drops
/// unreachable nodes.
void tidy_rooted(RootedPQTree& t);

/// Fixedness classification without the refinement check. When `view` is
/// given, `childTree` is a relabelled copy and representatives are reported
/// in the node and slot ids of the tree `view` stems from.
FixednessReport classify_from_projection(const PQTree& parent, const ProjectionInfo& info,
                                         const PQTree& childTree, const MedianIndex& childIndex,
                                         const ProjectionInfo* view = nullptr);

/// Sub-tree leaf of direction `slot` at node `v` of a canonical tree.
int some_leaf_in_direction(const PQTree& t, int v, int slot);

/// Size of the canonical preorder subtree rooted at each node.
std::vector<int> subtree_sizes(const PQTree& t);

}  // namespace spqo
