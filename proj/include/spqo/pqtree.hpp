#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "spqo/orders.hpp"

namespace spqo {

enum class NodeKind { P, Q, Leaf };
enum class Variant { Normal, Null, Empty };

/// Unrooted PQ-tree over a set of string labels, representing a set of
/// circular orders. Instances are always kept in canonical form:
///  - no inner node of degree <= 2;
///  - Q-nodes have degree >= 4 (degree-3 Q-nodes become P-nodes);
///  - node 0 is the leaf with the smallest label, and every other node lists
///    its neighbour towards node 0 first;
///  - P-node children are sorted by their smallest leaf label, Q-node
///    children are oriented so the smaller end comes first;
///  - node ids are assigned in depth-first preorder from node 0.
/// Two trees representing the same order set are therefore identical.
class PQTree {
 public:
  struct Node {
    NodeKind kind = NodeKind::Leaf;
    int leaf = -1;  // index into labels() for leaves
    std::vector<int> nbrs;
    friend bool operator==(const Node&, const Node&) = default;
  };

  PQTree() = default;  // the empty tree

  static PQTree universal(std::vector<Label> leaves);
  static PQTree null_tree(std::vector<Label> leaves);

  Variant variant() const noexcept { return variant_; }
  bool is_null() const noexcept { return variant_ == Variant::Null; }

  /// Sorted leaf labels; a leaf node's `leaf` field indexes this vector.
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(int v) const { return nodes_.at(static_cast<std::size_t>(v)); }

  int leaf_index(const Label& l) const;        // -1 when absent
  int leaf_node(int leafIndex) const { return leafNode_.at(static_cast<std::size_t>(leafIndex)); }
  int leaf_node(const Label& l) const;         // -1 when absent

  std::size_t leaf_count() const noexcept { return labels_.size(); }
  std::size_t inner_count() const noexcept;
  std::size_t edge_count() const noexcept;
  /// Nodes plus edges, the size measure used for instances.
  std::size_t size() const noexcept { return nodes_.size() + edge_count(); }

  bool is_inner(int v) const { return node(v).kind != NodeKind::Leaf; }
  int degree(int v) const { return static_cast<int>(node(v).nbrs.size()); }
  /// Q-nodes and degree-3 P-nodes: nodes whose only freedom is a flip.
  bool is_orientation_node(int v) const;
  /// P-nodes of degree >= 4, the nodes whose order is not a single flip.
  bool is_branching_pnode(int v) const;
  /// Exactly one inner node.
  bool is_star() const noexcept;

  friend bool operator==(const PQTree&, const PQTree&) = default;

 private:
  friend struct TreeBuilder;
  Variant variant_ = Variant::Empty;
  std::vector<Label> labels_;
  std::vector<Node> nodes_;
  std::vector<int> leafNode_;
};

/// Rooted PQ-tree representing linear orders. Q-node children are ordered.
struct RootedPQTree {
  struct Node {
    NodeKind kind = NodeKind::Leaf;
    int leaf = -1;
    std::vector<int> children;
  };
  Variant variant = Variant::Empty;
  std::vector<Label> labels;  // sorted
  std::vector<Node> nodes;
  int root = -1;
};

/// Result of a projection together with the node and neighbour-slot of the
/// source tree that every projected node and edge stems from.
struct ProjectionInfo {
  PQTree tree;
  std::vector<int> origin;                  // projected node -> source node
  std::vector<std::vector<int>> slotOrigin;  // projected (node, slot) -> source slot
};

struct NodeFixedness {
  bool fixed = false;
  std::vector<char> edgeFixed;  // per neighbour slot of the parent node
  int image = -1;               // node of the projection, when fixed
  int rep = -1;                 // orientation nodes: child node fixing the flip
  bool repAligned = true;       // reference orientations agree
};

struct FixednessReport {
  std::vector<NodeFixedness> nodes;  // indexed by parent node id
};

PQTree reduce(const PQTree& t, const std::vector<Label>& s);
PQTree project(const PQTree& t, const std::vector<Label>& s);
ProjectionInfo project_with_info(const PQTree& t, const std::vector<Label>& s);
PQTree intersect(const PQTree& a, const PQTree& b);
PQTree from_consecutive_sets(const std::vector<Label>& leaves,
                             const std::vector<std::vector<Label>>& family);

/// Renames leaves; `map` must be injective on the tree's labels.
PQTree relabel(const PQTree& t, const LabelMap& map);
/// Relabelling that also records, per new node and slot, the original ones.
ProjectionInfo relabel_with_info(const PQTree& t, const LabelMap& map);

RootedPQTree root_at(const PQTree& t, const Label& special);
PQTree unroot(const RootedPQTree& t, const Label& special);

/// Reduces a rooted tree in place; returns false and leaves the tree in an
/// unspecified state when no linear order keeps `s` consecutive.
bool reduce_rooted(RootedPQTree& t, const std::vector<Label>& s);

/// Number of represented circular orders, saturating at UINT64_MAX.
std::uint64_t count_orders(const PQTree& t);
std::vector<CircularOrder> enumerate_orders(const PQTree& t, std::size_t cap);
std::vector<LinearOrder> enumerate_linear_orders(const RootedPQTree& t, std::size_t cap);

/// Membership test for a single circular order.
bool represents(const PQTree& t, const CircularOrder& order);
bool represents_linear(const RootedPQTree& t, const LinearOrder& order);

/// The order read off the canonical tree: P-node children by smallest leaf
/// label and Q-nodes in their stored orientation.
CircularOrder first_order(const PQTree& t);

/// For a represented order, the circular order of neighbour slots it
/// realises at every inner node (leaves get an empty vector).
std::vector<std::vector<int>> node_orders(const PQTree& t, const CircularOrder& order);

/// Leaf order produced by fixing a circular slot order at every inner node.
CircularOrder order_from_node_orders(const PQTree& t, const std::vector<std::vector<int>>& orders);

/// Fixed/free classification of `parent` with respect to a child over
/// `childLeaves` (parent labels). Throws NotAChild when `childTree` does not
/// refine the projection of the parent.
FixednessReport classify_fixedness(const PQTree& parent, const std::vector<Label>& childLeaves,
                                   const PQTree& childTree);

/// Lowest-common-ancestor index over a canonical tree rooted at node 0.
class MedianIndex {
 public:
  explicit MedianIndex(const PQTree& t);
  int lca(int a, int b) const;
  /// The unique node on all three pairwise paths.
  int median(int a, int b, int c) const;
  /// Neighbour slot of `v` leading towards `target` (target != v).
  int slot_towards(int v, int target) const;

 private:
  int jump(int v, int depth) const;
  const PQTree* tree_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> up_;
};

/// Circular order of three slots: true iff a -> b -> c is increasing up to
/// rotation.
bool cyclically_increasing(int a, int b, int c);

}  // namespace spqo
