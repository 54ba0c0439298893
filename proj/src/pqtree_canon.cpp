#include <algorithm>
#include <utility>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

PQTree TreeBuilder::make(Variant variant, std::vector<Label> labels, std::vector<PQTree::Node> nodes) {
  PQTree t;
  t.variant_ = variant;
  t.labels_ = std::move(labels);
  t.nodes_ = std::move(nodes);
  t.leafNode_.assign(t.labels_.size(), -1);
  if (variant == Variant::Normal)
    for (std::size_t v = 0; v < t.nodes_.size(); ++v)
      if (t.nodes_[v].kind == NodeKind::Leaf) t.leafNode_[static_cast<std::size_t>(t.nodes_[v].leaf)] = static_cast<int>(v);
  return t;
}

PQTree PQTree::universal(std::vector<Label> leaves) {
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
    throw Error(ErrorCode::InputError, "duplicate leaf label");
  RawTree raw;
  raw.nodes.push_back({NodeKind::P, -1, {}});
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    int id = static_cast<int>(raw.nodes.size());
    raw.nodes.push_back({NodeKind::Leaf, static_cast<int>(i), {0}});
    raw.nodes[0].nbrs.push_back(id);
  }
  return canonicalize(raw, leaves, nullptr).tree;
}

PQTree PQTree::null_tree(std::vector<Label> leaves) {
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  return TreeBuilder::make(Variant::Null, std::move(leaves), {});
}

int PQTree::leaf_index(const Label& l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) return -1;
  return static_cast<int>(it - labels_.begin());
}

int PQTree::leaf_node(const Label& l) const {
  int i = leaf_index(l);
  return i < 0 ? -1 : leafNode_[static_cast<std::size_t>(i)];
}

std::size_t PQTree::inner_count() const noexcept {
  std::size_t c = 0;
  for (const auto& n : nodes_) c += n.kind != NodeKind::Leaf;
  return c;
}

std::size_t PQTree::edge_count() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d += n.nbrs.size();
  return d / 2;
}

bool PQTree::is_orientation_node(int v) const {
  const auto& n = node(v);
  return n.kind == NodeKind::Q || (n.kind == NodeKind::P && n.nbrs.size() == 3);
}

bool PQTree::is_branching_pnode(int v) const {
  const auto& n = node(v);
  return n.kind == NodeKind::P && n.nbrs.size() >= 4;
}

bool PQTree::is_star() const noexcept { return variant_ == Variant::Normal && inner_count() == 1; }

RawTree to_raw(const PQTree& t) {
  RawTree raw;
  raw.nodes.reserve(t.nodes().size());
  for (const auto& n : t.nodes()) raw.nodes.push_back({n.kind, n.leaf, n.nbrs});
  return raw;
}

CanonResult canonicalize(const RawTree& raw, const std::vector<Label>& labels,
                         const std::vector<char>* keep) {
  const int n = static_cast<int>(raw.nodes.size());
  auto isLeaf = [&](int v) { return raw.nodes[static_cast<std::size_t>(v)].kind == NodeKind::Leaf; };
  std::vector<char> dead(static_cast<std::size_t>(n), 0);
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    const auto& nd = raw.nodes[static_cast<std::size_t>(v)];
    deg[static_cast<std::size_t>(v)] = static_cast<int>(nd.nbrs.size());
    if (nd.kind == NodeKind::Leaf) {
      if (keep && !(*keep)[static_cast<std::size_t>(nd.leaf)]) queue.push_back(v);
    } else if (nd.nbrs.size() <= 1) {
      queue.push_back(v);
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    if (dead[static_cast<std::size_t>(v)]) continue;
    dead[static_cast<std::size_t>(v)] = 1;
    for (int u : raw.nodes[static_cast<std::size_t>(v)].nbrs) {
      if (dead[static_cast<std::size_t>(u)]) continue;
      if (--deg[static_cast<std::size_t>(u)] <= 1 && !isLeaf(u)) queue.push_back(u);
    }
  }

  // Alive leaves sorted by leaf id, which is also label order.
  std::vector<int> aliveLeaves;
  for (int v = 0; v < n; ++v)
    if (!dead[static_cast<std::size_t>(v)] && isLeaf(v)) aliveLeaves.push_back(v);
  std::sort(aliveLeaves.begin(), aliveLeaves.end(), [&](int a, int b) {
    return raw.nodes[static_cast<std::size_t>(a)].leaf < raw.nodes[static_cast<std::size_t>(b)].leaf;
  });
  std::vector<Label> outLabels;
  std::vector<int> leafRank(labels.size(), -1);
  for (int v : aliveLeaves) {
    int id = raw.nodes[static_cast<std::size_t>(v)].leaf;
    leafRank[static_cast<std::size_t>(id)] = static_cast<int>(outLabels.size());
    outLabels.push_back(labels[static_cast<std::size_t>(id)]);
  }

  CanonResult res;
  const std::size_t k = aliveLeaves.size();
  if (k == 0) {
    res.tree = TreeBuilder::make(Variant::Empty, {}, {});
    return res;
  }
  if (k <= 2) {
    std::vector<PQTree::Node> nodes;
    for (std::size_t i = 0; i < k; ++i) {
      PQTree::Node nd{NodeKind::Leaf, static_cast<int>(i), {}};
      if (k == 2) nd.nbrs.push_back(static_cast<int>(1 - i));
      nodes.push_back(std::move(nd));
      res.origin.push_back(aliveLeaves[i]);
      // A leaf of a valid raw tree has a single neighbour slot.
      res.slotOrigin.push_back(k == 2 ? std::vector<int>{0} : std::vector<int>{});
    }
    res.tree = TreeBuilder::make(Variant::Normal, std::move(outLabels), std::move(nodes));
    return res;
  }

  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    kept[static_cast<std::size_t>(v)] =
        !dead[static_cast<std::size_t>(v)] && (isLeaf(v) || deg[static_cast<std::size_t>(v)] >= 3);

  // Contracted adjacency: (kept neighbour, raw slot at this node).
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (!kept[static_cast<std::size_t>(v)]) continue;
    const auto& nb = raw.nodes[static_cast<std::size_t>(v)].nbrs;
    for (std::size_t j = 0; j < nb.size(); ++j) {
      int prev = v, cur = nb[j];
      if (dead[static_cast<std::size_t>(cur)]) continue;
      while (!kept[static_cast<std::size_t>(cur)]) {
        int next = -1;
        for (int w : raw.nodes[static_cast<std::size_t>(cur)].nbrs)
          if (w != prev && !dead[static_cast<std::size_t>(w)]) {
            next = w;
            break;
          }
        prev = cur;
        cur = next;
      }
      adj[static_cast<std::size_t>(v)].emplace_back(cur, static_cast<int>(j));
    }
  }

  // Root at the smallest alive leaf; compute parents and a preorder.
  const int root = aliveLeaves.front();
  std::vector<int> parentPos(static_cast<std::size_t>(n), -1);  // index into adj of parent entry
  std::vector<int> order;
  {
    std::vector<std::pair<int, int>> stack{{root, -1}};
    while (!stack.empty()) {
      auto [v, p] = stack.back();
      stack.pop_back();
      order.push_back(v);
      const auto& a = adj[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].first == p) {
          parentPos[static_cast<std::size_t>(v)] = static_cast<int>(i);
          continue;
        }
        stack.emplace_back(a[i].first, v);
      }
    }
  }
  std::vector<int> minLeaf(static_cast<std::size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (isLeaf(v)) {
      minLeaf[static_cast<std::size_t>(v)] = raw.nodes[static_cast<std::size_t>(v)].leaf;
      continue;
    }
    int m = -1;
    const auto& a = adj[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == parentPos[static_cast<std::size_t>(v)]) continue;
      int cm = minLeaf[static_cast<std::size_t>(a[i].first)];
      if (m < 0 || cm < m) m = cm;
    }
    minLeaf[static_cast<std::size_t>(v)] = m;
  }

  // Ordered child positions for every kept node.
  auto childPositions = [&](int v) {
    const auto& a = adj[static_cast<std::size_t>(v)];
    const int d = static_cast<int>(a.size());
    const int pp = parentPos[static_cast<std::size_t>(v)];
    std::vector<int> pos;
    if (pp < 0) {
      for (int i = 0; i < d; ++i) pos.push_back(i);
      return pos;
    }
    for (int i = 1; i < d; ++i) pos.push_back((pp + i) % d);
    auto kind = raw.nodes[static_cast<std::size_t>(v)].kind;
    auto mk = [&](int i) { return minLeaf[static_cast<std::size_t>(a[static_cast<std::size_t>(i)].first)]; };
    if (kind == NodeKind::Q && d >= 4) {
      if (mk(pos.front()) > mk(pos.back())) std::reverse(pos.begin(), pos.end());
    } else {
      std::sort(pos.begin(), pos.end(), [&](int x, int y) { return mk(x) < mk(y); });
    }
    return pos;
  };

  std::vector<int> newId(static_cast<std::size_t>(n), -1);
  std::vector<int> pre;
  std::vector<std::vector<int>> childPos(static_cast<std::size_t>(n));
  {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      newId[static_cast<std::size_t>(v)] = static_cast<int>(pre.size());
      pre.push_back(v);
      childPos[static_cast<std::size_t>(v)] = childPositions(v);
      const auto& cp = childPos[static_cast<std::size_t>(v)];
      for (auto it = cp.rbegin(); it != cp.rend(); ++it)
        stack.push_back(adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(*it)].first);
    }
  }

  std::vector<PQTree::Node> nodes(pre.size());
  res.origin.resize(pre.size());
  res.slotOrigin.resize(pre.size());
  for (std::size_t id = 0; id < pre.size(); ++id) {
    int v = pre[id];
    const auto& rn = raw.nodes[static_cast<std::size_t>(v)];
    const auto& a = adj[static_cast<std::size_t>(v)];
    auto& out = nodes[id];
    out.kind = rn.kind;
    if (rn.kind == NodeKind::Leaf) out.leaf = leafRank[static_cast<std::size_t>(rn.leaf)];
    if (rn.kind == NodeKind::Q && a.size() == 3) out.kind = NodeKind::P;
    const int pp = parentPos[static_cast<std::size_t>(v)];
    if (pp >= 0) {
      out.nbrs.push_back(newId[static_cast<std::size_t>(a[static_cast<std::size_t>(pp)].first)]);
      res.slotOrigin[id].push_back(a[static_cast<std::size_t>(pp)].second);
    }
    for (int i : childPos[static_cast<std::size_t>(v)]) {
      out.nbrs.push_back(newId[static_cast<std::size_t>(a[static_cast<std::size_t>(i)].first)]);
      res.slotOrigin[id].push_back(a[static_cast<std::size_t>(i)].second);
    }
    res.origin[id] = v;
  }
  res.tree = TreeBuilder::make(Variant::Normal, std::move(outLabels), std::move(nodes));
  return res;
}

std::vector<int> subtree_sizes(const PQTree& t) {
  const auto& nodes = t.nodes();
  std::vector<int> sz(nodes.size(), 1);
  for (std::size_t v = nodes.size(); v-- > 1;) {
    int p = nodes[v].nbrs[0];
    sz[static_cast<std::size_t>(p)] += sz[v];
  }
  return sz;
}

int some_leaf_in_direction(const PQTree& t, int v, int slot) {
  if (v != 0 && slot == 0) return 0;
  int c = t.node(v).nbrs.at(static_cast<std::size_t>(slot));
  while (t.node(c).kind != NodeKind::Leaf) c = t.node(c).nbrs[1];
  return c;
}

MedianIndex::MedianIndex(const PQTree& t) : tree_(&t) {
  const auto& nodes = t.nodes();
  const std::size_t n = nodes.size();
  depth_.assign(n, 0);
  int levels = 1;
  while ((std::size_t{1} << levels) < n) ++levels;
  up_.assign(static_cast<std::size_t>(levels), std::vector<int>(n, 0));
  for (std::size_t v = 1; v < n; ++v) {
    int p = nodes[v].nbrs[0];
    depth_[v] = depth_[static_cast<std::size_t>(p)] + 1;
    up_[0][v] = p;
  }
  for (std::size_t k = 1; k < up_.size(); ++k)
    for (std::size_t v = 0; v < n; ++v) up_[k][v] = up_[k - 1][static_cast<std::size_t>(up_[k - 1][v])];
}

int MedianIndex::jump(int v, int d) const {
  int diff = depth_[static_cast<std::size_t>(v)] - d;
  for (std::size_t k = 0; diff > 0; ++k, diff >>= 1)
    if (diff & 1) v = up_[k][static_cast<std::size_t>(v)];
  return v;
}

int MedianIndex::lca(int a, int b) const {
  int da = depth_[static_cast<std::size_t>(a)], db = depth_[static_cast<std::size_t>(b)];
  if (da > db) a = jump(a, db);
  if (db > da) b = jump(b, da);
  if (a == b) return a;
  for (std::size_t k = up_.size(); k-- > 0;) {
    if (up_[k][static_cast<std::size_t>(a)] != up_[k][static_cast<std::size_t>(b)]) {
      a = up_[k][static_cast<std::size_t>(a)];
      b = up_[k][static_cast<std::size_t>(b)];
    }
  }
  return up_[0][static_cast<std::size_t>(a)];
}

int MedianIndex::median(int a, int b, int c) const {
  int x = lca(a, b), y = lca(a, c), z = lca(b, c);
  int best = x;
  if (depth_[static_cast<std::size_t>(y)] > depth_[static_cast<std::size_t>(best)]) best = y;
  if (depth_[static_cast<std::size_t>(z)] > depth_[static_cast<std::size_t>(best)]) best = z;
  return best;
}

int MedianIndex::slot_towards(int v, int target) const {
  if (lca(v, target) != v) return 0;
  int c = jump(target, depth_[static_cast<std::size_t>(v)] + 1);
  const auto& nb = tree_->node(v).nbrs;
  auto first = nb.begin() + (v == 0 ? 0 : 1);
  auto it = std::lower_bound(first, nb.end(), c);
  return static_cast<int>(it - nb.begin());
}

bool cyclically_increasing(int a, int b, int c) { return (a < b) + (b < c) + (c < a) == 2; }

}  // namespace spqo
