#include "spqo/pqtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

std::vector<char> subset_mask(const PQTree& t, const std::vector<Label>& s) {
  std::vector<char> keep(t.labels().size(), 0);
  for (const auto& x : s) {
    int i = t.leaf_index(x);
    if (i < 0) throw Error(ErrorCode::InvalidSubset, "label " + x + " not in leaf set");
    keep[static_cast<std::size_t>(i)] = 1;
  }
  return keep;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Children of v in canonical rooting (all neighbours but the parent).
std::vector<int> kids(const PQTree& t, int v) {
  const auto& nb = t.node(v).nbrs;
  return std::vector<int>(nb.begin() + (v == 0 ? 0 : 1), nb.end());
}

}  // namespace

ProjectionInfo project_with_info(const PQTree& t, const std::vector<Label>& s) {
  auto keep = subset_mask(t, s);
  ProjectionInfo info;
  if (t.is_null()) {
    std::vector<Label> kept;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (keep[i]) kept.push_back(t.labels()[i]);
    info.tree = PQTree::null_tree(std::move(kept));
    return info;
  }
  auto res = canonicalize(to_raw(t), t.labels(), &keep);
  info.tree = std::move(res.tree);
  info.origin = std::move(res.origin);
  info.slotOrigin = std::move(res.slotOrigin);
  return info;
}

PQTree project(const PQTree& t, const std::vector<Label>& s) { return project_with_info(t, s).tree; }

ProjectionInfo relabel_with_info(const PQTree& t, const LabelMap& map) {
  std::vector<Label> fresh;
  fresh.reserve(t.labels().size());
  for (const auto& l : t.labels()) {
    auto it = map.find(l);
    if (it == map.end()) throw Error(ErrorCode::InvalidMap, "label " + l + " missing from map");
    fresh.push_back(it->second);
  }
  std::vector<Label> sorted = fresh;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidMap, "relabelling is not injective");
  ProjectionInfo info;
  if (t.is_null()) {
    info.tree = PQTree::null_tree(sorted);
    return info;
  }
  RawTree raw = to_raw(t);
  for (auto& n : raw.nodes)
    if (n.kind == NodeKind::Leaf) {
      const auto& target = fresh[static_cast<std::size_t>(n.leaf)];
      n.leaf = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), target) - sorted.begin());
    }
  auto res = canonicalize(raw, sorted, nullptr);
  info.tree = std::move(res.tree);
  info.origin = std::move(res.origin);
  info.slotOrigin = std::move(res.slotOrigin);
  return info;
}

PQTree relabel(const PQTree& t, const LabelMap& map) { return relabel_with_info(t, map).tree; }

std::uint64_t count_orders(const PQTree& t) {
  if (t.is_null()) return 0;
  std::uint64_t c = 1;
  for (std::size_t v = 1; v < t.nodes().size(); ++v) {
    const auto& n = t.nodes()[v];
    if (n.kind == NodeKind::Q) c = sat_mul(c, 2);
    if (n.kind == NodeKind::P)
      for (std::uint64_t k = 2; k < n.nbrs.size(); ++k) c = sat_mul(c, k);
  }
  return c;
}

std::vector<CircularOrder> enumerate_orders(const PQTree& t, std::size_t cap) {
  std::vector<CircularOrder> out;
  if (t.is_null()) return out;
  if (count_orders(t) > cap) throw Error(ErrorCode::TooLarge, "order set exceeds the cap");
  if (t.variant() == Variant::Empty) {
    out.emplace_back();
    return out;
  }
  // gen(v): all linear leaf sequences of the subtree below v
  std::vector<std::vector<std::vector<int>>> memo(t.nodes().size());
  std::vector<int> post;
  {
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      post.push_back(v);
      for (int c : kids(t, v)) stack.push_back(c);
    }
    std::reverse(post.begin(), post.end());
  }
  for (int v : post) {
    if (v == 0) continue;
    const auto& n = t.node(v);
    auto& res = memo[static_cast<std::size_t>(v)];
    if (n.kind == NodeKind::Leaf) {
      res.push_back({n.leaf});
      continue;
    }
    auto ch = kids(t, v);
    std::vector<std::vector<int>> arrangements;
    if (n.kind == NodeKind::Q) {
      arrangements.push_back(ch);
      arrangements.emplace_back(ch.rbegin(), ch.rend());
    } else {
      std::vector<int> perm = ch;
      std::sort(perm.begin(), perm.end());
      do arrangements.push_back(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (const auto& arr : arrangements) {
      std::vector<std::vector<int>> partial{{}};
      for (int c : arr) {
        std::vector<std::vector<int>> next;
        for (const auto& pre : partial)
          for (const auto& suf : memo[static_cast<std::size_t>(c)]) {
            auto s = pre;
            s.insert(s.end(), suf.begin(), suf.end());
            next.push_back(std::move(s));
          }
        partial = std::move(next);
      }
      for (auto& s : partial) res.push_back(std::move(s));
    }
    for (int c : ch) memo[static_cast<std::size_t>(c)].clear();
  }
  const auto& lab = t.labels();
  if (t.nodes().size() == 1) {
    out.emplace_back(std::vector<Label>{lab[0]});
    return out;
  }
  for (const auto& s : memo[1]) {
    std::vector<Label> seq{lab[static_cast<std::size_t>(t.node(0).leaf)]};
    for (int leaf : s) seq.push_back(lab[static_cast<std::size_t>(leaf)]);
    out.emplace_back(std::move(seq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Positions of each leaf in `order` rotated to start at leaf 0; empty when
// the label sets differ.
std::vector<int> leaf_positions(const PQTree& t, const CircularOrder& order) {
  const auto& seq = order.seq();
  if (seq.size() != t.labels().size()) return {};
  std::vector<int> pos(seq.size(), -1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int idx = t.leaf_index(seq[i]);
    if (idx < 0 || pos[static_cast<std::size_t>(idx)] >= 0) return {};
    pos[static_cast<std::size_t>(idx)] = static_cast<int>(i);
  }
  // canonical order already starts with the smallest label, which is leaf 0
  return pos;
}

}  // namespace

bool represents(const PQTree& t, const CircularOrder& order) {
  if (t.is_null()) return false;
  if (t.variant() == Variant::Empty) return order.empty();
  auto pos = leaf_positions(t, order);
  if (pos.empty()) return false;
  if (t.leaf_count() <= 3) return true;
  const auto& nodes = t.nodes();
  std::vector<int> lo(nodes.size()), hi(nodes.size()), cnt(nodes.size());
  for (std::size_t v = nodes.size(); v-- > 1;) {
    const auto& n = nodes[v];
    if (n.kind == NodeKind::Leaf) {
      lo[v] = hi[v] = pos[static_cast<std::size_t>(n.leaf)];
      cnt[v] = 1;
      continue;
    }
    lo[v] = std::numeric_limits<int>::max();
    hi[v] = -1;
    cnt[v] = 0;
    for (std::size_t i = 1; i < n.nbrs.size(); ++i) {
      auto c = static_cast<std::size_t>(n.nbrs[i]);
      lo[v] = std::min(lo[v], lo[c]);
      hi[v] = std::max(hi[v], hi[c]);
      cnt[v] += cnt[c];
    }
    if (hi[v] - lo[v] + 1 != cnt[v]) return false;
    if (n.kind == NodeKind::Q) {
      bool fwd = true, bwd = true;
      for (std::size_t i = 2; i < n.nbrs.size(); ++i) {
        auto a = static_cast<std::size_t>(n.nbrs[i - 1]), b = static_cast<std::size_t>(n.nbrs[i]);
        if (lo[a] > lo[b]) fwd = false;
        if (lo[a] < lo[b]) bwd = false;
      }
      if (!fwd && !bwd) return false;
    }
  }
  return true;
}

CircularOrder first_order(const PQTree& t) {
  if (t.is_null()) throw Error(ErrorCode::InternalInconsistency, "null tree has no order");
  std::vector<Label> seq;
  for (const auto& n : t.nodes())  // preorder follows stored child order
    if (n.kind == NodeKind::Leaf) seq.push_back(t.labels()[static_cast<std::size_t>(n.leaf)]);
  return CircularOrder(std::move(seq));
}

std::vector<std::vector<int>> node_orders(const PQTree& t, const CircularOrder& order) {
  const auto& nodes = t.nodes();
  std::vector<std::vector<int>> res(nodes.size());
  if (t.variant() != Variant::Normal || nodes.size() <= 2) return res;
  auto pos = leaf_positions(t, order);
  if (pos.empty()) throw Error(ErrorCode::InternalInconsistency, "order does not match the tree's leaves");
  std::vector<int> lo(nodes.size());
  for (std::size_t v = nodes.size(); v-- > 1;) {
    const auto& n = nodes[v];
    if (n.kind == NodeKind::Leaf) {
      lo[v] = pos[static_cast<std::size_t>(n.leaf)];
      continue;
    }
    lo[v] = std::numeric_limits<int>::max();
    std::vector<int> slots;
    for (std::size_t i = 1; i < n.nbrs.size(); ++i) {
      lo[v] = std::min(lo[v], lo[static_cast<std::size_t>(n.nbrs[i])]);
      slots.push_back(static_cast<int>(i));
    }
    std::sort(slots.begin(), slots.end(), [&](int a, int b) {
      return lo[static_cast<std::size_t>(n.nbrs[static_cast<std::size_t>(a)])] <
             lo[static_cast<std::size_t>(n.nbrs[static_cast<std::size_t>(b)])];
    });
    slots.insert(slots.begin(), 0);
    res[v] = std::move(slots);
  }
  return res;
}

CircularOrder order_from_node_orders(const PQTree& t, const std::vector<std::vector<int>>& orders) {
  if (t.variant() != Variant::Normal) return CircularOrder{};
  const auto& nodes = t.nodes();
  if (nodes.size() <= 2) return first_order(t);
  std::vector<Label> seq;
  // (node, slot it was entered from)
  std::vector<std::pair<int, int>> stack{{0, -1}};
  while (!stack.empty()) {
    auto [v, from] = stack.back();
    stack.pop_back();
    const auto& n = nodes[static_cast<std::size_t>(v)];
    if (n.kind == NodeKind::Leaf) {
      seq.push_back(t.labels()[static_cast<std::size_t>(n.leaf)]);
      if (from >= 0) continue;
      stack.emplace_back(n.nbrs[0], -2);
      continue;
    }
    // canonical trees keep the parent in slot 0, so walk on from there
    const auto& ord = orders[static_cast<std::size_t>(v)];
    auto it = std::find(ord.begin(), ord.end(), 0);
    if (ord.size() != n.nbrs.size() || it == ord.end())
      throw Error(ErrorCode::InternalInconsistency, "node order does not list every slot");
    std::size_t p = static_cast<std::size_t>(it - ord.begin());
    std::vector<int> next;
    for (std::size_t i = 1; i < ord.size(); ++i) next.push_back(n.nbrs[static_cast<std::size_t>(ord[(p + i) % ord.size()])]);
    for (auto jt = next.rbegin(); jt != next.rend(); ++jt) stack.emplace_back(*jt, 0);
  }
  return CircularOrder(std::move(seq));
}

std::vector<LinearOrder> enumerate_linear_orders(const RootedPQTree& t, std::size_t cap) {
  std::vector<LinearOrder> out;
  if (t.variant == Variant::Null) return out;
  if (t.variant == Variant::Empty || t.root < 0) {
    out.emplace_back();
    return out;
  }
  std::uint64_t c = 1;
  for (const auto& n : t.nodes) {
    if (n.kind == NodeKind::Q && n.children.size() >= 3) c = sat_mul(c, 2);
    if (n.kind == NodeKind::P)
      for (std::uint64_t k = 2; k <= n.children.size(); ++k) c = sat_mul(c, k);
  }
  if (c > cap) throw Error(ErrorCode::TooLarge, "order set exceeds the cap");
  // Unroot with a sentinel label that sorts before everything, enumerate,
  // then strip the sentinel.
  const Label sentinel;  // the empty string sorts first
  if (std::binary_search(t.labels.begin(), t.labels.end(), sentinel))
    throw Error(ErrorCode::InputError, "empty label is reserved");
  PQTree u = unroot(t, sentinel);
  for (const auto& o : enumerate_orders(u, cap)) {
    std::vector<Label> seq(o.seq().begin() + 1, o.seq().end());
    out.emplace_back(std::move(seq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool represents_linear(const RootedPQTree& t, const LinearOrder& order) {
  if (t.variant == Variant::Null) return false;
  const Label sentinel;
  std::vector<Label> seq{sentinel};
  seq.insert(seq.end(), order.seq().begin(), order.seq().end());
  return represents(unroot(t, sentinel), CircularOrder(std::move(seq)));
}

FixednessReport classify_from_projection(const PQTree& parent, const ProjectionInfo& info,
                                         const PQTree& childTree, const MedianIndex& childIndex,
                                         const ProjectionInfo* view) {
  FixednessReport rep;
  rep.nodes.resize(parent.nodes().size());
  for (std::size_t v = 0; v < parent.nodes().size(); ++v)
    rep.nodes[v].edgeFixed.assign(parent.nodes()[v].nbrs.size(), 0);
  const PQTree& proj = info.tree;
  if (proj.variant() != Variant::Normal) return rep;
  const bool withReps = childTree.variant() == Variant::Normal;
  for (std::size_t x = 0; x < proj.nodes().size(); ++x) {
    if (proj.nodes()[x].kind == NodeKind::Leaf) continue;
    auto o = static_cast<std::size_t>(info.origin[x]);
    auto& nf = rep.nodes[o];
    nf.fixed = true;
    nf.image = static_cast<int>(x);
    for (int s : info.slotOrigin[x]) nf.edgeFixed[static_cast<std::size_t>(s)] = 1;
    if (!withReps || !parent.is_orientation_node(static_cast<int>(o))) continue;
    // Three projected slots in the parent's reference order.
    std::vector<std::pair<int, int>> slots;  // (origin slot, projected slot)
    for (std::size_t s = 0; s < info.slotOrigin[x].size(); ++s)
      slots.emplace_back(info.slotOrigin[x][s], static_cast<int>(s));
    std::sort(slots.begin(), slots.end());
    int leafNodes[3];
    for (int i = 0; i < 3; ++i) {
      int pl = some_leaf_in_direction(proj, static_cast<int>(x), slots[static_cast<std::size_t>(i)].second);
      const Label& lab = proj.labels()[static_cast<std::size_t>(proj.node(pl).leaf)];
      leafNodes[i] = childTree.leaf_node(lab);
      if (leafNodes[i] < 0) throw Error(ErrorCode::NotAChild, "child misses leaf " + lab);
    }
    int m = childIndex.median(leafNodes[0], leafNodes[1], leafNodes[2]);
    if (!childTree.is_inner(m) || !childTree.is_orientation_node(m))
      throw Error(ErrorCode::NotAChild, "fixed node has no orientation representative");
    int t0 = childIndex.slot_towards(m, leafNodes[0]);
    int t1 = childIndex.slot_towards(m, leafNodes[1]);
    int t2 = childIndex.slot_towards(m, leafNodes[2]);
    if (t0 == t1 || t1 == t2 || t0 == t2) throw Error(ErrorCode::NotAChild, "representative leaves collapse");
    if (view) {
      const auto& so = view->slotOrigin[static_cast<std::size_t>(m)];
      t0 = so[static_cast<std::size_t>(t0)];
      t1 = so[static_cast<std::size_t>(t1)];
      t2 = so[static_cast<std::size_t>(t2)];
      m = view->origin[static_cast<std::size_t>(m)];
    }
    nf.rep = m;
    nf.repAligned = cyclically_increasing(t0, t1, t2);
  }
  return rep;
}

FixednessReport classify_fixedness(const PQTree& parent, const std::vector<Label>& childLeaves,
                                   const PQTree& childTree) {
  auto info = project_with_info(parent, childLeaves);
  if (info.tree.labels() != childTree.labels())
    throw Error(ErrorCode::NotAChild, "child leaves differ from the given leaf subset");
  if (childTree.is_null() || info.tree.is_null())
    throw Error(ErrorCode::NotAChild, "null trees have no fixedness");
  if (intersect(childTree, info.tree) != childTree)
    throw Error(ErrorCode::NotAChild, "child does not refine the projection");
  MedianIndex idx(childTree);
  return classify_from_projection(parent, info, childTree, idx);
}

}  // namespace spqo
