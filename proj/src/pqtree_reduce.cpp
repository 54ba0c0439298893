// Rooted template reduction and the operations built on it.

#include <algorithm>
#include <utility>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

enum Status { kEmpty = 0, kPartial = 1, kFull = 2 };

class Reducer {
 public:
  Reducer(RootedPQTree& t, const std::vector<char>& inS) : t_(t), inS_(inS) {}

  bool run() {
    const std::size_t n = t_.nodes.size();
    cnt_.assign(n, 0);
    sz_.assign(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> stack{t_.root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int c : t_.nodes[static_cast<std::size_t>(v)].children) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto v = static_cast<std::size_t>(*it);
      const auto& nd = t_.nodes[v];
      if (nd.kind == NodeKind::Leaf) {
        sz_[v] = 1;
        cnt_[v] = inS_[static_cast<std::size_t>(nd.leaf)] ? 1 : 0;
      } else {
        for (int c : nd.children) {
          sz_[v] += sz_[static_cast<std::size_t>(c)];
          cnt_[v] += cnt_[static_cast<std::size_t>(c)];
        }
      }
    }
    const int total = cnt_[static_cast<std::size_t>(t_.root)];
    if (total <= 1 || total == sz_[static_cast<std::size_t>(t_.root)]) return true;
    int r = t_.root;
    for (bool descended = true; descended;) {
      descended = false;
      for (int c : t_.nodes[static_cast<std::size_t>(r)].children)
        if (cnt_[static_cast<std::size_t>(c)] == total) {
          r = c;
          descended = true;
          break;
        }
    }
    return at_root(r);
  }

 private:
  Status status(int v) const {
    auto i = static_cast<std::size_t>(v);
    if (cnt_[i] == 0) return kEmpty;
    if (cnt_[i] == sz_[i]) return kFull;
    return kPartial;
  }

  int add_node(NodeKind kind, std::vector<int> children) {
    t_.nodes.push_back({kind, -1, std::move(children)});
    return static_cast<int>(t_.nodes.size()) - 1;
  }

  int group(std::vector<int> kids) {
    if (kids.size() == 1) return kids.front();
    return add_node(NodeKind::P, std::move(kids));
  }

  std::vector<int> children(int v) const { return t_.nodes[static_cast<std::size_t>(v)].children; }

  void split(int v, std::vector<int>& e, std::vector<int>& f, std::vector<int>& p) const {
    for (int c : t_.nodes[static_cast<std::size_t>(v)].children) {
      switch (status(c)) {
        case kEmpty: e.push_back(c); break;
        case kFull: f.push_back(c); break;
        case kPartial: p.push_back(c); break;
      }
    }
  }

  // Turns a partial node into a Q-node whose full leaves form a suffix.
  bool below_root(int x) {
    if (t_.nodes[static_cast<std::size_t>(x)].kind == NodeKind::P) {
      std::vector<int> e, f, p;
      split(x, e, f, p);
      if (p.size() > 1) return false;
      if (!p.empty() && !below_root(p[0])) return false;
      std::vector<int> seq;
      if (!e.empty()) seq.push_back(group(e));
      if (!p.empty()) {
        auto pc = children(p[0]);
        seq.insert(seq.end(), pc.begin(), pc.end());
      }
      if (!f.empty()) seq.push_back(group(f));
      t_.nodes[static_cast<std::size_t>(x)].kind = NodeKind::Q;
      t_.nodes[static_cast<std::size_t>(x)].children = std::move(seq);
      return true;
    }
    auto ch = children(x);
    auto matches = [&](const std::vector<int>& seq) {
      std::size_t i = 0;
      while (i < seq.size() && status(seq[i]) == kEmpty) ++i;
      if (i < seq.size() && status(seq[i]) == kPartial) ++i;
      while (i < seq.size() && status(seq[i]) == kFull) ++i;
      return i == seq.size();
    };
    if (!matches(ch)) {
      std::reverse(ch.begin(), ch.end());
      if (!matches(ch)) return false;
    }
    std::vector<int> out;
    for (int c : ch) {
      if (status(c) == kPartial) {
        if (!below_root(c)) return false;
        auto pc = children(c);
        out.insert(out.end(), pc.begin(), pc.end());
      } else {
        out.push_back(c);
      }
    }
    t_.nodes[static_cast<std::size_t>(x)].children = std::move(out);
    return true;
  }

  bool at_root(int r) {
    if (t_.nodes[static_cast<std::size_t>(r)].kind == NodeKind::P) {
      std::vector<int> e, f, p;
      split(r, e, f, p);
      if (p.size() > 2) return false;
      for (int c : p)
        if (!below_root(c)) return false;
      if (p.empty()) {
        if (e.empty() || f.size() <= 1) return true;
        e.push_back(group(f));
        t_.nodes[static_cast<std::size_t>(r)].children = std::move(e);
        return true;
      }
      std::vector<int> seq = children(p[0]);
      if (!f.empty()) seq.push_back(group(f));
      if (p.size() == 2) {
        auto pc = children(p[1]);
        seq.insert(seq.end(), pc.rbegin(), pc.rend());
      }
      if (e.empty()) {
        t_.nodes[static_cast<std::size_t>(r)].kind = NodeKind::Q;
        t_.nodes[static_cast<std::size_t>(r)].children = std::move(seq);
      } else {
        e.push_back(add_node(NodeKind::Q, std::move(seq)));
        t_.nodes[static_cast<std::size_t>(r)].children = std::move(e);
      }
      return true;
    }
    auto ch = children(r);
    std::size_t i0 = ch.size(), i1 = 0;
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (status(ch[i]) != kEmpty) {
        i0 = std::min(i0, i);
        i1 = i;
      }
    if (i0 >= i1) return true;  // everything inside one child cannot happen here
    for (std::size_t i = i0 + 1; i < i1; ++i)
      if (status(ch[i]) != kFull) return false;
    std::vector<int> out;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      int c = ch[i];
      if (status(c) != kPartial) {
        out.push_back(c);
        continue;
      }
      if (!below_root(c)) return false;
      auto pc = children(c);
      if (i == i0)
        out.insert(out.end(), pc.begin(), pc.end());
      else
        out.insert(out.end(), pc.rbegin(), pc.rend());
    }
    t_.nodes[static_cast<std::size_t>(r)].children = std::move(out);
    return true;
  }

  RootedPQTree& t_;
  const std::vector<char>& inS_;
  std::vector<int> cnt_, sz_;
};

std::vector<int> reachable(const RootedPQTree& t) {
  std::vector<int> order;
  if (t.root < 0) return order;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = t.nodes[static_cast<std::size_t>(v)].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

// Rooted view of an unrooted tree with `specialNode` removed. Leaf ids
// are shifted by `leafShift` where ids above `specialLeaf` move down.
RootedPQTree rooted_view(const PQTree& t, int specialNode) {
  RootedPQTree r;
  r.variant = Variant::Normal;
  const int specialLeaf = t.node(specialNode).leaf;
  for (std::size_t i = 0; i < t.labels().size(); ++i)
    if (static_cast<int>(i) != specialLeaf) r.labels.push_back(t.labels()[i]);
  auto remap = [&](int leaf) { return leaf > specialLeaf ? leaf - 1 : leaf; };
  if (t.nodes().size() == 1) {
    r.variant = Variant::Empty;
    return r;
  }
  const int top = t.node(specialNode).nbrs[0];
  std::vector<int> newId(t.nodes().size(), -1);
  // (node, parent) pairs
  std::vector<std::pair<int, int>> stack{{top, specialNode}};
  while (!stack.empty()) {
    auto [v, p] = stack.back();
    stack.pop_back();
    int id = static_cast<int>(r.nodes.size());
    newId[static_cast<std::size_t>(v)] = id;
    const auto& nd = t.node(v);
    r.nodes.push_back({nd.kind, nd.kind == NodeKind::Leaf ? remap(nd.leaf) : -1, {}});
    if (nd.kind == NodeKind::Leaf) continue;
    const auto& nb = nd.nbrs;
    const std::size_t d = nb.size();
    std::size_t ps = static_cast<std::size_t>(std::find(nb.begin(), nb.end(), p) - nb.begin());
    for (std::size_t i = 1; i < d; ++i) stack.emplace_back(nb[(ps + i) % d], v);
  }
  // Children lists in cyclic order after the parent.
  for (std::size_t v = 0; v < t.nodes().size(); ++v) {
    if (newId[v] < 0 || t.nodes()[v].kind == NodeKind::Leaf) continue;
    const auto& nb = t.nodes()[v].nbrs;
    const std::size_t d = nb.size();
    int p = static_cast<int>(v) == top ? specialNode : -1;
    std::size_t ps = 0;
    if (p < 0) {
      // parent is the neighbour with a smaller rooted id
      for (std::size_t i = 0; i < d; ++i)
        if (newId[static_cast<std::size_t>(nb[i])] >= 0 &&
            newId[static_cast<std::size_t>(nb[i])] < newId[v]) {
          ps = i;
          break;
        }
    } else {
      ps = static_cast<std::size_t>(std::find(nb.begin(), nb.end(), p) - nb.begin());
    }
    auto& ch = r.nodes[static_cast<std::size_t>(newId[v])].children;
    for (std::size_t i = 1; i < d; ++i) ch.push_back(newId[static_cast<std::size_t>(nb[(ps + i) % d])]);
  }
  r.root = 0;
  tidy_rooted(r);
  return r;
}

std::vector<char> label_mask(const std::vector<Label>& labels, const std::vector<Label>& s,
                             ErrorCode onMissing) {
  std::vector<char> mask(labels.size(), 0);
  for (const auto& x : s) {
    auto it = std::lower_bound(labels.begin(), labels.end(), x);
    if (it == labels.end() || *it != x) throw Error(onMissing, "label " + x + " not in leaf set");
    mask[static_cast<std::size_t>(it - labels.begin())] = 1;
  }
  return mask;
}

// Applies masks over the full label space of `t`, rooted at leaf 0.
class RootedSession {
 public:
  explicit RootedSession(const PQTree& t) : labels_(t.labels()) {
    if (t.leaf_count() >= 3) r_ = rooted_view(t, 0);
    trivial_ = t.leaf_count() < 4;
  }

  bool apply(const std::vector<char>& full) {
    if (trivial_ || failed_) return !failed_;
    const std::size_t n = labels_.size();
    std::size_t c = 0;
    for (char x : full) c += x != 0;
    if (c <= 1 || c >= n - 1) return true;
    const bool flip = full[0] != 0;
    std::vector<char> m(n - 1);
    for (std::size_t i = 1; i < n; ++i) m[i - 1] = static_cast<char>((full[i] != 0) != flip);
    if (!reduce_rooted_mask(r_, m)) failed_ = true;
    return !failed_;
  }

  bool failed() const { return failed_; }

  PQTree result(const PQTree& original) {
    if (failed_) return PQTree::null_tree(labels_);
    if (trivial_) return original;
    tidy_rooted(r_);
    return unroot(r_, labels_.front());
  }

 private:
  std::vector<Label> labels_;
  RootedPQTree r_;
  bool trivial_ = false;
  bool failed_ = false;
};

}  // namespace

void tidy_rooted(RootedPQTree& t) {
  if (t.root < 0) return;
  auto order = reachable(t);
  std::vector<int> newId(t.nodes.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) newId[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<RootedPQTree::Node> nodes;
  nodes.reserve(order.size());
  for (int v : order) {
    auto nd = t.nodes[static_cast<std::size_t>(v)];
    for (int& c : nd.children) c = newId[static_cast<std::size_t>(c)];
    if (nd.kind == NodeKind::Q && nd.children.size() <= 2) nd.kind = NodeKind::P;
    nodes.push_back(std::move(nd));
  }
  t.nodes = std::move(nodes);
  t.root = 0;
}

bool reduce_rooted_mask(RootedPQTree& t, const std::vector<char>& inS) {
  if (t.variant == Variant::Null) return false;
  if (t.variant == Variant::Empty || t.root < 0) return true;
  std::size_t before = t.nodes.size();
  Reducer red(t, inS);
  bool ok = red.run();
  if (ok && t.nodes.size() > 2 * before + 64) tidy_rooted(t);
  return ok;
}

bool reduce_rooted(RootedPQTree& t, const std::vector<Label>& s) {
  auto mask = label_mask(t.labels, s, ErrorCode::InvalidSubset);
  bool ok = reduce_rooted_mask(t, mask);
  if (ok) {
    tidy_rooted(t);
  } else {
    t.variant = Variant::Null;
    t.nodes.clear();
    t.root = -1;
  }
  return ok;
}

RootedPQTree root_at(const PQTree& t, const Label& special) {
  int idx = t.leaf_index(special);
  if (idx < 0) throw Error(ErrorCode::InvalidSpecialLeaf, "special leaf " + special + " not in tree");
  if (t.is_null()) {
    RootedPQTree r;
    r.variant = Variant::Null;
    for (const auto& l : t.labels())
      if (l != special) r.labels.push_back(l);
    return r;
  }
  return rooted_view(t, t.leaf_node(idx));
}

PQTree unroot(const RootedPQTree& t, const Label& special) {
  if (std::binary_search(t.labels.begin(), t.labels.end(), special))
    throw Error(ErrorCode::InvalidSpecialLeaf, "special leaf " + special + " already present");
  std::vector<Label> labels = t.labels;
  labels.insert(std::lower_bound(labels.begin(), labels.end(), special), special);
  if (t.variant == Variant::Null) return PQTree::null_tree(labels);
  const int specialLeaf = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), special) - labels.begin());
  auto remap = [&](int leaf) { return leaf >= specialLeaf ? leaf + 1 : leaf; };
  RawTree raw;
  if (t.variant == Variant::Empty || t.root < 0) {
    raw.nodes.push_back({NodeKind::Leaf, specialLeaf, {}});
    return canonicalize(raw, labels, nullptr).tree;
  }
  auto order = reachable(t);
  std::vector<int> id(t.nodes.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) id[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  raw.nodes.resize(order.size() + 1);
  const int sp = static_cast<int>(order.size());
  raw.nodes[static_cast<std::size_t>(sp)] = {NodeKind::Leaf, specialLeaf, {id[static_cast<std::size_t>(t.root)]}};
  raw.nodes[static_cast<std::size_t>(id[static_cast<std::size_t>(t.root)])].nbrs.push_back(sp);
  for (int v : order) {
    const auto& nd = t.nodes[static_cast<std::size_t>(v)];
    auto& rn = raw.nodes[static_cast<std::size_t>(id[static_cast<std::size_t>(v)])];
    rn.kind = nd.kind;
    rn.leaf = nd.kind == NodeKind::Leaf ? remap(nd.leaf) : -1;
    for (int c : nd.children) {
      rn.nbrs.push_back(id[static_cast<std::size_t>(c)]);
      raw.nodes[static_cast<std::size_t>(id[static_cast<std::size_t>(c)])].nbrs.insert(
          raw.nodes[static_cast<std::size_t>(id[static_cast<std::size_t>(c)])].nbrs.begin(),
          id[static_cast<std::size_t>(v)]);
    }
  }
  return canonicalize(raw, labels, nullptr).tree;
}

PQTree reduce(const PQTree& t, const std::vector<Label>& s) {
  auto mask = label_mask(t.labels(), s, ErrorCode::InvalidSubset);
  if (t.is_null()) return t;
  RootedSession session(t);
  session.apply(mask);
  return session.result(t);
}

PQTree from_consecutive_sets(const std::vector<Label>& leaves,
                             const std::vector<std::vector<Label>>& family) {
  PQTree u = PQTree::universal(leaves);
  RootedSession session(u);
  for (const auto& s : family) {
    auto mask = label_mask(u.labels(), s, ErrorCode::InvalidSubset);
    if (!session.apply(mask)) break;
  }
  return session.result(u);
}

PQTree intersect(const PQTree& a, const PQTree& b) {
  if (a.labels() != b.labels()) throw Error(ErrorCode::LeafMismatch, "intersection needs equal leaf sets");
  if (a.is_null()) return a;
  if (b.is_null()) return b;
  if (a.leaf_count() < 4) return a;
  // Reductions come from the tree with fewer inner nodes.
  const PQTree& src = a.inner_count() <= b.inner_count() ? a : b;
  const PQTree& dst = &src == &a ? b : a;
  if (src.is_star() && src.node(1).kind == NodeKind::P) return dst;
  RootedSession session(dst);
  const auto& nodes = src.nodes();
  const std::size_t n = src.labels().size();
  auto sz = subtree_sizes(src);
  std::vector<char> mask(n);
  auto subtree_mask = [&](int v, bool complement) {
    std::fill(mask.begin(), mask.end(), static_cast<char>(complement));
    for (int u = v; u < v + sz[static_cast<std::size_t>(v)]; ++u)
      if (nodes[static_cast<std::size_t>(u)].kind == NodeKind::Leaf)
        mask[static_cast<std::size_t>(nodes[static_cast<std::size_t>(u)].leaf)] = static_cast<char>(!complement);
  };
  for (std::size_t v = 2; v < nodes.size(); ++v) {
    if (nodes[v].kind == NodeKind::Leaf) continue;
    subtree_mask(static_cast<int>(v), false);
    if (!session.apply(mask)) return session.result(dst);
  }
  for (std::size_t v = 1; v < nodes.size(); ++v) {
    if (nodes[v].kind != NodeKind::Q) continue;
    const auto& nb = nodes[v].nbrs;
    const std::size_t d = nb.size();
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t j = (i + 1) % d;
      // Union of two consecutive directions; slot 0 is the parent side.
      std::fill(mask.begin(), mask.end(), 0);
      for (std::size_t s : {i, j}) {
        if (s == 0) {
          for (std::size_t u = 0; u < nodes.size(); ++u)
            if (nodes[u].kind == NodeKind::Leaf &&
                (static_cast<int>(u) < static_cast<int>(v) || static_cast<int>(u) >= static_cast<int>(v) + sz[v]))
              mask[static_cast<std::size_t>(nodes[u].leaf)] = 1;
        } else {
          int c = nb[s];
          for (int u = c; u < c + sz[static_cast<std::size_t>(c)]; ++u)
            if (nodes[static_cast<std::size_t>(u)].kind == NodeKind::Leaf)
              mask[static_cast<std::size_t>(nodes[static_cast<std::size_t>(u)].leaf)] = 1;
        }
      }
      if (!session.apply(mask)) return session.result(dst);
    }
  }
  return session.result(dst);
}

}  // namespace spqo
