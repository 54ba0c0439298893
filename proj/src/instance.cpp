#include "spqo/instance.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

std::vector<int> Instance::out_arcs(int tree) const {
  std::vector<int> out;
  for (std::size_t a = 0; a < arcs.size(); ++a)
    if (arcs[a].source == tree) out.push_back(static_cast<int>(a));
  return out;
}

std::vector<int> Instance::in_arcs(int tree) const {
  std::vector<int> out;
  for (std::size_t a = 0; a < arcs.size(); ++a)
    if (arcs[a].target == tree) out.push_back(static_cast<int>(a));
  return out;
}

std::vector<std::vector<int>> Instance::out_adjacency() const {
  std::vector<std::vector<int>> adj(trees.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) adj[static_cast<std::size_t>(arcs[a].source)].push_back(static_cast<int>(a));
  return adj;
}

std::vector<std::vector<int>> Instance::in_adjacency() const {
  std::vector<std::vector<int>> adj(trees.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) adj[static_cast<std::size_t>(arcs[a].target)].push_back(static_cast<int>(a));
  return adj;
}

std::vector<int> topological_order(const Instance& d) {
  const std::size_t n = d.trees.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (const auto& a : d.arcs) {
    succ[static_cast<std::size_t>(a.source)].push_back(a.target);
    ++indeg[static_cast<std::size_t>(a.target)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(static_cast<int>(v));
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (order.size() != n) throw Error(ErrorCode::CyclicDAG, "arcs contain a directed cycle");
  return order;
}

Instance build_instance(std::vector<PQTree> trees, std::vector<Arc> arcs) {
  Instance d{std::move(trees), std::move(arcs)};
  const int n = static_cast<int>(d.trees.size());
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    const auto& a = d.arcs[i];
    const std::string where = "arc " + std::to_string(i);
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
      throw Error(ErrorCode::InputError, where + " refers to a missing tree");
    if (a.source == a.target) throw Error(ErrorCode::CyclicDAG, where + " is a self loop");
    const auto& src = d.trees[static_cast<std::size_t>(a.source)];
    const auto& tgt = d.trees[static_cast<std::size_t>(a.target)];
    std::set<Label> images;
    for (const auto& l : tgt.labels()) {
      auto it = a.map.find(l);
      if (it == a.map.end()) throw Error(ErrorCode::InvalidMap, where + " does not map leaf " + l);
      if (src.leaf_index(it->second) < 0)
        throw Error(ErrorCode::InvalidMap, where + " maps " + l + " to unknown leaf " + it->second);
      if (!images.insert(it->second).second) throw Error(ErrorCode::InvalidMap, where + " is not injective");
    }
    if (a.map.size() != tgt.labels().size())
      throw Error(ErrorCode::InvalidMap, where + " maps labels that are not target leaves");
  }
  topological_order(d);
  return d;
}

std::size_t instance_size(const Instance& d) {
  std::size_t s = 0;
  for (const auto& t : d.trees) s += t.size();
  for (const auto& a : d.arcs) s += d.trees[static_cast<std::size_t>(a.target)].leaf_count();
  return s;
}

namespace {

std::vector<Label> image_labels(const Arc& a) {
  std::vector<Label> img;
  img.reserve(a.map.size());
  for (const auto& [from, to] : a.map) img.push_back(to);
  std::sort(img.begin(), img.end());
  return img;
}

LabelMap inverse_map(const LabelMap& m) {
  LabelMap inv;
  for (const auto& [from, to] : m) inv.emplace(to, from);
  return inv;
}

}  // namespace

ArcInfo analyze_arc(const Instance& d, int arc) {
  const Arc& a = d.arcs.at(static_cast<std::size_t>(arc));
  const PQTree& src = d.trees[static_cast<std::size_t>(a.source)];
  ArcInfo info;
  info.proj = project_with_info(src, image_labels(a));
  info.childView = relabel_with_info(d.trees[static_cast<std::size_t>(a.target)], a.map);
  if (info.childView.tree.variant() == Variant::Normal) {
    MedianIndex idx(info.childView.tree);
    info.fixedness = classify_from_projection(src, info.proj, info.childView.tree, idx, &info.childView);
  } else {
    info.fixedness = classify_from_projection(src, info.proj, info.childView.tree, MedianIndex(PQTree{}));
  }
  return info;
}

NormalizedInstance normalize(const Instance& d) {
  NormalizedInstance out;
  out.instance = d;
  auto& inst = out.instance;
  const auto ins = inst.in_adjacency();
  for (int t : topological_order(inst)) {
    auto& tree = inst.trees[static_cast<std::size_t>(t)];
    for (int ai : ins[static_cast<std::size_t>(t)]) {
      const Arc& a = inst.arcs[static_cast<std::size_t>(ai)];
      PQTree proj = project(inst.trees[static_cast<std::size_t>(a.source)], image_labels(a));
      PQTree pulled = relabel(proj, inverse_map(a.map));
      tree = intersect(tree, pulled);
    }
  }
  out.arcInfo.reserve(inst.arcs.size());
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) out.arcInfo.push_back(analyze_arc(inst, static_cast<int>(a)));
  return out;
}

FixednessMap fixedness(const NormalizedInstance& n) {
  const Instance& d = n.instance;
  FixednessMap fm;
  fm.value.resize(d.trees.size());
  for (std::size_t t = 0; t < d.trees.size(); ++t) {
    const auto& tree = d.trees[t];
    fm.value[t].assign(tree.nodes().size(), -1);
    if (tree.variant() != Variant::Normal) continue;
    for (std::size_t v = 0; v < tree.nodes().size(); ++v)
      if (tree.is_branching_pnode(static_cast<int>(v))) fm.value[t][v] = 0;
  }
  const auto outs = d.out_adjacency(), ins = d.in_adjacency();
  for (int t : topological_order(d)) {
    const auto& tree = d.trees[static_cast<std::size_t>(t)];
    if (tree.variant() != Variant::Normal) continue;
    auto& val = fm.value[static_cast<std::size_t>(t)];
    // k': children fixing the node
    for (int ai : outs[static_cast<std::size_t>(t)]) {
      const auto& rep = n.arcInfo[static_cast<std::size_t>(ai)].fixedness;
      for (std::size_t v = 0; v < val.size(); ++v)
        if (val[v] >= 0 && rep.nodes[v].fixed) ++val[v];
    }
    // sum over parents of (fixed(mu_i) - 1), mu_i the P-node mu stems from
    for (int ai : ins[static_cast<std::size_t>(t)]) {
      const Arc& a = d.arcs[static_cast<std::size_t>(ai)];
      const auto& info = n.arcInfo[static_cast<std::size_t>(ai)];
      const PQTree& proj = info.proj.tree;
      if (proj.variant() != Variant::Normal) continue;
      MedianIndex projIdx(proj);
      const auto& parentVal = fm.value[static_cast<std::size_t>(a.source)];
      for (std::size_t v = 0; v < val.size(); ++v) {
        if (val[v] < 0) continue;
        int probe[3];
        for (int s = 0; s < 3; ++s) {
          int leaf = some_leaf_in_direction(tree, static_cast<int>(v), s);
          const Label& own = tree.labels()[static_cast<std::size_t>(tree.node(leaf).leaf)];
          probe[s] = proj.leaf_node(a.map.at(own));
        }
        int m = projIdx.median(probe[0], probe[1], probe[2]);
        int origin = info.proj.origin[static_cast<std::size_t>(m)];
        int pv = parentVal[static_cast<std::size_t>(origin)];
        if (pv > 0) val[v] += pv - 1;
      }
    }
  }
  for (const auto& row : fm.value)
    for (int x : row) fm.maxValue = std::max(fm.maxValue, x);
  fm.twoFixed = fm.maxValue <= 2;
  return fm;
}

Instance reduce_cyclic_ordering(const std::vector<Label>& leaves,
                                const std::vector<std::array<Label, 3>>& triples) {
  std::vector<PQTree> trees;
  std::vector<Arc> arcs;
  trees.push_back(PQTree::universal(leaves));
  const std::vector<Label> sinkLabels{"1", "2", "3"};
  for (const auto& tr : triples) {
    if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
      throw Error(ErrorCode::InvalidTriple, "triple repeats a label");
    for (const auto& l : tr)
      if (trees[0].leaf_index(l) < 0) throw Error(ErrorCode::InvalidTriple, "triple label " + l + " not in L");
  }
  const int sink = static_cast<int>(triples.size()) + 1;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& tr = triples[i];
    trees.push_back(PQTree::universal({tr[0], tr[1], tr[2]}));
    const int id = static_cast<int>(i) + 1;
    arcs.push_back({0, id, {{tr[0], tr[0]}, {tr[1], tr[1]}, {tr[2], tr[2]}}, false});
    arcs.push_back({id, sink, {{"1", tr[0]}, {"2", tr[1]}, {"3", tr[2]}}, false});
  }
  trees.push_back(PQTree::universal(sinkLabels));
  // keep arcs grouped: first every arc out of the star, then the sink arcs
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return (x.source == 0) > (y.source == 0); });
  return build_instance(std::move(trees), std::move(arcs));
}

}  // namespace spqo
