#include "spqo/embedding.hpp"

#include <algorithm>
#include <set>

#include "spqo/errors.hpp"

namespace spqo {

namespace {

// Everything an SPQR-tree says about the rotation at one vertex.
struct VertexView {
  PQTree tree;
  std::map<std::pair<int, int>, Label> rep;  // (node, skeleton edge) -> smallest leaf behind it
};

// Skeleton edges of `node` incident to vertex v, in rotation order for R-nodes.
std::vector<int> edges_at(const SpqrNode& node, int v) {
  if (node.kind == SpqrKind::R) {
    auto it = std::lower_bound(node.vertices.begin(), node.vertices.end(), v);
    return node.rotation[static_cast<std::size_t>(it - node.vertices.begin())];
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < node.edges.size(); ++i)
    if (node.edges[i].u == v || node.edges[i].v == v) out.push_back(static_cast<int>(i));
  return out;
}

bool contains(const SpqrNode& node, int v) { return std::binary_search(node.vertices.begin(), node.vertices.end(), v); }

// `edgeLabel[e]` names real edge e of the (block) graph.
std::vector<VertexView> vertex_views(const Graph& g, const SpqrTree& t, const std::vector<Label>& edgeLabel) {
  std::vector<VertexView> views(static_cast<std::size_t>(g.vertex_count()));
  const auto inc = g.incidence();
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto& view = views[static_cast<std::size_t>(v)];
    std::vector<Label> leaves;
    for (int e : inc[static_cast<std::size_t>(v)]) leaves.push_back(edgeLabel[static_cast<std::size_t>(e)]);
    std::sort(leaves.begin(), leaves.end());
    // leaves behind skeleton edge (node, edge) seen from v
    std::map<std::pair<int, int>, std::vector<Label>> side;
    auto behind = [&](auto&& self, int node, int edge) -> const std::vector<Label>& {
      auto key = std::make_pair(node, edge);
      auto it = side.find(key);
      if (it != side.end()) return it->second;
      std::vector<Label> out;
      const auto& se = t.nodes[static_cast<std::size_t>(node)].edges[static_cast<std::size_t>(edge)];
      if (se.real >= 0) {
        out.push_back(edgeLabel[static_cast<std::size_t>(se.real)]);
      } else {
        const auto& twin = t.nodes[static_cast<std::size_t>(se.twinNode)];
        for (int f : edges_at(twin, v)) {
          if (f == se.twinEdge) continue;
          const auto& sub = self(self, se.twinNode, f);
          out.insert(out.end(), sub.begin(), sub.end());
        }
      }
      std::sort(out.begin(), out.end());
      return side.emplace(key, std::move(out)).first->second;
    };
    std::vector<std::vector<Label>> family;
    for (std::size_t n = 0; n < t.nodes.size(); ++n) {
      const auto& node = t.nodes[n];
      if (!contains(node, v)) continue;
      auto dirs = edges_at(node, v);
      std::vector<std::vector<Label>> sets;
      for (int e : dirs) {
        sets.push_back(behind(behind, static_cast<int>(n), e));
        view.rep[{static_cast<int>(n), e}] = sets.back().front();
        family.push_back(sets.back());
      }
      if (node.kind == SpqrKind::R)
        for (std::size_t i = 0; i < sets.size(); ++i) {
          auto u = sets[i];
          const auto& nx = sets[(i + 1) % sets.size()];
          u.insert(u.end(), nx.begin(), nx.end());
          std::sort(u.begin(), u.end());
          family.push_back(std::move(u));
        }
    }
    view.tree = from_consecutive_sets(leaves, family);
    if (view.tree.is_null()) throw Error(ErrorCode::InternalInconsistency, "embedding tree of " + g.names[static_cast<std::size_t>(v)] + " is null");
  }
  return views;
}

std::vector<Label> identity_labels(const Graph& g) {
  std::vector<Label> out;
  for (int e = 0; e < g.edge_count(); ++e) out.push_back(edge_label(e));
  return out;
}

LabelMap identity_map(const std::vector<Label>& labels) {
  LabelMap m;
  for (const auto& l : labels) m[l] = l;
  return m;
}

// Adds block trees and consistency trees for one block; returns the block
// tree per global vertex of the block (-1 below block degree 3).
std::map<int, int> add_block(const Graph& g, const std::vector<int>& blockEdges, std::vector<PQTree>& trees,
                             std::vector<Arc>& arcs, std::vector<int>& consistency) {
  Graph sub;
  std::vector<int> globalVertex;
  std::vector<Label> labels;
  for (int e : blockEdges) {
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    int a = sub.add_vertex(g.names[static_cast<std::size_t>(u)]);
    if (a == static_cast<int>(globalVertex.size())) globalVertex.push_back(u);
    int b = sub.add_vertex(g.names[static_cast<std::size_t>(v)]);
    if (b == static_cast<int>(globalVertex.size())) globalVertex.push_back(v);
    sub.add_edge(a, b);
    labels.push_back(edge_label(e));
  }
  const SpqrTree spqr = spqr_tree(sub);
  const auto views = vertex_views(sub, spqr, labels);
  std::map<int, int> blockTree;
  std::vector<int> localTree(views.size(), -1);
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].tree.leaf_count() < 3) continue;
    localTree[v] = static_cast<int>(trees.size());
    blockTree[globalVertex[v]] = localTree[v];
    trees.push_back(views[v].tree);
  }
  for (std::size_t n = 0; n < spqr.nodes.size(); ++n) {
    const auto& node = spqr.nodes[n];
    if (node.kind == SpqrKind::R) {
      const int id = static_cast<int>(trees.size());
      trees.push_back(PQTree::universal({"1", "2", "3"}));
      consistency.push_back(id);
      for (std::size_t i = 0; i < node.vertices.size(); ++i) {
        const int v = node.vertices[i];
        const auto& rot = node.rotation[i];
        Arc a{localTree[static_cast<std::size_t>(v)], id, {}, false};
        for (int k = 0; k < 3; ++k)
          a.map[std::to_string(k + 1)] = views[static_cast<std::size_t>(v)].rep.at({static_cast<int>(n), rot[static_cast<std::size_t>(k)]});
        arcs.push_back(std::move(a));
      }
    } else if (node.kind == SpqrKind::P) {
      const int id = static_cast<int>(trees.size());
      std::vector<Label> own;
      for (std::size_t k = 0; k < node.edges.size(); ++k) own.push_back(std::to_string(k + 1));
      trees.push_back(PQTree::universal(own));
      consistency.push_back(id);
      for (int pole = 0; pole < 2; ++pole) {
        const int v = node.vertices[static_cast<std::size_t>(pole)];
        Arc a{localTree[static_cast<std::size_t>(v)], id, {}, pole == 1};
        for (std::size_t k = 0; k < node.edges.size(); ++k)
          a.map[own[k]] = views[static_cast<std::size_t>(v)].rep.at({static_cast<int>(n), static_cast<int>(k)});
        arcs.push_back(std::move(a));
      }
    }
  }
  return blockTree;
}

std::vector<Label> labels_of(const std::vector<int>& edges) {
  std::vector<Label> out;
  for (int e : edges) out.push_back(edge_label(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<PQTree> embedding_trees(const Graph& g, const SpqrTree& spqr) {
  std::vector<PQTree> out;
  for (auto& v : vertex_views(g, spqr, identity_labels(g))) out.push_back(std::move(v.tree));
  return out;
}

EmbeddingRepresentation pq_embedding_representation(const Graph& g) {
  if (!is_biconnected(g)) throw Error(ErrorCode::NotBiconnected, "graph is not biconnected");
  return generalize_cutvertices(g);
}

EmbeddingRepresentation generalize_cutvertices(const Graph& g) {
  const auto blocks = biconnected_components(g);
  const auto inc = g.incidence();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> vertexBlocks(n);  // non-trivial blocks per vertex
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() < 2) continue;
    std::set<int> vs;
    for (int e : blocks[b]) {
      vs.insert(g.edges[static_cast<std::size_t>(e)].first);
      vs.insert(g.edges[static_cast<std::size_t>(e)].second);
    }
    for (int v : vs) vertexBlocks[static_cast<std::size_t>(v)].push_back(static_cast<int>(b));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (vertexBlocks[v].size() > 2)
      throw Error(ErrorCode::NotSupported, "cutvertex " + g.names[v] + " lies in " + std::to_string(vertexBlocks[v].size()) +
                                               " blocks that are not bridges");
  EmbeddingRepresentation rep;
  std::vector<PQTree> trees;
  std::vector<Arc> arcs;
  std::vector<std::map<int, int>> blockTree(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].size() >= 2) blockTree[b] = add_block(g, blocks[b], trees, arcs, rep.consistencyTrees);
  rep.vertexTree.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& iv = inc[v];
    if (iv.size() < 3) continue;
    const auto all = labels_of(iv);
    std::size_t blockEdges = 0;
    std::vector<std::vector<int>> parts;
    for (int b : vertexBlocks[v]) {
      std::vector<int> part;
      for (int e : iv)
        if (std::binary_search(blocks[static_cast<std::size_t>(b)].begin(), blocks[static_cast<std::size_t>(b)].end(), e))
          part.push_back(e);
      blockEdges += part.size();
      parts.push_back(std::move(part));
    }
    const bool bridges = blockEdges < iv.size();
    auto child_tree = [&](std::size_t k) {
      const auto& bt = blockTree[static_cast<std::size_t>(vertexBlocks[v][k])];
      auto it = bt.find(static_cast<int>(v));
      return it == bt.end() ? -1 : it->second;
    };
    int top = -1;
    if (parts.size() == 1 && !bridges) {
      top = child_tree(0);
    } else {
      int under = -1;  // tree over the block edges below the bridge star
      if (parts.size() == 1) {
        under = child_tree(0);
      } else if (parts.size() == 2) {
        std::vector<int> both = parts[0];
        both.insert(both.end(), parts[1].begin(), parts[1].end());
        under = static_cast<int>(trees.size());
        trees.push_back(from_consecutive_sets(labels_of(both), {labels_of(parts[0])}));
        for (std::size_t k = 0; k < 2; ++k) {
          int child = child_tree(k);
          if (child >= 0) arcs.push_back({under, child, identity_map(trees[static_cast<std::size_t>(child)].labels()), false});
        }
      }
      if (!bridges) {
        top = under;
      } else {
        top = static_cast<int>(trees.size());
        trees.push_back(PQTree::universal(all));
        if (under >= 0) arcs.push_back({top, under, identity_map(trees[static_cast<std::size_t>(under)].labels()), false});
      }
    }
    rep.vertexTree[v] = top;
  }
  rep.instance = build_instance(std::move(trees), std::move(arcs));
  return rep;
}

RotationSystem rotation_from_solution(const Graph& g, const EmbeddingRepresentation& rep, const Solution& s) {
  const auto inc = g.incidence();
  RotationSystem rot(inc.size());
  for (std::size_t v = 0; v < inc.size(); ++v) {
    const int t = rep.vertexTree[v];
    if (t < 0) {
      rot[v] = inc[v];
      continue;
    }
    for (const auto& l : s.orders.at(t).seq()) rot[v].push_back(std::stoi(l));
  }
  if (!is_planar_rotation(g, rot)) throw Error(ErrorCode::PlanarityCheckFailed, "rotation system fails the Euler check");
  return rot;
}

namespace {

std::string reason_of(const SolveResult& r) {
  if (r.status == SolveStatus::NotSupported) return "NotOneCritical";
  return to_string(r.reason);
}

}  // namespace

PlanarityResult solve_partially_pq_constrained(const Graph& g, const std::map<int, PQTree>& constraints) {
  PlanarityResult out;
  EmbeddingRepresentation rep;
  try {
    rep = generalize_cutvertices(g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPlanar) {
      out.status = SolveStatus::Infeasible;
      out.reason = "NotPlanar";
      return out;
    }
    if (e.code() == ErrorCode::NotSupported) {
      out.status = SolveStatus::NotSupported;
      out.reason = e.what();
      return out;
    }
    throw;
  }
  const auto inc = g.incidence();
  for (const auto& [v, tree] : constraints) {
    if (v < 0 || v >= g.vertex_count()) throw Error(ErrorCode::InputError, "constraint for unknown vertex");
    const auto own = labels_of(inc[static_cast<std::size_t>(v)]);
    for (const auto& l : tree.labels())
      if (!std::binary_search(own.begin(), own.end(), l))
        throw Error(ErrorCode::InputError, "constraint leaf " + l + " is not an edge at " + g.names[static_cast<std::size_t>(v)]);
    if (tree.is_null()) {
      out.status = SolveStatus::Infeasible;
      out.reason = "NullTree";
      return out;
    }
    const int parent = rep.vertexTree[static_cast<std::size_t>(v)];
    if (parent < 0 || tree.leaf_count() < 3) continue;  // at most two edges: every order works
    rep.instance.trees.push_back(tree);
    rep.instance.arcs.push_back({parent, static_cast<int>(rep.instance.trees.size()) - 1, identity_map(tree.labels()), false});
  }
  auto res = solve(rep.instance);
  out.status = res.status;
  out.twoFixed = res.twoFixed;
  if (res.status != SolveStatus::Feasible) {
    out.reason = reason_of(res);
    return out;
  }
  out.rotation = rotation_from_solution(g, rep, res.solution);
  return out;
}

std::vector<std::pair<int, int>> common_edges(const Graph& g1, const Graph& g2) {
  std::map<std::pair<std::string, std::string>, int> second;
  for (int e = 0; e < g2.edge_count(); ++e) {
    auto [u, v] = g2.edges[static_cast<std::size_t>(e)];
    second[std::minmax(g2.names[static_cast<std::size_t>(u)], g2.names[static_cast<std::size_t>(v)])] = e;
  }
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < g1.edge_count(); ++e) {
    auto [u, v] = g1.edges[static_cast<std::size_t>(e)];
    auto it = second.find(std::minmax(g1.names[static_cast<std::size_t>(u)], g1.names[static_cast<std::size_t>(v)]));
    if (it != second.end()) out.emplace_back(e, it->second);
  }
  return out;
}

namespace {

// Common edges at each shared vertex: (vertex in g1, vertex in g2, edge pairs).
struct SharedVertex {
  int v1, v2;
  std::vector<std::pair<int, int>> edges;
};

std::vector<SharedVertex> shared_vertices(const Graph& g1, const Graph& g2) {
  const auto common = common_edges(g1, g2);
  std::vector<SharedVertex> out;
  for (int v1 = 0; v1 < g1.vertex_count(); ++v1) {
    int v2 = g2.find(g1.names[static_cast<std::size_t>(v1)]);
    if (v2 < 0) continue;
    SharedVertex sv{v1, v2, {}};
    for (const auto& [e1, e2] : common) {
      auto [a, b] = g1.edges[static_cast<std::size_t>(e1)];
      if (a == v1 || b == v1) sv.edges.emplace_back(e1, e2);
    }
    out.push_back(std::move(sv));
  }
  return out;
}

bool common_graph_connected(const Graph& g1, const Graph& g2) {
  Graph c;
  for (const auto& sv : shared_vertices(g1, g2)) c.add_vertex(g1.names[static_cast<std::size_t>(sv.v1)]);
  for (const auto& [e1, e2] : common_edges(g1, g2)) {
    auto [u, v] = g1.edges[static_cast<std::size_t>(e1)];
    c.add_edge(c.find(g1.names[static_cast<std::size_t>(u)]), c.find(g1.names[static_cast<std::size_t>(v)]));
  }
  return is_connected(c);
}

}  // namespace

SefeResult solve_sefe(const Graph& g1, const Graph& g2) {
  SefeResult out;
  if (!common_graph_connected(g1, g2)) {
    out.status = SolveStatus::NotSupported;
    out.reason = "common graph is not connected";
    return out;
  }
  EmbeddingRepresentation r1, r2;
  try {
    r1 = generalize_cutvertices(g1);
    r2 = generalize_cutvertices(g2);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPlanar) {
      out.status = SolveStatus::Infeasible;
      out.reason = "NotPlanar";
      return out;
    }
    if (e.code() == ErrorCode::NotSupported) {
      out.status = SolveStatus::NotSupported;
      out.reason = e.what();
      return out;
    }
    throw;
  }
  Instance d = r1.instance;
  const int offset = static_cast<int>(d.trees.size());
  for (const auto& t : r2.instance.trees) d.trees.push_back(t);
  for (auto a : r2.instance.arcs) {
    a.source += offset;
    a.target += offset;
    d.arcs.push_back(std::move(a));
  }
  for (const auto& sv : shared_vertices(g1, g2)) {
    if (sv.edges.size() < 3) continue;
    const int t1 = r1.vertexTree[static_cast<std::size_t>(sv.v1)];
    const int t2 = r2.vertexTree[static_cast<std::size_t>(sv.v2)] + offset;
    std::vector<Label> l1, l2;
    LabelMap toSecond;  // label in g1 -> label in g2
    LabelMap back;
    for (const auto& [e1, e2] : sv.edges) {
      l1.push_back(edge_label(e1));
      l2.push_back(edge_label(e2));
      toSecond[edge_label(e1)] = edge_label(e2);
      back[edge_label(e2)] = edge_label(e1);
    }
    std::sort(l1.begin(), l1.end());
    std::sort(l2.begin(), l2.end());
    PQTree common = intersect(project(d.trees[static_cast<std::size_t>(t1)], l1),
                              relabel(project(d.trees[static_cast<std::size_t>(t2)], l2), back));
    d.trees.push_back(common);
    const int id = static_cast<int>(d.trees.size()) - 1;
    d.arcs.push_back({t1, id, identity_map(l1), false});
    d.arcs.push_back({t2, id, toSecond, false});
  }
  d = build_instance(std::move(d.trees), std::move(d.arcs));
  auto res = solve(d);
  out.status = res.status;
  out.twoFixed = res.twoFixed;
  if (res.status != SolveStatus::Feasible) {
    out.reason = reason_of(res);
    return out;
  }
  Solution s1, s2;
  for (const auto& [t, o] : res.solution.orders) {
    if (t < offset) {
      s1.orders[t] = o;
    } else if (t < offset + static_cast<int>(r2.instance.trees.size())) {
      s2.orders[t - offset] = o;
    }
  }
  out.first = rotation_from_solution(g1, r1, s1);
  out.second = rotation_from_solution(g2, r2, s2);
  return out;
}

bool verify_sefe(const Graph& g1, const Graph& g2, const RotationSystem& r1, const RotationSystem& r2) {
  if (!is_planar_rotation(g1, r1) || !is_planar_rotation(g2, r2)) return false;
  for (const auto& sv : shared_vertices(g1, g2)) {
    std::map<int, Label> name1, name2;  // edge -> shared key
    for (const auto& [e1, e2] : sv.edges) {
      name1[e1] = name2[e2] = edge_label(e1);
    }
    std::vector<Label> a, b;
    for (int e : r1[static_cast<std::size_t>(sv.v1)])
      if (name1.count(e)) a.push_back(name1[e]);
    for (int e : r2[static_cast<std::size_t>(sv.v2)])
      if (name2.count(e)) b.push_back(name2[e]);
    if (CircularOrder(a) != CircularOrder(b)) return false;
  }
  return true;
}

}  // namespace spqo
