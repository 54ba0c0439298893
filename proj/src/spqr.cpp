#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>

#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

// Edge of a split component under construction. Virtual edges carry the id
// shared with their twin.
struct WEdge {
  int u, v;
  int real;
  int vid;
};

using Component = std::vector<WEdge>;

std::vector<int> vertices_of(const Component& c) {
  std::set<int> vs;
  for (const auto& e : c) {
    vs.insert(e.u);
    vs.insert(e.v);
  }
  return {vs.begin(), vs.end()};
}

// Articulation points of the multigraph `c` without vertex `removed`.
std::vector<int> articulation_points(const Component& c, int removed) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbour, edge index)
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c[i];
    if (e.u == removed || e.v == removed) continue;
    adj[e.u].emplace_back(e.v, static_cast<int>(i));
    adj[e.v].emplace_back(e.u, static_cast<int>(i));
  }
  std::vector<int> out;
  if (adj.empty()) return out;
  std::map<int, int> disc, low;
  int time = 0;
  struct Frame {
    int v, parentEdge;
    std::size_t pos;
    int children;
  };
  const int root = adj.begin()->first;
  std::vector<Frame> stack{{root, -1, 0, 0}};
  disc[root] = low[root] = time++;
  std::set<int> art;
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto& nb = adj[f.v];
    if (f.pos < nb.size()) {
      auto [w, ei] = nb[f.pos++];
      if (ei == f.parentEdge) continue;
      if (!disc.count(w)) {
        disc[w] = low[w] = time++;
        ++f.children;
        stack.push_back({w, ei, 0, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const int v = f.v, children = f.children;
    stack.pop_back();
    if (stack.empty()) {
      if (children >= 2) art.insert(v);
      break;
    }
    const int u = stack.back().v;
    low[u] = std::min(low[u], low[v]);
    if (u != root && low[v] >= disc[u]) art.insert(u);
  }
  return {art.begin(), art.end()};
}

enum class Kind { Bond, Polygon, Rigid };

struct Done {
  Component edges;
  Kind kind;
};

}  // namespace

SpqrTree spqr_tree(const Graph& g) {
  if (!is_biconnected(g)) throw Error(ErrorCode::NotBiconnected, "SPQR-tree needs a biconnected graph with at least three vertices");
  std::vector<Component> work(1);
  for (int e = 0; e < g.edge_count(); ++e)
    work[0].push_back({g.edges[static_cast<std::size_t>(e)].first, g.edges[static_cast<std::size_t>(e)].second, e, -1});
  std::vector<Done> done;
  int nextVid = 0;
  while (!work.empty()) {
    Component c = std::move(work.back());
    work.pop_back();
    const auto vs = vertices_of(c);
    if (vs.size() == 2) {
      done.push_back({std::move(c), Kind::Bond});
      continue;
    }
    // split off bundles of parallel edges
    std::map<std::pair<int, int>, std::vector<std::size_t>> bundles;
    for (std::size_t i = 0; i < c.size(); ++i) bundles[std::minmax(c[i].u, c[i].v)].push_back(i);
    bool split = false;
    for (const auto& [key, idx] : bundles) {
      if (idx.size() < 2) continue;
      Component bond, rest;
      std::set<std::size_t> in(idx.begin(), idx.end());
      for (std::size_t i = 0; i < c.size(); ++i) (in.count(i) ? bond : rest).push_back(c[i]);
      const int vid = nextVid++;
      bond.push_back({key.first, key.second, -1, vid});
      rest.push_back({key.first, key.second, -1, vid});
      work.push_back(std::move(rest));
      work.push_back(std::move(bond));
      split = true;
      break;
    }
    if (split) continue;
    std::map<int, int> degree;
    for (const auto& e : c) {
      ++degree[e.u];
      ++degree[e.v];
    }
    if (std::all_of(degree.begin(), degree.end(), [](const auto& d) { return d.second == 2; })) {
      done.push_back({std::move(c), Kind::Polygon});
      continue;
    }
    // separation pair {a, b}: b is an articulation point of c - a
    for (int a : vs) {
      auto arts = articulation_points(c, a);
      if (arts.empty()) continue;
      const int b = arts.front();
      // component of c - {a, b} holding the smallest remaining vertex
      std::map<int, std::vector<int>> adj;
      for (const auto& e : c) {
        if (e.u == a || e.u == b || e.v == a || e.v == b) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
      int start = -1;
      for (int v : vs)
        if (v != a && v != b) {
          start = v;
          break;
        }
      std::set<int> side{start};
      std::vector<int> stack{start};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (side.insert(w).second) stack.push_back(w);
      }
      Component first, rest;
      for (const auto& e : c) (side.count(e.u) || side.count(e.v) ? first : rest).push_back(e);
      const int vid = nextVid++;
      first.push_back({a, b, -1, vid});
      rest.push_back({a, b, -1, vid});
      work.push_back(std::move(rest));
      work.push_back(std::move(first));
      split = true;
      break;
    }
    if (!split) done.push_back({std::move(c), Kind::Rigid});
  }
  // merge bonds with bonds and polygons with polygons along shared virtual edges
  std::vector<int> parent(done.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto findRoot = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::map<int, std::vector<int>> vidOwners;
  for (std::size_t i = 0; i < done.size(); ++i)
    for (const auto& e : done[i].edges)
      if (e.vid >= 0) vidOwners[e.vid].push_back(static_cast<int>(i));
  std::set<int> internal;
  for (const auto& [vid, owners] : vidOwners) {
    const auto& x = done[static_cast<std::size_t>(owners[0])];
    const auto& y = done[static_cast<std::size_t>(owners[1])];
    if (x.kind == y.kind && x.kind != Kind::Rigid) {
      internal.insert(vid);
      parent[static_cast<std::size_t>(findRoot(owners[0]))] = findRoot(owners[1]);
    }
  }
  std::map<int, int> groupIndex;
  std::vector<Done> groups;
  for (std::size_t i = 0; i < done.size(); ++i) {
    int r = findRoot(static_cast<int>(i));
    auto [it, inserted] = groupIndex.emplace(r, static_cast<int>(groups.size()));
    if (inserted) groups.push_back({{}, done[i].kind});
    for (const auto& e : done[i].edges)
      if (e.vid < 0 || !internal.count(e.vid)) groups[static_cast<std::size_t>(it->second)].edges.push_back(e);
  }
  // order nodes by their smallest real edge, then by first vertex, for stable output
  auto key = [](const Done& d) {
    int minReal = INT_MAX;
    for (const auto& e : d.edges)
      if (e.real >= 0) minReal = std::min(minReal, e.real);
    return std::make_pair(minReal, vertices_of(d.edges));
  };
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(groups[x]) < key(groups[y]); });
  SpqrTree t;
  std::map<int, std::vector<std::pair<int, int>>> occurrences;  // vid -> (node, edge)
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    auto& grp = groups[order[pos]];
    // real edges first by id, then virtual edges by endpoints
    std::stable_sort(grp.edges.begin(), grp.edges.end(), [](const WEdge& x, const WEdge& y) {
      bool rx = x.real >= 0, ry = y.real >= 0;
      if (rx != ry) return rx;
      if (rx) return x.real < y.real;
      return std::minmax(x.u, x.v) < std::minmax(y.u, y.v);
    });
    SpqrNode node;
    node.kind = grp.kind == Kind::Bond ? SpqrKind::P : grp.kind == Kind::Polygon ? SpqrKind::S : SpqrKind::R;
    node.vertices = vertices_of(grp.edges);
    for (std::size_t i = 0; i < grp.edges.size(); ++i) {
      const auto& e = grp.edges[i];
      node.edges.push_back({e.u, e.v, e.real, -1, -1});
      if (e.vid >= 0) occurrences[e.vid].emplace_back(static_cast<int>(pos), static_cast<int>(i));
    }
    t.nodes.push_back(std::move(node));
  }
  for (const auto& [vid, occ] : occurrences) {
    if (occ.size() != 2) throw Error(ErrorCode::InternalInconsistency, "virtual edge without a unique twin");
    auto& x = t.nodes[static_cast<std::size_t>(occ[0].first)].edges[static_cast<std::size_t>(occ[0].second)];
    auto& y = t.nodes[static_cast<std::size_t>(occ[1].first)].edges[static_cast<std::size_t>(occ[1].second)];
    x.twinNode = occ[1].first;
    x.twinEdge = occ[1].second;
    y.twinNode = occ[0].first;
    y.twinEdge = occ[0].second;
  }
  // planar embeddings of the rigid skeletons
  for (auto& node : t.nodes) {
    if (node.kind != SpqrKind::R) continue;
    Graph sk;
    for (int v : node.vertices) sk.add_vertex(g.names[static_cast<std::size_t>(v)]);
    std::map<int, int> local;
    for (std::size_t i = 0; i < node.vertices.size(); ++i) local[node.vertices[i]] = static_cast<int>(i);
    for (const auto& e : node.edges) sk.add_edge(local.at(e.u), local.at(e.v));
    auto rot = planar_embedding(sk);
    if (!rot) throw Error(ErrorCode::NotPlanar, "rigid component on " + std::to_string(node.vertices.size()) + " vertices is not planar");
    node.rotation = std::move(*rot);
  }
  return t;
}

}  // namespace spqo
