#include <algorithm>
#include <map>
#include <set>

#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

// Fragment of G relative to the embedded subgraph: a chord or a component of
// unembedded vertices together with its attachment vertices.
struct Fragment {
  std::vector<int> attachments;  // ascending
  int chord = -1;
  std::vector<int> inner;  // unembedded vertices
};

// Initial cycle found by DFS; every biconnected graph has one.
std::vector<int> find_cycle(const Graph& g, const std::vector<std::vector<int>>& inc) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> parent(n, -1), depth(n, -1);
  std::vector<int> stack{0};
  depth[0] = 0;
  std::vector<std::size_t> pos(n, 0);
  while (!stack.empty()) {
    int v = stack.back();
    auto uv = static_cast<std::size_t>(v);
    if (pos[uv] == inc[uv].size()) {
      stack.pop_back();
      continue;
    }
    int w = g.other(inc[uv][pos[uv]++], v);
    auto uw = static_cast<std::size_t>(w);
    if (depth[uw] < 0) {
      depth[uw] = depth[uv] + 1;
      parent[uw] = v;
      stack.push_back(w);
    } else if (w != parent[uv] && depth[uw] < depth[uv]) {
      std::vector<int> cycle;
      for (int x = v; x != w; x = parent[static_cast<std::size_t>(x)]) cycle.push_back(x);
      cycle.push_back(w);
      std::reverse(cycle.begin(), cycle.end());
      return cycle;
    }
  }
  throw Error(ErrorCode::NotBiconnected, "graph has no cycle");
}

}  // namespace

std::optional<RotationSystem> planar_embedding(const Graph& g) {
  const int n = g.vertex_count(), m = g.edge_count();
  if (!is_biconnected(g)) throw Error(ErrorCode::NotBiconnected, "planar_embedding needs a biconnected graph");
  if (n >= 3 && m > 3 * n - 6) return std::nullopt;
  const auto inc = g.incidence();
  std::map<std::pair<int, int>, int> edgeOf;
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    edgeOf[{u, v}] = edgeOf[{v, u}] = e;
  }
  std::vector<char> inV(static_cast<std::size_t>(n), 0), inE(static_cast<std::size_t>(m), 0);
  auto cycle = find_cycle(g, inc);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    inV[static_cast<std::size_t>(cycle[i])] = 1;
    inE[static_cast<std::size_t>(edgeOf.at({cycle[i], cycle[(i + 1) % cycle.size()]}))] = 1;
  }
  std::vector<std::vector<int>> faces{cycle, std::vector<int>(cycle.rbegin(), cycle.rend())};
  int embedded = static_cast<int>(cycle.size());
  while (embedded < m) {
    // collect fragments
    std::vector<Fragment> frags;
    for (int e = 0; e < m; ++e) {
      auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      if (!inE[static_cast<std::size_t>(e)] && inV[static_cast<std::size_t>(u)] && inV[static_cast<std::size_t>(v)])
        frags.push_back({{std::min(u, v), std::max(u, v)}, e, {}});
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
      if (inV[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
      Fragment f;
      std::set<int> att;
      std::vector<int> stack{s};
      seen[static_cast<std::size_t>(s)] = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        f.inner.push_back(v);
        for (int e : inc[static_cast<std::size_t>(v)]) {
          int w = g.other(e, v);
          if (inV[static_cast<std::size_t>(w)]) {
            att.insert(w);
          } else if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      f.attachments.assign(att.begin(), att.end());
      frags.push_back(std::move(f));
    }
    // admissible faces per fragment
    std::vector<std::set<int>> faceSets;
    for (const auto& f : faces) faceSets.emplace_back(f.begin(), f.end());
    std::size_t chosen = frags.size();
    int chosenFace = -1;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      if (frags[i].attachments.size() < 2)
        throw Error(ErrorCode::NotBiconnected, "fragment with a single attachment");
      std::vector<int> adm;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        bool all = true;
        for (int a : frags[i].attachments) all = all && faceSets[f].count(a);
        if (all) adm.push_back(static_cast<int>(f));
      }
      if (adm.empty()) return std::nullopt;
      if (adm.size() == 1) {
        chosen = i;
        chosenFace = adm[0];
        break;
      }
      if (chosen == frags.size()) {
        chosen = i;
        chosenFace = adm[0];
      }
    }
    const Fragment& fr = frags[chosen];
    // path between two attachments through the fragment
    std::vector<int> path;  // vertices a, inner..., b
    if (fr.chord >= 0) {
      path = {g.edges[static_cast<std::size_t>(fr.chord)].first, g.edges[static_cast<std::size_t>(fr.chord)].second};
    } else {
      const int a = fr.attachments[0];
      std::set<int> innerSet(fr.inner.begin(), fr.inner.end());
      std::map<int, int> prev;
      std::vector<int> queue;
      for (int e : inc[static_cast<std::size_t>(a)]) {
        int w = g.other(e, a);
        if (innerSet.count(w) && !prev.count(w)) {
          prev[w] = a;
          queue.push_back(w);
        }
      }
      int end = -1, b = -1;
      for (std::size_t q = 0; q < queue.size() && end < 0; ++q) {
        int v = queue[q];
        for (int e : inc[static_cast<std::size_t>(v)]) {
          int w = g.other(e, v);
          if (inV[static_cast<std::size_t>(w)] && w != a) {
            end = v;
            b = w;
            break;
          }
          if (innerSet.count(w) && !prev.count(w)) {
            prev[w] = v;
            queue.push_back(w);
          }
        }
      }
      if (end < 0) throw Error(ErrorCode::NotBiconnected, "fragment reaches a single attachment");
      path.push_back(b);
      for (int x = end; x != a; x = prev.at(x)) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
    }
    // split the face along the path
    const auto& face = faces[static_cast<std::size_t>(chosenFace)];
    const int a = path.front(), b = path.back();
    const std::size_t len = face.size();
    const std::size_t i = static_cast<std::size_t>(std::find(face.begin(), face.end(), a) - face.begin());
    const std::size_t j = static_cast<std::size_t>(std::find(face.begin(), face.end(), b) - face.begin());
    std::vector<int> f1, f2;
    for (std::size_t k = i;; k = (k + 1) % len) {
      f1.push_back(face[k]);
      if (k == j) break;
    }
    for (std::size_t k = path.size() - 2; k >= 1; --k) f1.push_back(path[k]);
    for (std::size_t k = j;; k = (k + 1) % len) {
      f2.push_back(face[k]);
      if (k == i) break;
    }
    for (std::size_t k = 1; k + 1 < path.size(); ++k) f2.push_back(path[k]);
    faces[static_cast<std::size_t>(chosenFace)] = std::move(f1);
    faces.push_back(std::move(f2));
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      inV[static_cast<std::size_t>(path[k])] = inV[static_cast<std::size_t>(path[k + 1])] = 1;
      inE[static_cast<std::size_t>(edgeOf.at({path[k], path[k + 1]}))] = 1;
      ++embedded;
    }
  }
  // at v, the face walk u -> v -> w puts w right after u in the rotation
  std::vector<std::map<int, int>> succ(static_cast<std::size_t>(n));
  for (const auto& f : faces)
    for (std::size_t k = 0; k < f.size(); ++k) {
      int u = f[k], v = f[(k + 1) % f.size()], w = f[(k + 2) % f.size()];
      succ[static_cast<std::size_t>(v)][u] = w;
    }
  RotationSystem rot(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto& iv = inc[static_cast<std::size_t>(v)];
    int u = g.other(iv.front(), v);
    for (std::size_t k = 0; k < iv.size(); ++k) {
      rot[static_cast<std::size_t>(v)].push_back(edgeOf.at({v, u}));
      u = succ[static_cast<std::size_t>(v)].at(u);
    }
  }
  if (!is_planar_rotation(g, rot)) throw Error(ErrorCode::PlanarityCheckFailed, "path addition produced a non-planar rotation");
  return rot;
}

}  // namespace spqo
