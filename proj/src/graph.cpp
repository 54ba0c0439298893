#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"

namespace spqo {

int Graph::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Graph::add_vertex(const std::string& name) {
  auto [it, inserted] = index_.emplace(name, vertex_count());
  if (inserted) names.push_back(name);
  return it->second;
}

int Graph::add_edge(int u, int v) {
  if (u == v) throw Error(ErrorCode::InputError, "self loop at " + names.at(static_cast<std::size_t>(u)));
  auto key = std::minmax(u, v);
  if (edgeIndex_.count(key))
    throw Error(ErrorCode::InputError, "parallel edge " + names.at(static_cast<std::size_t>(u)) + " " +
                                           names.at(static_cast<std::size_t>(v)));
  edges.emplace_back(u, v);
  edgeIndex_[key] = edge_count() - 1;
  return edge_count() - 1;
}

int Graph::other(int edge, int v) const {
  const auto& e = edges.at(static_cast<std::size_t>(edge));
  return e.first == v ? e.second : e.first;
}

std::vector<std::vector<int>> Graph::incidence() const {
  std::vector<std::vector<int>> inc(names.size());
  for (int e = 0; e < edge_count(); ++e) {
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].first)].push_back(e);
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].second)].push_back(e);
  }
  return inc;
}

Label edge_label(int edge) { return std::to_string(edge); }

Graph parse_edge_list(std::istream& in) {
  Graph g;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string u, v, extra;
    if (!(ls >> u)) continue;
    if (!(ls >> v) || (ls >> extra))
      throw Error(ErrorCode::InputError, "line " + std::to_string(lineNo) + ": expected `u v`");
    int a = g.add_vertex(u), b = g.add_vertex(v);
    g.add_edge(a, b);
  }
  return g;
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot read " + path);
  return parse_edge_list(in);
}

std::vector<std::vector<int>> biconnected_components(const Graph& g) {
  const auto inc = g.incidence();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> edgeStack;
  std::vector<std::vector<int>> blocks;
  int time = 0;
  // iterative DFS: frames of (vertex, parent edge, next incidence position)
  struct Frame {
    int v, parentEdge;
    std::size_t pos;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{static_cast<int>(root), -1, 0}};
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto uv = static_cast<std::size_t>(f.v);
      if (f.pos < inc[uv].size()) {
        int e = inc[uv][f.pos++];
        if (e == f.parentEdge) continue;
        int w = g.other(e, f.v);
        auto uw = static_cast<std::size_t>(w);
        if (disc[uw] < 0) {
          edgeStack.push_back(e);
          disc[uw] = low[uw] = time++;
          stack.push_back({w, e, 0});
        } else if (disc[uw] < disc[uv]) {
          edgeStack.push_back(e);
          low[uv] = std::min(low[uv], disc[uw]);
        }
        continue;
      }
      const int v = f.v, pe = f.parentEdge;
      stack.pop_back();
      if (stack.empty()) break;
      const auto up = static_cast<std::size_t>(stack.back().v);
      low[up] = std::min(low[up], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[up]) {
        std::vector<int> block;
        int e;
        do {
          e = edgeStack.back();
          edgeStack.pop_back();
          block.push_back(e);
        } while (e != pe);
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
      }
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto inc = g.incidence();
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : inc[static_cast<std::size_t>(v)]) {
      int w = g.other(e, v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.vertex_count();
}

bool is_biconnected(const Graph& g) {
  return g.vertex_count() >= 3 && is_connected(g) && biconnected_components(g).size() == 1;
}

std::vector<std::vector<std::pair<int, int>>> trace_faces(const Graph& g, const RotationSystem& rot) {
  // position of each edge in the rotation of each endpoint
  std::map<std::pair<int, int>, std::size_t> pos;
  for (std::size_t v = 0; v < rot.size(); ++v)
    for (std::size_t i = 0; i < rot[v].size(); ++i) pos[{static_cast<int>(v), rot[v][i]}] = i;
  std::set<std::pair<int, int>> used;  // darts (tail vertex, edge)
  std::vector<std::vector<std::pair<int, int>>> faces;
  for (int e = 0; e < g.edge_count(); ++e) {
    for (int tail : {g.edges[static_cast<std::size_t>(e)].first, g.edges[static_cast<std::size_t>(e)].second}) {
      if (used.count({tail, e})) continue;
      std::vector<std::pair<int, int>> face;
      int v = tail, edge = e;
      while (!used.count({v, edge})) {
        used.insert({v, edge});
        face.emplace_back(v, edge);
        int w = g.other(edge, v);
        const auto& r = rot.at(static_cast<std::size_t>(w));
        std::size_t i = pos.at({w, edge});
        edge = r[(i + 1) % r.size()];
        v = w;
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

bool is_planar_rotation(const Graph& g, const RotationSystem& rot) {
  const auto inc = g.incidence();
  if (rot.size() != inc.size()) return false;
  for (std::size_t v = 0; v < inc.size(); ++v) {
    auto a = rot[v], b = inc[v];
    std::sort(a.begin(), a.end());
    if (a != b) return false;
  }
  // component id per vertex
  std::vector<int> comp(inc.size(), -1);
  int comps = 0;
  for (std::size_t s = 0; s < inc.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = comps;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : inc[static_cast<std::size_t>(v)]) {
        int w = g.other(e, v);
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = comps;
          stack.push_back(w);
        }
      }
    }
    ++comps;
  }
  std::vector<long> n(static_cast<std::size_t>(comps), 0), m(static_cast<std::size_t>(comps), 0),
      f(static_cast<std::size_t>(comps), 0);
  for (std::size_t v = 0; v < inc.size(); ++v) ++n[static_cast<std::size_t>(comp[v])];
  for (const auto& e : g.edges) ++m[static_cast<std::size_t>(comp[static_cast<std::size_t>(e.first)])];
  for (const auto& face : trace_faces(g, rot)) ++f[static_cast<std::size_t>(comp[static_cast<std::size_t>(face[0].first)])];
  for (std::size_t c = 0; c < n.size(); ++c)
    if (m[c] > 0 && n[c] - m[c] + f[c] != 2) return false;
  return true;
}

}  // namespace spqo
