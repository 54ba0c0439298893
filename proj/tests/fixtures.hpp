#pragma once
// Random graph and instance families shared by the unit tests and the
// acceptance suite.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spqo/embedding.hpp"
#include "spqo/generators.hpp"
#include "spqo/interval.hpp"
#include "spqo/pqtree.hpp"

namespace spqo::fixtures {

inline Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  return names;
}

/// Rotations of every vertex over all embeddings, as label orders.
inline std::vector<std::set<CircularOrder>> rotation_sets(const Graph& g, const std::vector<RotationSystem>& all) {
  std::vector<std::set<CircularOrder>> out(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& r : all)
    for (std::size_t v = 0; v < r.size(); ++v) {
      std::vector<Label> seq;
      for (int e : r[v]) seq.push_back(edge_label(e));
      out[v].insert(CircularOrder(seq));
    }
  return out;
}

/// True iff the rotation of every constrained vertex, restricted to the
/// tree's leaves, is represented by its tree.
inline bool respects_constraints(const RotationSystem& rot, const std::map<int, PQTree>& cons) {
  for (const auto& [v, t] : cons) {
    std::vector<Label> seq;
    for (int e : rot[static_cast<std::size_t>(v)]) {
      Label l = edge_label(e);
      if (t.leaf_index(l) >= 0) seq.push_back(l);
    }
    if (!represents(t, CircularOrder(seq))) return false;
  }
  return true;
}

/// Constraint trees on a random half of the vertices of degree >= 3, built
/// from arcs of a hidden order so that they usually contain Q-nodes.
inline std::map<int, PQTree> random_constraints(std::mt19937_64& rng, const Graph& g) {
  std::map<int, PQTree> out;
  const auto inc = g.incidence();
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& iv = inc[static_cast<std::size_t>(v)];
    if (iv.size() < 3 || rng() % 2) continue;
    std::vector<Label> leaves;
    for (int e : iv)
      if (rng() % 4) leaves.push_back(edge_label(e));
    if (leaves.size() < 3) continue;
    std::sort(leaves.begin(), leaves.end());
    auto hidden = leaves;
    std::shuffle(hidden.begin(), hidden.end(), rng);
    std::vector<std::vector<Label>> family;
    for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k) {
      std::size_t start = rng() % hidden.size(), len = 2 + rng() % (hidden.size() - 2);
      std::vector<Label> s;
      for (std::size_t i = 0; i < len; ++i) s.push_back(hidden[(start + i) % hidden.size()]);
      std::sort(s.begin(), s.end());
      family.push_back(s);
    }
    PQTree t = from_consecutive_sets(leaves, family);
    if (!t.is_null()) out[v] = t;
  }
  return out;
}

/// Graph sharing most of g1: a few edges dropped, a chord and an ear added.
inline Graph sefe_partner(std::mt19937_64& rng, const Graph& g1, std::uint64_t maxRotations = 200000) {
  for (;;) {
    Graph g2;
    for (const auto& n : g1.names) g2.add_vertex(n);
    for (const auto& [u, v] : g1.edges)
      if (rng() % 5) g2.add_edge(u, v);
    const int n = g1.vertex_count();
    for (int k = 0; k < 2; ++k) {
      int a = static_cast<int>(rng() % static_cast<unsigned>(n)), b = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (a == b) continue;
      bool present = false;
      for (const auto& e : g2.edges) present = present || std::minmax(e.first, e.second) == std::minmax(a, b);
      if (present) continue;
      if (rng() % 2) {
        g2.add_edge(a, b);
      } else {
        int x = g2.add_vertex("x" + std::to_string(k));
        g2.add_edge(a, x);
        g2.add_edge(x, b);
      }
    }
    if (is_biconnected(g2) && rotation_system_count(g2) <= maxRotations) return g2;
  }
}

/// Common K_{2,4} on poles s, t; each graph adds a cycle through the path
/// midpoints in its own order, which fixes the rotation at the poles.
inline std::pair<Graph, Graph> wheel_pair(std::mt19937_64& rng) {
  std::pair<Graph, Graph> out;
  for (Graph* g : {&out.first, &out.second}) {
    std::vector<std::string> mids{"m0", "m1", "m2", "m3"};
    for (const auto& m : mids) {
      g->add_edge(g->add_vertex("s"), g->add_vertex(m));
      g->add_edge(g->add_vertex(m), g->add_vertex("t"));
    }
    std::shuffle(mids.begin(), mids.end(), rng);
    for (std::size_t i = 0; i < mids.size(); ++i) g->add_edge(g->find(mids[i]), g->find(mids[(i + 1) % mids.size()]));
  }
  return out;
}

/// Common vertices are disjoint intervals laid out in a different order for
/// each graph; exclusive vertices get random intervals over that layout.
inline std::pair<Graph, Graph> permuted_layout_pair(std::mt19937_64& rng) {
  const int k = 3 + static_cast<int>(rng() % 2);
  std::uniform_real_distribution<double> coord(0, 4.0 * k);
  auto layout = [&](const std::string& prefix) {
    std::vector<int> slot(static_cast<std::size_t>(k));
    std::iota(slot.begin(), slot.end(), 0);
    std::shuffle(slot.begin(), slot.end(), rng);
    IntervalRep m;
    for (int i = 0; i < k; ++i)
      m["c" + std::to_string(i)] = {4.0 * slot[static_cast<std::size_t>(i)], 4.0 * slot[static_cast<std::size_t>(i)] + 1};
    // bridges between neighbouring slots pin the order down
    for (int s = 0; s + 1 < k; ++s)
      if (rng() % 3) m[prefix + "b" + std::to_string(s)] = {4.0 * s + 0.5, 4.0 * s + 4.5};
    double a = coord(rng), b = coord(rng);
    m[prefix + "r"] = {std::min(a, b), std::max(a, b)};
    return intersection_graph(m);
  };
  Graph g1 = layout("x");
  return {g1, layout("y")};
}

/// Two graphs cut from one random interval model of n vertices, then
/// perturbed according to `family` (0 unchanged, 1 fresh intervals for the
/// vertices only g2 has, 2 a few edges of g2 dropped, 3 permuted layouts).
inline std::optional<std::pair<Graph, Graph>> random_interval_pair(std::mt19937_64& rng, int n, int family) {
  if (family == 3) return permuted_layout_pair(rng);
  const auto names = vertex_names(n);
  const auto model = random_intervals(rng, names, 2);
  const Graph whole = intersection_graph(model);
  std::vector<std::string> s1, s2;
  for (const auto& name : names) {
    auto r = rng() % 3;
    if (r != 1) s1.push_back(name);
    if (r != 2) s2.push_back(name);
  }
  if (s1.empty() || s2.empty()) return std::nullopt;
  Graph g1 = induced_subgraph(whole, s1), g2 = induced_subgraph(whole, s2);
  if (family == 1) {
    IntervalRep m2;
    std::uniform_real_distribution<double> coord(0, 4.0 * n);
    for (const auto& name : s2) {
      if (std::count(s1.begin(), s1.end(), name)) {
        m2[name] = model.at(name);
      } else {
        double a = coord(rng), b = coord(rng);
        m2[name] = {std::min(a, b), std::max(a, b)};
      }
    }
    g2 = intersection_graph(m2);
  } else if (family == 2) {
    Graph h;
    for (const auto& name : g2.names) h.add_vertex(name);
    for (const auto& [u, v] : g2.edges)
      if (rng() % 6) h.add_edge(u, v);
    g2 = h;
  }
  return std::make_pair(g1, g2);
}

/// Random interval representation of the subgraph induced by `names`, found
/// by rejection sampling, or nothing when none turned up.
inline std::optional<IntervalRep> random_prescription_on(std::mt19937_64& rng, const Graph& g,
                                                         const std::vector<std::string>& names) {
  const Graph h = induced_subgraph(g, names);
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto rep = random_intervals(rng, names, 2);
    if (represents_graph(h, rep)) return rep;
  }
  return std::nullopt;
}

/// Prescription on a random nonempty vertex subset.
inline std::optional<IntervalRep> random_prescription(std::mt19937_64& rng, const Graph& g) {
  std::vector<std::string> names;
  for (const auto& n : g.names)
    if (rng() % 2) names.push_back(n);
  if (names.empty()) names.push_back(g.names.front());
  return random_prescription_on(rng, g, names);
}

inline IntervalRep restrict_rep(const IntervalRep& rep, const IntervalRep& keys) {
  IntervalRep out;
  for (const auto& [n, iv] : keys) out[n] = rep.at(n);
  return out;
}

}  // namespace spqo::fixtures
