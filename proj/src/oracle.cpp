#include "spqo/oracle.hpp"

#include <chrono>
#include <algorithm>
#include <functional>
#include <set>

#include "spqo/errors.hpp"

namespace spqo {

namespace {

class Clock {
 public:
  explicit Clock(const OracleBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}
  void tick() {
    if (++steps_ > budget_.maxOrders) throw Error(ErrorCode::BudgetExceeded, "oracle search budget exhausted");
    if ((steps_ & 1023) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > budget_.timeLimit) throw Error(ErrorCode::BudgetExceeded, "oracle time limit exhausted");
    }
  }

 private:
  const OracleBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
};

// Cyclic position test for three distinct positions.
bool cyclic(int a, int b, int c) { return (a < b && b < c) || (b < c && c < a) || (c < a && a < b); }

}  // namespace

std::optional<Solution> brute_force_simultaneous_orders(const Instance& d, const OracleBudget& budget) {
  Clock clock(budget);
  const auto topo = topological_order(d);
  std::vector<std::vector<CircularOrder>> cand(d.trees.size());
  for (std::size_t t = 0; t < d.trees.size(); ++t) {
    if (d.trees[t].is_null()) return std::nullopt;
    try {
      cand[t] = enumerate_orders(d.trees[t], budget.maxOrders);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      throw Error(ErrorCode::BudgetExceeded, "tree " + std::to_string(t) + " has too many orders");
    }
  }
  // arcs checked once both ends are placed: at the later one in topo order
  std::vector<int> rank(d.trees.size());
  for (std::size_t i = 0; i < topo.size(); ++i) rank[static_cast<std::size_t>(topo[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> checks(d.trees.size());
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    const auto& arc = d.arcs[a];
    int later = rank[static_cast<std::size_t>(arc.source)] > rank[static_cast<std::size_t>(arc.target)] ? arc.source
                                                                                                      : arc.target;
    checks[static_cast<std::size_t>(later)].push_back(static_cast<int>(a));
  }
  Solution sol;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == topo.size()) return true;
    const int t = topo[i];
    for (const auto& o : cand[static_cast<std::size_t>(t)]) {
      clock.tick();
      sol.orders[t] = o;
      bool ok = true;
      for (int a : checks[static_cast<std::size_t>(t)]) {
        const auto& arc = d.arcs[static_cast<std::size_t>(a)];
        if (!is_suborder(sol.orders.at(arc.source), sol.orders.at(arc.target), arc.map, arc.reversing)) {
          ok = false;
          break;
        }
      }
      if (ok && go(i + 1)) return true;
    }
    sol.orders.erase(t);
    return false;
  };
  if (!go(0)) return std::nullopt;
  return sol;
}

std::optional<CircularOrder> brute_force_cyclic_ordering(const std::vector<Label>& leaves,
                                                         const std::vector<std::array<Label, 3>>& triples,
                                                         const OracleBudget& budget) {
  Clock clock(budget);
  for (const auto& o : all_circular_orders(leaves)) {
    clock.tick();
    std::map<Label, int> pos;
    for (std::size_t i = 0; i < o.seq().size(); ++i) pos[o.seq()[i]] = static_cast<int>(i);
    bool ok = true;
    for (const auto& tr : triples) ok = ok && cyclic(pos.at(tr[0]), pos.at(tr[1]), pos.at(tr[2]));
    if (ok) return o;
  }
  return std::nullopt;
}

namespace {

// Face count of a rotation system, traced without the embedding module.
long count_faces(const Graph& g, const RotationSystem& rot) {
  std::map<std::pair<int, int>, int> next;  // dart (vertex, edge) -> next edge at the head
  for (std::size_t v = 0; v < rot.size(); ++v)
    for (std::size_t i = 0; i < rot[v].size(); ++i)
      next[{static_cast<int>(v), rot[v][i]}] = rot[v][(i + 1) % rot[v].size()];
  std::set<std::pair<int, int>> used;
  long faces = 0;
  for (int e = 0; e < g.edge_count(); ++e)
    for (int tail : {g.edges[static_cast<std::size_t>(e)].first, g.edges[static_cast<std::size_t>(e)].second}) {
      if (used.count({tail, e})) continue;
      ++faces;
      int v = tail, edge = e;
      while (used.insert({v, edge}).second) {
        int w = g.other(edge, v);
        edge = next.at({w, edge});
        v = w;
      }
    }
  return faces;
}

long component_count(const Graph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> root = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = root(parent[static_cast<std::size_t>(x)]);
  };
  long comps = g.vertex_count();
  for (const auto& [u, v] : g.edges) {
    int a = root(u), b = root(v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --comps;
    }
  }
  return comps;
}

// Calls `visit` on every planar rotation system until it returns true.
bool for_each_planar_rotation(const Graph& g, const OracleBudget& budget,
                              const std::function<bool(const RotationSystem&)>& visit) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < g.edge_count(); ++e) {
    inc[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].first)].push_back(e);
    inc[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].second)].push_back(e);
  }
  long isolated = 0;
  for (const auto& i : inc) isolated += i.empty();
  // each component with an edge satisfies n - m + f = 2
  const long target = g.edge_count() - (g.vertex_count() - isolated) + 2 * (component_count(g) - isolated);
  RotationSystem rot = inc;  // smallest edge first, the rest permuted
  std::uint64_t tried = 0;
  Clock clock(budget);
  std::function<bool(std::size_t)> go = [&](std::size_t v) -> bool {
    if (v == n) {
      if (++tried > budget.maxEmbeddings) throw Error(ErrorCode::BudgetExceeded, "too many rotation systems");
      clock.tick();
      return count_faces(g, rot) == target && visit(rot);
    }
    auto& r = rot[v];
    if (r.size() <= 2) return go(v + 1);
    std::sort(r.begin() + 1, r.end());
    do {
      if (go(v + 1)) return true;
    } while (std::next_permutation(r.begin() + 1, r.end()));
    return false;
  };
  return go(0);
}

std::vector<Label> restricted_labels(const std::vector<int>& rotation, const std::vector<Label>& keep) {
  std::vector<Label> out;
  for (int e : rotation) {
    Label l = std::to_string(e);
    if (std::find(keep.begin(), keep.end(), l) != keep.end()) out.push_back(l);
  }
  return out;
}

}  // namespace

std::vector<RotationSystem> brute_force_embeddings(const Graph& g, const OracleBudget& budget) {
  std::vector<RotationSystem> out;
  for_each_planar_rotation(g, budget, [&](const RotationSystem& r) {
    out.push_back(r);
    return false;
  });
  return out;
}

std::optional<RotationSystem> brute_force_pq_constrained(const Graph& g, const std::map<int, PQTree>& constraints,
                                                         const OracleBudget& budget) {
  std::optional<RotationSystem> found;
  for_each_planar_rotation(g, budget, [&](const RotationSystem& r) {
    for (const auto& [v, tree] : constraints) {
      if (tree.is_null()) return false;
      auto seq = restricted_labels(r[static_cast<std::size_t>(v)], tree.labels());
      if (!represents(tree, CircularOrder(seq))) return false;
    }
    found = r;
    return true;
  });
  return found;
}

std::optional<std::pair<RotationSystem, RotationSystem>> brute_force_sefe(const Graph& g1, const Graph& g2,
                                                                          const OracleBudget& budget) {
  // key of a rotation system: common-edge orders at shared vertices
  std::map<std::pair<std::string, std::string>, int> e2;
  for (int e = 0; e < g2.edge_count(); ++e) {
    auto [u, v] = g2.edges[static_cast<std::size_t>(e)];
    e2[std::minmax(g2.names[static_cast<std::size_t>(u)], g2.names[static_cast<std::size_t>(v)])] = e;
  }
  std::map<int, int> shared1;  // g1 edge -> g2 edge
  for (int e = 0; e < g1.edge_count(); ++e) {
    auto [u, v] = g1.edges[static_cast<std::size_t>(e)];
    auto it = e2.find(std::minmax(g1.names[static_cast<std::size_t>(u)], g1.names[static_cast<std::size_t>(v)]));
    if (it != e2.end()) shared1[e] = it->second;
  }
  std::map<int, int> shared2;
  for (const auto& [a, b] : shared1) shared2[b] = a;
  // common-edge orders at shared vertices, in g1 vertex order and g1 edge labels
  auto keyed = [&](const RotationSystem& r, bool first) {
    std::vector<CircularOrder> k;
    for (int v = 0; v < g1.vertex_count(); ++v) {
      int w = first ? v : g2.find(g1.names[static_cast<std::size_t>(v)]);
      if (w < 0 || g2.find(g1.names[static_cast<std::size_t>(v)]) < 0) continue;
      std::vector<Label> seq;
      for (int e : r[static_cast<std::size_t>(w)]) {
        if (first && shared1.count(e)) seq.push_back(std::to_string(e));
        if (!first && shared2.count(e)) seq.push_back(std::to_string(shared2.at(e)));
      }
      k.emplace_back(seq);
    }
    return k;
  };
  std::map<std::vector<CircularOrder>, RotationSystem> firstKeys;
  for_each_planar_rotation(g1, budget, [&](const RotationSystem& r) {
    firstKeys.emplace(keyed(r, true), r);
    return false;
  });
  std::optional<std::pair<RotationSystem, RotationSystem>> found;
  for_each_planar_rotation(g2, budget, [&](const RotationSystem& r) {
    auto it = firstKeys.find(keyed(r, false));
    if (it == firstKeys.end()) return false;
    found = std::make_pair(it->second, r);
    return true;
  });
  return found;
}

}  // namespace spqo
