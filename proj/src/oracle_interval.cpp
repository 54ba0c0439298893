#include <algorithm>
#include <climits>
#include <functional>
#include <set>

#include "spqo/errors.hpp"
#include "spqo/oracle.hpp"

namespace spqo {

namespace {

// Among the `relevant` items the `member` ones must be consecutive.
struct Constraint {
  std::vector<char> relevant, member;
};

// Depth-first search over linear orders of `items` items; `visit` returns
// false to stop.
void search_orders(std::size_t items, const std::vector<Constraint>& cons,
                   const std::function<bool(const std::vector<int>&)>& visit, const OracleBudget& budget) {
  std::vector<int> order;
  std::vector<char> used(items, 0);
  std::vector<int> state(cons.size(), 0);  // 0 not started, 1 open, 2 closed
  std::uint64_t nodes = 0;
  bool stop = false;
  std::function<void()> rec = [&] {
    if (stop) return;
    if (++nodes > budget.maxOrders) throw Error(ErrorCode::BudgetExceeded, "clique order search");
    if (order.size() == items) {
      stop = !visit(order);
      return;
    }
    for (std::size_t c = 0; c < items && !stop; ++c) {
      if (used[c]) continue;
      auto saved = state;
      bool ok = true;
      for (std::size_t k = 0; k < cons.size() && ok; ++k) {
        if (!cons[k].relevant[c]) continue;
        if (cons[k].member[c]) {
          if (state[k] == 2) ok = false;
          state[k] = 1;
        } else if (state[k] == 1) {
          state[k] = 2;
        }
      }
      if (ok) {
        used[c] = 1;
        order.push_back(static_cast<int>(c));
        rec();
        order.pop_back();
        used[c] = 0;
      }
      state = std::move(saved);
    }
  };
  rec();
}

std::vector<Constraint> vertex_constraints(const Graph& g, const CliqueSet& cliques) {
  std::vector<Constraint> cons(static_cast<std::size_t>(g.vertex_count()),
                               Constraint{std::vector<char>(cliques.size(), 1), std::vector<char>(cliques.size(), 0)});
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (int v : cliques[c]) cons[static_cast<std::size_t>(v)].member[c] = 1;
  return cons;
}

// I(v) spans the positions of the member items.
Interval span(const std::vector<char>& member, const std::vector<int>& position) {
  int lo = INT_MAX, hi = INT_MIN;
  for (std::size_t c = 0; c < member.size(); ++c)
    if (member[c]) {
      lo = std::min(lo, position[c]);
      hi = std::max(hi, position[c]);
    }
  return {static_cast<double>(lo), static_cast<double>(hi)};
}

std::vector<int> positions(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i) + 1;
  return pos;
}

}  // namespace

CliqueSet brute_force_maximal_cliques(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::set<int>> adj(n);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  CliqueSet out;
  std::function<void(std::vector<int>, std::set<int>, std::set<int>)> bk = [&](std::vector<int> r, std::set<int> p,
                                                                               std::set<int> x) {
    if (p.empty() && x.empty()) {
      std::sort(r.begin(), r.end());
      out.push_back(r);
      return;
    }
    for (auto it = p.begin(); it != p.end();) {
      int v = *it;
      std::set<int> np, nx;
      for (int w : p)
        if (adj[static_cast<std::size_t>(v)].count(w)) np.insert(w);
      for (int w : x)
        if (adj[static_cast<std::size_t>(v)].count(w)) nx.insert(w);
      auto nr = r;
      nr.push_back(v);
      bk(nr, np, nx);
      it = p.erase(it);
      x.insert(v);
    }
  };
  std::set<int> all;
  for (std::size_t v = 0; v < n; ++v) all.insert(static_cast<int>(v));
  bk({}, all, {});
  if (n == 0) out.clear();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> brute_force_clique_orders(const Graph& g, const OracleBudget& budget) {
  const auto cliques = brute_force_maximal_cliques(g);
  std::vector<std::vector<int>> out;
  search_orders(cliques.size(), vertex_constraints(g, cliques), [&](const std::vector<int>& o) {
    if (out.size() >= budget.maxOrders) throw Error(ErrorCode::BudgetExceeded, "too many clique orders");
    out.push_back(o);
    return true;
  }, budget);
  return out;
}

std::optional<IntervalRep> brute_force_interval(const Graph& g, const OracleBudget& budget) {
  const auto cliques = brute_force_maximal_cliques(g);
  const auto cons = vertex_constraints(g, cliques);
  std::optional<IntervalRep> out;
  search_orders(cliques.size(), cons, [&](const std::vector<int>& o) {
    const auto pos = positions(o);
    IntervalRep rep;
    for (int v = 0; v < g.vertex_count(); ++v)
      rep[g.names[static_cast<std::size_t>(v)]] = span(cons[static_cast<std::size_t>(v)].member, pos);
    out = std::move(rep);
    return false;
  }, budget);
  return out;
}

std::optional<std::pair<IntervalRep, IntervalRep>> brute_force_simultaneous_interval(const Graph& g1, const Graph& g2,
                                                                                     const OracleBudget& budget) {
  const auto c1 = brute_force_maximal_cliques(g1), c2 = brute_force_maximal_cliques(g2);
  const std::size_t k1 = c1.size(), items = c1.size() + c2.size();
  // membership over the concatenated clique list
  auto members = [&](const Graph& g, const CliqueSet& cs, std::size_t offset) {
    std::map<std::string, std::vector<char>> m;
    for (const auto& name : g.names) m[name].assign(items, 0);
    for (std::size_t c = 0; c < cs.size(); ++c)
      for (int v : cs[c]) m[g.names[static_cast<std::size_t>(v)]][offset + c] = 1;
    return m;
  };
  const auto m1 = members(g1, c1, 0), m2 = members(g2, c2, k1);
  std::vector<char> own1(items, 0), own2(items, 0), every(items, 1);
  for (std::size_t c = 0; c < items; ++c) (c < k1 ? own1 : own2)[c] = 1;
  std::map<std::string, std::vector<char>> joint;
  std::vector<Constraint> cons;
  for (const auto& [name, m] : m1) {
    if (m2.count(name)) {
      auto both = m;
      const auto& other = m2.at(name);
      for (std::size_t c = 0; c < items; ++c) both[c] = both[c] || other[c];
      joint[name] = both;
      cons.push_back({every, both});
    } else {
      joint[name] = m;
      cons.push_back({own1, m});
    }
  }
  for (const auto& [name, m] : m2)
    if (!m1.count(name)) {
      joint[name] = m;
      cons.push_back({own2, m});
    }
  std::optional<std::pair<IntervalRep, IntervalRep>> out;
  search_orders(items, cons, [&](const std::vector<int>& o) {
    const auto pos = positions(o);
    std::pair<IntervalRep, IntervalRep> reps;
    for (const auto& name : g1.names) reps.first[name] = span(joint.at(name), pos);
    for (const auto& name : g2.names) reps.second[name] = span(joint.at(name), pos);
    if (!represents_graph(g1, reps.first) || !represents_graph(g2, reps.second)) return true;
    out = std::move(reps);
    return false;
  }, budget);
  return out;
}

bool brute_force_interval_extension(const Graph& g, const IntervalRep& prescribed, const OracleBudget& budget) {
  const auto cliques = brute_force_maximal_cliques(g);
  const auto cons = vertex_constraints(g, cliques);
  // prescribed endpoints in coordinate order
  std::vector<std::pair<double, std::pair<int, bool>>> ends;
  for (const auto& [name, iv] : prescribed) {
    int v = g.find(name);
    if (v < 0) throw Error(ErrorCode::InputError, "prescribed vertex " + name + " is not in the graph");
    ends.push_back({iv.left, {v, false}});
    ends.push_back({iv.right, {v, true}});
  }
  std::sort(ends.begin(), ends.end());
  bool found = false;
  search_orders(cliques.size(), cons, [&](const std::vector<int>& o) {
    const auto pos = positions(o);
    // within a clique position lefts come before rights, otherwise free
    std::pair<double, int> last{-1, 0};
    bool ok = true;
    for (const auto& [x, e] : ends) {
      const auto iv = span(cons[static_cast<std::size_t>(e.first)].member, pos);
      std::pair<double, int> key{e.second ? iv.right : iv.left, e.second ? 1 : 0};
      if (key < last) ok = false;
      last = key;
    }
    found = ok;
    return !ok;
  }, budget);
  return found;
}

}  // namespace spqo
