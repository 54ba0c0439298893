#include "spqo/solver.hpp"

#include <algorithm>
#include <set>

#include "spqo/errors.hpp"

namespace spqo {

void TwoSat::add_xor(int x, int y, bool differ) {
  if (differ) {
    add_clause(pos(x), pos(y));
    add_clause(neg(x), neg(y));
  } else {
    add_clause(neg(x), pos(y));
    add_clause(pos(x), neg(y));
  }
}

std::optional<std::vector<bool>> TwoSat::solve() const {
  const int lits = 2 * n_;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(lits));
  for (auto [a, b] : clauses_) {
    adj[static_cast<std::size_t>(a ^ 1)].push_back(b);
    adj[static_cast<std::size_t>(b ^ 1)].push_back(a);
  }
  // iterative Tarjan; components are numbered in reverse topological order
  std::vector<int> index(static_cast<std::size_t>(lits), -1), low(static_cast<std::size_t>(lits), 0),
      comp(static_cast<std::size_t>(lits), -1);
  std::vector<int> stack, call;
  std::vector<std::size_t> edgePos(static_cast<std::size_t>(lits), 0);
  std::vector<char> onStack(static_cast<std::size_t>(lits), 0);
  int counter = 0, comps = 0;
  for (int s = 0; s < lits; ++s) {
    if (index[static_cast<std::size_t>(s)] >= 0) continue;
    call.push_back(s);
    while (!call.empty()) {
      int v = call.back();
      auto uv = static_cast<std::size_t>(v);
      if (index[uv] < 0) {
        index[uv] = low[uv] = counter++;
        stack.push_back(v);
        onStack[uv] = 1;
      }
      if (edgePos[uv] < adj[uv].size()) {
        int w = adj[uv][edgePos[uv]++];
        auto uw = static_cast<std::size_t>(w);
        if (index[uw] < 0) {
          call.push_back(w);
        } else if (onStack[uw]) {
          low[uv] = std::min(low[uv], index[uw]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) {
        auto up = static_cast<std::size_t>(call.back());
        low[up] = std::min(low[up], low[uv]);
      }
      if (low[uv] == index[uv]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = comps;
        } while (w != v);
        ++comps;
      }
    }
  }
  std::vector<bool> value(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) {
    int cp = comp[static_cast<std::size_t>(pos(v))], cn = comp[static_cast<std::size_t>(neg(v))];
    if (cp == cn) return std::nullopt;
    value[static_cast<std::size_t>(v)] = cp < cn;
  }
  return value;
}

QConstraintSystem collect_q_constraints(const ExpansionGraph& g) {
  QConstraintSystem sys;
  const auto& d = g.instance;
  for (std::size_t t = 0; t < d.trees.size(); ++t) {
    const auto& tree = d.trees[t];
    if (tree.variant() != Variant::Normal) continue;
    for (std::size_t v = 0; v < tree.nodes().size(); ++v)
      if (tree.is_inner(static_cast<int>(v)) && tree.is_orientation_node(static_cast<int>(v))) {
        std::pair<int, int> key{static_cast<int>(t), static_cast<int>(v)};
        sys.index[key] = sys.sat.add_variable();
        sys.vars.push_back(key);
      }
  }
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    const Arc& arc = d.arcs[a];
    const auto& rep = g.arcInfo[a].fixedness;
    for (std::size_t v = 0; v < rep.nodes.size(); ++v) {
      const auto& nf = rep.nodes[v];
      if (!nf.fixed || nf.rep < 0) continue;
      auto xi = sys.index.find({arc.source, static_cast<int>(v)});
      auto yi = sys.index.find({arc.target, nf.rep});
      if (xi == sys.index.end() || yi == sys.index.end())
        throw Error(ErrorCode::InternalInconsistency, "representative is not an orientation node");
      bool differ = !nf.repAligned != arc.reversing;
      sys.relations.push_back({xi->second, yi->second, differ});
      sys.sat.add_xor(xi->second, yi->second, differ);
    }
  }
  return sys;
}

std::vector<std::optional<CircularOrder>> check_double_arcs(const ExpansionGraph& g) {
  std::vector<std::optional<CircularOrder>> out;
  for (const auto& da : g.doubleArcs)
    out.push_back(da.mixed ? order_reversing_witness(da.perm) : order_preserving_witness(da.perm));
  return out;
}

namespace {

// Cyclic merge of two slot sequences that agree on their common elements.
std::vector<int> merge_cyclic(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::set<int> inA(a.begin(), a.end());
  std::size_t start = b.size();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (inA.count(b[i])) {
      start = i;
      break;
    }
  std::vector<int> out = a;
  if (start == b.size()) {
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }
  std::map<int, std::vector<int>> after;  // common element -> b-only run following it
  int current = b[start];
  for (std::size_t k = 1; k <= b.size(); ++k) {
    int x = b[(start + k) % b.size()];
    if (inA.count(x)) {
      current = x;
    } else {
      after[current].push_back(x);
    }
  }
  out.clear();
  for (int x : a) {
    out.push_back(x);
    auto it = after.find(x);
    if (it != after.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<int> orientation_order(int degree, bool keep) {
  std::vector<int> ord{0};
  if (keep) {
    for (int s = 1; s < degree; ++s) ord.push_back(s);
  } else {
    for (int s = degree - 1; s >= 1; --s) ord.push_back(s);
  }
  return ord;
}

}  // namespace

Solution extend_orders_bottom_up(const ExpansionGraph& g, const std::vector<bool>& assignment,
                                 const QConstraintSystem& sys,
                                 const std::map<int, CircularOrder>& sinkOrders) {
  const auto& d = g.instance;
  Solution sol;
  auto topo = topological_order(d);
  const auto outs = d.out_adjacency();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int t = *it;
    const PQTree& tree = d.trees[static_cast<std::size_t>(t)];
    if (tree.is_null()) throw Error(ErrorCode::InternalInconsistency, "null tree reached the extension");
    auto forced = sinkOrders.find(t);
    if (forced != sinkOrders.end()) {
      sol.orders[t] = forced->second;
      continue;
    }
    if (tree.variant() != Variant::Normal || tree.nodes().size() <= 2) {
      sol.orders[t] = first_order(tree);
      continue;
    }
    // partial slot orders that children impose on branching P-nodes
    std::map<int, std::vector<std::vector<int>>> partial;
    for (int a : outs[static_cast<std::size_t>(t)]) {
      const Arc& arc = d.arcs[static_cast<std::size_t>(a)];
      const auto& info = g.arcInfo[static_cast<std::size_t>(a)];
      const auto& rep = info.fixedness;
      bool any = false;
      for (std::size_t v = 0; v < rep.nodes.size() && !any; ++v)
        any = rep.nodes[v].fixed && tree.is_branching_pnode(static_cast<int>(v));
      if (!any) continue;
      const auto& childOrder = sol.orders.at(arc.target);
      std::vector<Label> seq;
      for (const auto& l : childOrder.seq()) seq.push_back(arc.map.at(l));
      CircularOrder mapped(seq);
      if (arc.reversing) mapped = mapped.reversed();
      auto projOrders = node_orders(info.proj.tree, mapped);
      for (std::size_t v = 0; v < rep.nodes.size(); ++v) {
        const auto& nf = rep.nodes[v];
        if (!nf.fixed || !tree.is_branching_pnode(static_cast<int>(v))) continue;
        const auto& so = info.proj.slotOrigin[static_cast<std::size_t>(nf.image)];
        std::vector<int> slots;
        for (int s : projOrders[static_cast<std::size_t>(nf.image)]) slots.push_back(so[static_cast<std::size_t>(s)]);
        partial[static_cast<int>(v)].push_back(std::move(slots));
      }
    }
    std::vector<std::vector<int>> nodeOrders(tree.nodes().size());
    for (std::size_t v = 0; v < tree.nodes().size(); ++v) {
      const int iv = static_cast<int>(v);
      if (!tree.is_inner(iv)) continue;
      const int deg = tree.degree(iv);
      if (tree.is_orientation_node(iv)) {
        int var = sys.index.at({t, iv});
        nodeOrders[v] = orientation_order(deg, assignment[static_cast<std::size_t>(var)]);
        continue;
      }
      std::vector<int> merged;
      auto pit = partial.find(iv);
      if (pit != partial.end()) {
        if (pit->second.size() > 2)
          throw Error(ErrorCode::InternalInconsistency, "P-node fixed by more than two children");
        merged = pit->second[0];
        if (pit->second.size() == 2) merged = merge_cyclic(merged, pit->second[1]);
      }
      std::set<int> used(merged.begin(), merged.end());
      for (int s = 0; s < deg; ++s)
        if (!used.count(s)) merged.push_back(s);
      nodeOrders[v] = std::move(merged);
    }
    sol.orders[t] = order_from_node_orders(tree, nodeOrders);
  }
  for (const auto& [key, var] : sys.index) sol.qAssignment[key] = assignment[static_cast<std::size_t>(var)];
  return sol;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NotSupported: return "not-supported";
  }
  return "unknown";
}

std::string to_string(InfeasibleReason r) {
  switch (r) {
    case InfeasibleReason::None: return "None";
    case InfeasibleReason::NullTree: return "NullTree";
    case InfeasibleReason::QConstraints: return "QConstraints";
    case InfeasibleReason::DoubleArc: return "DoubleArc";
  }
  return "unknown";
}

namespace {

SolveResult infeasible(InfeasibleReason r, std::string msg) {
  SolveResult res;
  res.status = SolveStatus::Infeasible;
  res.reason = r;
  res.message = std::move(msg);
  return res;
}

constexpr std::uint64_t kJointWitnessCap = 5040;

}  // namespace

SolveResult solve(const Instance& d, const SolveOptions& opts) {
  NormalizedInstance n = normalize(d);
  for (std::size_t t = 0; t < n.instance.trees.size(); ++t)
    if (n.instance.trees[t].is_null())
      return infeasible(InfeasibleReason::NullTree, "tree " + std::to_string(t) + " has no admissible order");
  const bool twoFixed = fixedness(n).twoFixed;
  ExpansionGraph g;
  try {
    g = build_expansion_graph(n, opts.expansion);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotOneCritical) throw;
    SolveResult res;
    res.status = SolveStatus::NotSupported;
    res.message = e.what();
    res.twoFixed = twoFixed;
    return res;
  }
  if (g.nullTree >= 0) {
    auto res = infeasible(InfeasibleReason::NullTree, "expansion tree " + std::to_string(g.nullTree) + " is null");
    res.twoFixed = twoFixed;
    res.stats = g.stats;
    return res;
  }
  auto sys = collect_q_constraints(g);
  auto assignment = sys.sat.solve();
  if (!assignment) {
    auto res = infeasible(InfeasibleReason::QConstraints, "Q-node orientations are contradictory");
    res.twoFixed = twoFixed;
    res.stats = g.stats;
    return res;
  }
  // sink orders demanded by critical double arcs
  std::map<int, CircularOrder> sinkOrders;
  auto witnesses = check_double_arcs(g);
  std::map<int, std::vector<std::size_t>> bySink;
  for (std::size_t i = 0; i < g.doubleArcs.size(); ++i) bySink[g.doubleArcs[i].sink].push_back(i);
  for (const auto& [sink, ids] : bySink) {
    const PQTree& tree = g.instance.trees[static_cast<std::size_t>(sink)];
    for (auto i : ids)
      if (!witnesses[i]) {
        auto res = infeasible(InfeasibleReason::DoubleArc, "double arc into tree " + std::to_string(sink) +
                                                                " admits no invariant order");
        res.twoFixed = twoFixed;
        res.stats = g.stats;
        return res;
      }
    // a three-leaf sink is an orientation node; any witness-compatible flip works
    if (!tree.is_branching_pnode(1)) continue;
    if (ids.size() == 1) {
      sinkOrders[sink] = *witnesses[ids[0]];
      continue;
    }
    if (count_orders(tree) > kJointWitnessCap) {
      SolveResult res;
      res.status = SolveStatus::NotSupported;
      res.message = "tree " + std::to_string(sink) + " is the target of several double arcs";
      res.twoFixed = twoFixed;
      res.stats = g.stats;
      return res;
    }
    std::optional<CircularOrder> joint;
    for (const auto& o : enumerate_orders(tree, kJointWitnessCap)) {
      bool ok = true;
      for (auto i : ids) {
        const auto& da = g.doubleArcs[i];
        auto img = apply(da.perm, o);
        ok = ok && img == (da.mixed ? o.reversed() : o);
      }
      if (ok) {
        joint = o;
        break;
      }
    }
    if (!joint) {
      auto res = infeasible(InfeasibleReason::DoubleArc, "double arcs into tree " + std::to_string(sink) +
                                                             " admit no common invariant order");
      res.twoFixed = twoFixed;
      res.stats = g.stats;
      return res;
    }
    sinkOrders[sink] = *joint;
  }
  Solution full = extend_orders_bottom_up(g, *assignment, sys, sinkOrders);
  SolveResult res;
  res.twoFixed = twoFixed;
  res.stats = g.stats;
  for (std::size_t t = 0; t < d.trees.size(); ++t) res.solution.orders[static_cast<int>(t)] = full.orders.at(static_cast<int>(t));
  for (const auto& [key, val] : full.qAssignment)
    if (static_cast<std::size_t>(key.first) < d.trees.size()) res.solution.qAssignment[key] = val;
  if (!verify_solution(d, res.solution))
    throw Error(ErrorCode::InternalInconsistency, "extended orders fail verification");
  return res;
}

bool verify_solution(const Instance& d, const Solution& s) {
  for (std::size_t t = 0; t < d.trees.size(); ++t) {
    auto it = s.orders.find(static_cast<int>(t));
    if (it == s.orders.end() || !represents(d.trees[t], it->second)) return false;
  }
  for (const auto& a : d.arcs) {
    const auto& parent = s.orders.at(a.source);
    const auto& child = s.orders.at(a.target);
    try {
      if (!is_suborder(parent, child, a.map, a.reversing)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace spqo
