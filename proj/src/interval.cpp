#include "spqo/interval.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>

#include "spqo/errors.hpp"

namespace spqo {

namespace {

std::vector<std::set<int>> adjacency_sets(const Graph& g) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  return adj;
}

bool intersects(const Interval& a, const Interval& b) { return a.left <= b.right && b.left <= a.right; }

// Linear order of clique labels read off a tree rooted at the special leaf.
std::vector<Label> linear_order(const CircularOrder& order) {
  const auto& seq = order.seq();
  auto it = std::find(seq.begin(), seq.end(), kSpecialLeaf);
  if (it == seq.end()) throw Error(ErrorCode::InvalidSpecialLeaf, "order without the special leaf");
  std::vector<Label> out(it + 1, seq.end());
  out.insert(out.end(), seq.begin(), it);
  return out;
}

// Tree over `labels` plus the special leaf keeping each set consecutive in
// the linear order that starts after the special leaf.
PQTree rooted_consecutive_tree(std::vector<Label> labels, const std::vector<std::vector<Label>>& family) {
  labels.push_back(kSpecialLeaf);
  std::sort(labels.begin(), labels.end());
  std::vector<std::vector<Label>> sets;
  for (auto s : family) {
    if (s.size() < 2) continue;
    std::sort(s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  return from_consecutive_sets(labels, sets);
}

// Per vertex the labels of the cliques containing it.
std::vector<std::vector<Label>> clique_membership(const Graph& g, const CliqueSet& cliques, int graph) {
  std::vector<std::vector<Label>> out(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (int v : cliques[c]) out[static_cast<std::size_t>(v)].push_back(clique_label(graph, static_cast<int>(c)));
  return out;
}

// I(v) = [first, last] position of the cliques containing v.
IntervalRep intervals_from_order(const Graph& g, const std::vector<std::vector<Label>>& membership,
                                 const std::map<Label, int>& position) {
  IntervalRep rep;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& l : membership[static_cast<std::size_t>(v)]) {
      lo = std::min(lo, position.at(l));
      hi = std::max(hi, position.at(l));
    }
    rep[g.names[static_cast<std::size_t>(v)]] = {static_cast<double>(lo), static_cast<double>(hi)};
  }
  return rep;
}

}  // namespace

std::vector<int> lex_bfs(const Graph& g) {
  const int n = g.vertex_count();
  const auto adj = adjacency_sets(g);
  // partition refinement over an ordered list of classes
  std::vector<std::vector<int>> classes;
  if (n > 0) {
    classes.emplace_back();
    for (int v = n - 1; v >= 0; --v) classes.back().push_back(v);
  }
  std::vector<int> order;
  while (!classes.empty()) {
    int v = classes.back().back();
    classes.back().pop_back();
    if (classes.back().empty()) classes.pop_back();
    order.push_back(v);
    // split every class into non-neighbours and neighbours, neighbours later
    std::vector<std::vector<int>> next;
    for (auto& c : classes) {
      std::vector<int> in, out;
      for (int w : c) (adj[static_cast<std::size_t>(v)].count(w) ? in : out).push_back(w);
      if (!out.empty()) next.push_back(std::move(out));
      if (!in.empty()) next.push_back(std::move(in));
    }
    classes = std::move(next);
  }
  return order;
}

bool is_perfect_elimination_order(const Graph& g, const std::vector<int>& order) {
  const auto adj = adjacency_sets(g);
  std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  for (int v : order) {
    // later neighbours must be adjacent to the earliest of them
    int parent = -1;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
          (parent < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(parent)]))
        parent = w;
    if (parent < 0) continue;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (w != parent && pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
          !adj[static_cast<std::size_t>(parent)].count(w))
        return false;
  }
  return true;
}

std::optional<CliqueSet> maximal_cliques(const Graph& g) {
  auto order = lex_bfs(g);
  std::reverse(order.begin(), order.end());
  if (!is_perfect_elimination_order(g, order)) return std::nullopt;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const auto adj = adjacency_sets(g);
  std::vector<int> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> later(n);
  std::vector<int> parent(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    for (int w : adj[v])
      if (pos[static_cast<std::size_t>(w)] > pos[v]) {
        later[v].push_back(w);
        if (parent[v] < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(parent[v])]) parent[v] = w;
      }
  // {v} + later(v) is maximal unless it is absorbed by a child w with
  // later(w) = {v} + later(v)
  std::vector<char> absorbed(n, 0);
  for (std::size_t w = 0; w < n; ++w)
    if (parent[w] >= 0 && later[w].size() == later[static_cast<std::size_t>(parent[w])].size() + 1)
      absorbed[static_cast<std::size_t>(parent[w])] = 1;
  CliqueSet cliques;
  for (std::size_t v = 0; v < n; ++v) {
    if (absorbed[v]) continue;
    auto c = later[v];
    c.push_back(static_cast<int>(v));
    std::sort(c.begin(), c.end());
    cliques.push_back(std::move(c));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

bool represents_graph(const Graph& g, const IntervalRep& rep) {
  if (rep.size() != static_cast<std::size_t>(g.vertex_count())) return false;
  std::vector<Interval> iv;
  for (const auto& name : g.names) {
    auto it = rep.find(name);
    if (it == rep.end() || it->second.left > it->second.right) return false;
    iv.push_back(it->second);
  }
  const auto adj = adjacency_sets(g);
  for (std::size_t u = 0; u < iv.size(); ++u)
    for (std::size_t v = u + 1; v < iv.size(); ++v)
      if (intersects(iv[u], iv[v]) != (adj[u].count(static_cast<int>(v)) > 0)) return false;
  return true;
}

Graph intersection_graph(const IntervalRep& rep) {
  Graph g;
  std::vector<Interval> iv;
  for (const auto& [name, i] : rep) {
    g.add_vertex(name);
    iv.push_back(i);
  }
  for (std::size_t u = 0; u < iv.size(); ++u)
    for (std::size_t v = u + 1; v < iv.size(); ++v)
      if (intersects(iv[u], iv[v])) g.add_edge(static_cast<int>(u), static_cast<int>(v));
  return g;
}

Label clique_label(int graph, int index) { return std::to_string(graph) + ":" + std::to_string(index); }

std::optional<IntervalRep> recognize_interval(const Graph& g) {
  auto cliques = maximal_cliques(g);
  if (!cliques) return std::nullopt;
  std::vector<Label> labels;
  for (std::size_t c = 0; c < cliques->size(); ++c) labels.push_back(clique_label(1, static_cast<int>(c)));
  const auto membership = clique_membership(g, *cliques, 1);
  std::vector<Label> order = labels;
  if (labels.size() >= 2) {
    PQTree t = rooted_consecutive_tree(labels, membership);
    if (t.is_null()) return std::nullopt;
    order = linear_order(first_order(t));
  }
  std::map<Label, int> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i) + 1;
  return intervals_from_order(g, membership, position);
}

std::optional<SimultaneousIntervalInstance> simultaneous_interval_instance(const Graph& g1, const Graph& g2) {
  auto c1 = maximal_cliques(g1), c2 = maximal_cliques(g2);
  if (!c1 || !c2) return std::nullopt;
  SimultaneousIntervalInstance out;
  out.first = *c1;
  out.second = *c2;
  const auto m1 = clique_membership(g1, *c1, 1), m2 = clique_membership(g2, *c2, 2);
  std::vector<Label> l1, l2;
  for (std::size_t c = 0; c < c1->size(); ++c) l1.push_back(clique_label(1, static_cast<int>(c)));
  for (std::size_t c = 0; c < c2->size(); ++c) l2.push_back(clique_label(2, static_cast<int>(c)));
  std::vector<Label> all = l1;
  all.insert(all.end(), l2.begin(), l2.end());
  std::vector<std::vector<Label>> common;
  for (int v = 0; v < g1.vertex_count(); ++v) {
    int w = g2.find(g1.names[static_cast<std::size_t>(v)]);
    if (w < 0) continue;
    auto s = m1[static_cast<std::size_t>(v)];
    s.insert(s.end(), m2[static_cast<std::size_t>(w)].begin(), m2[static_cast<std::size_t>(w)].end());
    common.push_back(std::move(s));
  }
  std::vector<PQTree> trees{rooted_consecutive_tree(all, common), rooted_consecutive_tree(l1, m1),
                            rooted_consecutive_tree(l2, m2)};
  std::vector<Arc> arcs;
  for (int target : {1, 2}) {
    Arc a;
    a.source = 0;
    a.target = target;
    for (const auto& l : trees[static_cast<std::size_t>(target)].labels()) a.map[l] = l;
    arcs.push_back(std::move(a));
  }
  out.instance = build_instance(std::move(trees), std::move(arcs));
  return out;
}

SimultaneousIntervalResult simultaneous_interval(const Graph& g1, const Graph& g2) {
  SimultaneousIntervalResult res;
  // equal intervals force equal adjacency among common vertices
  std::vector<std::string> common;
  for (const auto& n : g1.names)
    if (g2.find(n) >= 0) common.push_back(n);
  const Graph h1 = induced_subgraph(g1, common), h2 = induced_subgraph(g2, common);
  std::set<std::pair<std::string, std::string>> e1, e2;
  for (const auto& [u, v] : h1.edges) e1.insert(std::minmax(h1.names[static_cast<std::size_t>(u)], h1.names[static_cast<std::size_t>(v)]));
  for (const auto& [u, v] : h2.edges) e2.insert(std::minmax(h2.names[static_cast<std::size_t>(u)], h2.names[static_cast<std::size_t>(v)]));
  if (e1 != e2) {
    res.status = SolveStatus::Infeasible;
    res.reason = "CommonEdgesDiffer";
    return res;
  }
  auto inst = simultaneous_interval_instance(g1, g2);
  if (!inst) {
    res.status = SolveStatus::Infeasible;
    res.reason = "NotChordal";
    return res;
  }
  auto solved = solve(inst->instance);
  if (solved.status != SolveStatus::Feasible) {
    res.status = solved.status;
    res.reason = solved.status == SolveStatus::Infeasible ? to_string(solved.reason) : solved.message;
    return res;
  }
  res.cliqueOrder = linear_order(solved.solution.orders.at(0));
  std::map<Label, int> position;
  for (std::size_t i = 0; i < res.cliqueOrder.size(); ++i) position[res.cliqueOrder[i]] = static_cast<int>(i) + 1;
  auto m1 = clique_membership(g1, inst->first, 1), m2 = clique_membership(g2, inst->second, 2);
  // a common vertex spans its cliques of both graphs
  auto merged1 = m1, merged2 = m2;
  for (int v = 0; v < g1.vertex_count(); ++v) {
    int w = g2.find(g1.names[static_cast<std::size_t>(v)]);
    if (w < 0) continue;
    auto& a = merged1[static_cast<std::size_t>(v)];
    auto& b = merged2[static_cast<std::size_t>(w)];
    a.insert(a.end(), m2[static_cast<std::size_t>(w)].begin(), m2[static_cast<std::size_t>(w)].end());
    b.insert(b.end(), m1[static_cast<std::size_t>(v)].begin(), m1[static_cast<std::size_t>(v)].end());
  }
  res.first = intervals_from_order(g1, merged1, position);
  res.second = intervals_from_order(g2, merged2, position);
  return res;
}

std::vector<Endpoint> signature(const IntervalRep& rep) {
  std::vector<std::pair<double, Endpoint>> points;
  for (const auto& [name, iv] : rep) {
    points.push_back({iv.left, {name, false}});
    points.push_back({iv.right, {name, true}});
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Endpoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].first == points[i - 1].first)
      throw Error(ErrorCode::InvalidRepresentation, "endpoints of " + points[i - 1].second.vertex + " and " +
                                                        points[i].second.vertex + " coincide");
    out.push_back(points[i].second);
  }
  return out;
}

std::vector<Endpoint> mirrored(const std::vector<Endpoint>& sig) {
  std::vector<Endpoint> out(sig.rbegin(), sig.rend());
  for (auto& e : out) e.right = !e.right;
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& names) {
  std::set<std::string> keep(names.begin(), names.end());
  Graph h;
  for (const auto& n : g.names)
    if (keep.count(n)) h.add_vertex(n);
  for (const auto& [u, v] : g.edges) {
    const auto& a = g.names[static_cast<std::size_t>(u)];
    const auto& b = g.names[static_cast<std::size_t>(v)];
    if (keep.count(a) && keep.count(b)) h.add_edge(h.find(a), h.find(b));
  }
  return h;
}

ExtensionGadget build_extension_gadget(const Graph& h, const IntervalRep& rep, const std::string& prefix) {
  if (!represents_graph(h, rep)) throw Error(ErrorCode::InvalidRepresentation, "intervals do not represent the graph");
  const auto sig = signature(rep);
  ExtensionGadget out;
  // endpoint t (1-based) sits at 8t; markers and connectors fill the gaps
  std::map<std::string, Interval> scaled;
  for (std::size_t t = 0; t < sig.size(); ++t) {
    auto& iv = scaled[sig[t].vertex];
    (sig[t].right ? iv.right : iv.left) = 8.0 * static_cast<double>(t + 1);
  }
  std::vector<std::pair<std::string, Interval>> all;
  for (const auto& name : h.names) {
    all.emplace_back(name, scaled.at(name));
    out.provenance.emplace_back(GadgetRole::Original, 0);
  }
  const int ends = static_cast<int>(sig.size());
  for (int t = 1; t <= ends; ++t) {
    const double p = 8.0 * t;
    const auto idx = std::to_string(t);
    all.emplace_back(prefix + "L" + idx, Interval{p - 3, p - 2});
    out.provenance.emplace_back(GadgetRole::Left, t);
    all.emplace_back(prefix + "M" + idx, Interval{p - 2, p + 2});
    out.provenance.emplace_back(GadgetRole::Middle, t);
    all.emplace_back(prefix + "R" + idx, Interval{p + 2, p + 3});
    out.provenance.emplace_back(GadgetRole::Right, t);
    if (t < ends) {
      all.emplace_back(prefix + "C" + idx, Interval{p + 3, p + 5});
      out.provenance.emplace_back(GadgetRole::Connector, t);
    }
  }
  for (const auto& [name, iv] : all) {
    if (out.graph.find(name) >= 0) throw Error(ErrorCode::InputError, "gadget vertex name " + name + " is taken");
    out.graph.add_vertex(name);
    out.representation[name] = iv;
  }
  for (std::size_t u = 0; u < all.size(); ++u)
    for (std::size_t v = u + 1; v < all.size(); ++v)
      if (intersects(all[u].second, all[v].second)) out.graph.add_edge(static_cast<int>(u), static_cast<int>(v));
  return out;
}

ExtensionResult extend_partial_interval(const Graph& g, const IntervalRep& prescribed) {
  ExtensionResult res;
  std::vector<std::string> names;
  for (const auto& [name, iv] : prescribed) {
    if (g.find(name) < 0) throw Error(ErrorCode::InputError, "prescribed vertex " + name + " is not in the graph");
    names.push_back(name);
  }
  if (prescribed.empty()) {
    auto rep = recognize_interval(g);
    if (!rep) {
      res.status = SolveStatus::Infeasible;
      res.reason = "NotInterval";
    } else {
      res.representation = std::move(*rep);
    }
    return res;
  }
  const Graph h = induced_subgraph(g, names);
  std::string prefix = "_";
  while (std::any_of(g.names.begin(), g.names.end(), [&](const auto& n) { return n.rfind(prefix, 0) == 0; }))
    prefix += "_";
  const auto gadget = build_extension_gadget(h, prescribed, prefix);
  auto sim = simultaneous_interval(g, gadget.graph);
  if (sim.status != SolveStatus::Feasible) {
    res.status = sim.status;
    res.reason = sim.reason;
    return res;
  }
  IntervalRep grid = std::move(sim.first);
  IntervalRep onH;
  for (const auto& n : names) onH[n] = grid.at(n);
  const auto want = signature(prescribed);
  std::vector<Endpoint> got;
  try {
    got = signature(onH);
  } catch (const Error&) {
    throw Error(ErrorCode::InternalInconsistency, "gadget left coinciding endpoints on the prescribed vertices");
  }
  if (got != want) {
    if (got != mirrored(want)) throw Error(ErrorCode::InternalInconsistency, "gadget did not force the signature");
    double top = 0;
    for (const auto& [n, iv] : grid) top = std::max(top, iv.right);
    for (auto& [n, iv] : grid) iv = {top + 1 - iv.right, top + 1 - iv.left};
  }
  // strictly increasing map from grid coordinates onto the prescribed ones
  std::vector<double> anchorsFrom, anchorsTo;
  for (const auto& e : want) {
    anchorsFrom.push_back(e.right ? grid.at(e.vertex).right : grid.at(e.vertex).left);
    anchorsTo.push_back(e.right ? prescribed.at(e.vertex).right : prescribed.at(e.vertex).left);
  }
  std::set<double> coords;
  for (const auto& [n, iv] : grid) {
    coords.insert(iv.left);
    coords.insert(iv.right);
  }
  std::map<double, double> image;
  for (std::size_t t = 0; t < anchorsFrom.size(); ++t) image[anchorsFrom[t]] = anchorsTo[t];
  for (double x : coords) {
    if (x < anchorsFrom.front()) image[x] = anchorsTo.front() - (anchorsFrom.front() - x);
    if (x > anchorsFrom.back()) image[x] = anchorsTo.back() + (x - anchorsFrom.back());
  }
  for (std::size_t t = 0; t + 1 < anchorsFrom.size(); ++t) {
    std::vector<double> inside;
    for (auto it = coords.upper_bound(anchorsFrom[t]); it != coords.end() && *it < anchorsFrom[t + 1]; ++it)
      inside.push_back(*it);
    const double lo = anchorsTo[t], gap = anchorsTo[t + 1] - anchorsTo[t];
    const double slots = static_cast<double>(inside.size() + 1);
    for (std::size_t j = 0; j < inside.size(); ++j) {
      double offset = gap * static_cast<double>(j + 1) / slots;
      // integral placement when the gap has room for it
      if (gap >= slots && std::floor(lo) == lo && std::floor(gap) == gap) offset = std::floor(offset);
      image[inside[j]] = lo + offset;
    }
  }
  for (auto& [n, iv] : grid) iv = {image.at(iv.left), image.at(iv.right)};
  for (const auto& [n, iv] : prescribed) grid[n] = iv;
  res.representation = std::move(grid);
  return res;
}

}  // namespace spqo
