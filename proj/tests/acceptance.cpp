// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; --serial disables the OpenMP sweep.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "brute.hpp"
#include "fixtures.hpp"
#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"
#include "spqo/expansion.hpp"
#include "spqo/generators.hpp"
#include "spqo/instance.hpp"
#include "spqo/interval.hpp"
#include "spqo/oracle.hpp"
#include "spqo/pqtree.hpp"
#include "spqo/solver.hpp"
#include "spqo/sweep.hpp"

using namespace spqo;

namespace {

// Pinned limits. Set equalities and decisions have zero tolerance.
constexpr int kC1Inputs = 600;
constexpr double kC1Seconds = 30;
constexpr int kC2Trees = 600;
constexpr int kC3RandomPerms = 1200;
constexpr double kC3Seconds = 30;
constexpr int kC4Instances = 300;
constexpr double kC4Seconds = 60;
constexpr int kC5Instances = 100;
constexpr int kC5EmbeddingInstances = 60;
constexpr int kC5CyclicInstances = 60;
constexpr int kC5IntervalInstances = 100;
constexpr int kC5ParallelInstances = 60;
constexpr std::array<std::size_t, 4> kC6Sizes{2000, 4000, 8000, 16000};
constexpr int kC6Repeats = 5;
constexpr double kC6MaxRatio = 4.5;
constexpr double kC6RunSeconds = 300;
constexpr int kC7EdgeLimit = 9;
constexpr int kC7RandomGraphs = 200;
constexpr int kC7RandomEdges = 14;
constexpr std::uint64_t kC7MaxRotations = 100000;
constexpr int kC7ConstraintRounds = 2;
constexpr int kC7SefePairs = 150;
constexpr int kC8RecognitionVertices = 6;
constexpr int kC8PairVertices = 6;
constexpr int kC8ExtensionVertices = 5;
constexpr int kC8Random = 300;
constexpr int kC8RandomVertices = 8;
constexpr int kC9Leaves = 6;
constexpr int kC9Triples = 5;
constexpr int kC10Runs = 3;

SweepMode gMode = SweepMode::Parallel;

/// Counters and failure notes of one or more sweep items.
struct Tally {
  std::map<std::string, long long> n;
  std::vector<std::string> failures;

  void fail(const std::string& what) { failures.push_back(what); }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void add(const Tally& o) {
    for (const auto& [k, v] : o.n) n[k] += v;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Runs fn(i, tally) for i < count through the sweep helper, turning
/// exceptions into failures.
Tally run_items(std::size_t count, const std::function<void(std::size_t, Tally&)>& fn) {
  auto parts = sweep(count, [&](std::size_t i) {
    Tally t;
    try {
      fn(i, t);
    } catch (const std::exception& e) {
      t.fail("item " + std::to_string(i) + ": " + e.what());
    }
    return t;
  }, gMode);
  Tally all;
  for (const auto& p : parts) all.add(p);
  return all;
}

std::string failures_text(const Tally& t) {
  if (t.failures.empty()) return "";
  std::ostringstream os;
  os << "; " << t.failures.size() << " failures, first: " << t.failures.front();
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::vector<CircularOrder> orders_of(const PQTree& t) { return enumerate_orders(t, 1u << 20); }

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  auto t = run_items(kC1Inputs, [](std::size_t i, Tally& t) {
    std::mt19937 rng(static_cast<unsigned>(1000 + i));
    const int n = 3 + static_cast<int>(i % 6);
    auto leaves = brute::letters(n);
    auto fam = brute::random_family(rng, leaves, 1 + static_cast<int>(i % 4), i % 3 == 0);
    auto tree = from_consecutive_sets(leaves, fam);
    auto expect = brute::filter(all_circular_orders(leaves), fam);
    ++t.n["inputs"];
    if (expect.empty()) {
      ++t.n["null"];
      t.check(tree.is_null(), "input " + std::to_string(i) + " should be null");
    } else {
      t.check(!tree.is_null() && orders_of(tree) == expect, "input " + std::to_string(i) + " order set differs");
    }
  });
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = t.failures.empty() && t.n["inputs"] >= 500 && secs <= kC1Seconds;
  o.detail = std::to_string(t.n["inputs"]) + " inputs (" + std::to_string(t.n["null"]) + " null), " + fixed(secs) +
             " s of " + fixed(kC1Seconds, 0) + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 2

void check_bounds(const PQTree& t, Tally& tally, const std::string& where) {
  ++tally.n["trees"];
  if (t.variant() != Variant::Normal || t.leaf_count() < 3) return;
  const std::size_t n1 = t.leaf_count();
  tally.check(t.inner_count() <= n1 - 2, where + ": too many inner nodes");
  tally.check(t.edge_count() <= 2 * n1 - 3, where + ": too many edges");
}

Outcome criterion2() {
  auto t = run_items(kC2Trees, [](std::size_t i, Tally& t) {
    std::mt19937 rng(static_cast<unsigned>(2000 + i));
    const int n = 3 + static_cast<int>(i % 6);
    const auto leaves = brute::letters(n);
    const std::string id = "tree " + std::to_string(i);
    auto tree = from_consecutive_sets(leaves, brute::random_family(rng, leaves, 1 + static_cast<int>(i % 3), i % 4 == 0));
    check_bounds(tree, t, id);
    const auto ot = orders_of(tree);
    for (const auto& o : ot) t.check(std::binary_search(ot.begin(), ot.end(), o.reversed()), id + ": not closed under reversal");

    auto keep = brute::random_subset(rng, leaves, 0, leaves.size());
    auto p = project(tree, keep);
    check_bounds(p, t, id + " projection");
    if (!tree.is_null()) t.check(orders_of(p) == brute::restrict_all(ot, keep), id + ": projection");

    auto s = brute::random_subset(rng, leaves, 2, leaves.size() - 1);
    auto r = reduce(tree, s);
    check_bounds(r, t, id + " reduction");
    auto expectR = brute::filter(ot, {s});
    t.check(expectR.empty() ? r.is_null() : orders_of(r) == expectR, id + ": reduction");

    auto u = from_consecutive_sets(leaves, brute::random_family(rng, leaves, 2, true));
    auto c = intersect(tree, u);
    check_bounds(u, t, id + " operand");
    check_bounds(c, t, id + " intersection");
    auto ou = orders_of(u);
    std::vector<CircularOrder> both;
    std::set_intersection(ot.begin(), ot.end(), ou.begin(), ou.end(), std::back_inserter(both));
    t.check(both.empty() ? c.is_null() : orders_of(c) == both, id + ": intersection");
    ++t.n["inputs"];
  });
  Outcome o;
  o.pass = t.failures.empty() && t.n["inputs"] >= 500;
  o.detail = std::to_string(t.n["inputs"]) + " random trees, " + std::to_string(t.n["trees"]) +
             " constructed trees bound-checked" + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 3

bool stable_exists(const Permutation& p, bool reversing) {
  for (const auto& o : all_circular_orders(p.domain())) {
    auto img = apply(p, o);
    if (img == (reversing ? o.reversed() : o)) return true;
  }
  return false;
}

Outcome criterion3() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Permutation> perms;
  for (int n = 1; n <= 6; ++n) {
    auto dom = brute::letters(n), img = dom;
    do {
      LabelMap m;
      for (std::size_t i = 0; i < dom.size(); ++i) m[dom[i]] = img[i];
      perms.emplace_back(m);
    } while (std::next_permutation(img.begin(), img.end()));
  }
  const std::size_t exhaustive = perms.size();
  for (int i = 0; i < kC3RandomPerms; ++i) {
    std::mt19937 rng(static_cast<unsigned>(3000 + i));
    auto dom = brute::letters(7), img = dom;
    std::shuffle(img.begin(), img.end(), rng);
    LabelMap m;
    for (std::size_t k = 0; k < dom.size(); ++k) m[dom[k]] = img[k];
    perms.emplace_back(m);
  }
  auto t = run_items(perms.size(), [&](std::size_t i, Tally& t) {
    const auto& p = perms[i];
    for (bool rev : {false, true}) {
      auto w = rev ? order_reversing_witness(p) : order_preserving_witness(p);
      const bool exists = stable_exists(p, rev);
      t.check(w.has_value() == exists, "permutation " + std::to_string(i) + (rev ? " reversing" : " preserving"));
      if (w) t.check(apply(p, *w) == (rev ? w->reversed() : *w), "permutation " + std::to_string(i) + ": bad witness");
      t.n["witnesses"] += w.has_value();
    }
  });
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = t.failures.empty() && perms.size() >= 1000 && secs <= kC3Seconds;
  o.detail = std::to_string(perms.size()) + " permutations (" + std::to_string(exhaustive) +
             " exhaustive up to 6 labels), " + std::to_string(t.n["witnesses"]) + " witnesses, " + fixed(secs) +
             " s of " + fixed(kC3Seconds, 0) + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  auto t = run_items(kC4Instances, [](std::size_t i, Tally& t) {
    std::mt19937_64 rng(4000 + i);
    const std::string id = "instance " + std::to_string(i);
    auto d = random_two_fixed_instance(rng);
    if (!d) {
      t.fail(id + ": generator gave up");
      return;
    }
    for (const auto& a : d->arcs) t.n[a.reversing ? "reversing arcs" : "normal arcs"]++;
    auto res = solve(*d);
    t.check(res.twoFixed, id + ": not reported 2-fixed");
    if (res.status == SolveStatus::NotSupported) {
      t.fail(id + ": " + res.message);
      return;
    }
    auto oracle = brute_force_simultaneous_orders(*d);
    t.check((res.status == SolveStatus::Feasible) == oracle.has_value(), id + ": decision differs from oracle");
    if (res.status == SolveStatus::Feasible) {
      ++t.n["feasible"];
      t.check(verify_solution(*d, res.solution), id + ": solution fails verification");
    } else {
      ++t.n["infeasible"];
    }
  });
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = t.failures.empty() && secs <= kC4Seconds;
  o.detail = std::to_string(kC4Instances) + " instances (" + std::to_string(t.n["feasible"]) + " feasible, " +
             std::to_string(t.n["infeasible"]) + " infeasible; " + std::to_string(t.n["normal arcs"]) + " normal and " +
             std::to_string(t.n["reversing arcs"]) + " reversing arcs), " + fixed(secs) + " s of " +
             fixed(kC4Seconds, 0) + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 5

// Star-like parent with two random arcs into one universal sink.
Instance parallel_arc_instance(std::mt19937_64& rng) {
  const auto parentLeaves = brute::letters(5 + static_cast<int>(rng() % 2));
  std::vector<Label> sinkLeaves;
  for (int k = 0, m = 4 + static_cast<int>(rng() % 2); k < m; ++k) sinkLeaves.push_back(std::to_string(k + 1));
  std::vector<std::vector<Label>> family;
  if (rng() % 2) family.push_back({parentLeaves.end() - 2, parentLeaves.end()});
  std::vector<PQTree> trees{from_consecutive_sets(parentLeaves, family), PQTree::universal(sinkLeaves)};
  std::vector<Arc> arcs;
  for (int a = 0; a < 2; ++a) {
    auto image = parentLeaves;
    std::shuffle(image.begin(), image.end(), rng);
    LabelMap map;
    for (std::size_t k = 0; k < sinkLeaves.size(); ++k) map[sinkLeaves[k]] = image[k];
    arcs.push_back({0, 1, map, rng() % 3 == 0});
  }
  return build_instance(std::move(trees), std::move(arcs));
}

// Recomputes the structural laws from the finished expansion graph.
void check_laws(const ExpansionGraph& g, Tally& t, const std::string& id) {
  if (g.nullTree >= 0) return;
  const auto& trees = g.instance.trees;
  std::map<std::pair<int, int>, int> resp;
  for (std::size_t x = 0; x < trees.size(); ++x) {
    const auto& prov = g.provenance[x];
    if (!prov.expansion) continue;
    const auto& tex = trees[x];
    const int degMu = trees[static_cast<std::size_t>(prov.respTree)].degree(prov.respNode);
    int k = 0, sum = 0;
    for (std::size_t v = 0; v < tex.nodes().size(); ++v)
      if (tex.nodes()[v].kind == NodeKind::P) {
        ++k;
        sum += tex.degree(static_cast<int>(v));
      }
    t.check(sum <= degMu + 2 * k - 2, id + ": degree inequality fails at tree " + std::to_string(x));
    int tree = prov.respTree, node = prov.respNode;
    while (g.provenance[static_cast<std::size_t>(tree)].expansion) {
      const auto& up = g.provenance[static_cast<std::size_t>(tree)];
      node = up.respNode;
      tree = up.respTree;
    }
    ++resp[{tree, node}];
  }
  for (const auto& [pn, count] : resp) {
    const int deg = trees[static_cast<std::size_t>(pn.first)].degree(pn.second);
    if (deg >= 3) t.check(count <= 3 * deg - 8, id + ": responsibility bound fails");
  }
  for (const auto& da : g.doubleArcs)
    t.check(g.instance.out_arcs(da.sink).empty(), id + ": double arc target is not a sink");
  t.n["expansion steps"] += static_cast<long long>(g.stats.expansionSteps);
  t.n["double arcs"] += static_cast<long long>(g.doubleArcs.size());
}

Outcome criterion5() {
  std::vector<Instance> extra;
  for (const auto& g : biconnected_graphs(8)) {
    if (static_cast<int>(extra.size()) >= kC5EmbeddingInstances) break;
    if (planar_embedding(g)) extra.push_back(pq_embedding_representation(g).instance);
  }
  // cyclic-ordering reductions with parallel arcs, where the expansion applies
  const std::size_t embeddingCount = extra.size();
  std::mt19937_64 rng(5500);
  for (int tries = 0; tries < 5000 && static_cast<int>(extra.size() - embeddingCount) < kC5CyclicInstances; ++tries) {
    const auto leaves = brute::letters(4 + static_cast<int>(rng() % 3));
    auto d = reduce_cyclic_ordering(leaves, random_triples(rng, leaves, 1 + static_cast<int>(rng() % 4)));
    try {
      build_expansion_graph(normalize(d));
      extra.push_back(std::move(d));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotOneCritical) throw;
    }
  }
  // simultaneous interval instances, whose arcs share sinks
  const std::size_t cyclicCount = extra.size() - embeddingCount;
  for (int tries = 0; tries < 5000 && static_cast<int>(extra.size() - embeddingCount - cyclicCount) < kC5IntervalInstances;
       ++tries) {
    auto pair = fixtures::random_interval_pair(rng, 3 + static_cast<int>(rng() % 6), tries % 4);
    if (!pair) continue;
    if (auto sim = simultaneous_interval_instance(pair->first, pair->second)) extra.push_back(sim->instance);
  }
  const std::size_t intervalCount = extra.size() - embeddingCount - cyclicCount;
  for (int k = 0; k < kC5ParallelInstances; ++k) extra.push_back(parallel_arc_instance(rng));
  std::vector<double> ratios(kC5Instances + extra.size(), 0.0);
  auto t = run_items(ratios.size(), [&](std::size_t i, Tally& t) {
    Instance d;
    if (i < static_cast<std::size_t>(kC5Instances)) {
      std::mt19937_64 rng(5000 + i);
      auto r = random_two_fixed_instance(rng);
      if (!r) throw std::runtime_error("generator gave up");
      d = *r;
    } else {
      d = extra[i - kC5Instances];
    }
    const std::string id = "instance " + std::to_string(i);
    const auto n = normalize(d);
    auto fifo = build_expansion_graph(n);
    ExpansionOptions shuffled;
    shuffled.shuffleSeed = 50000 + i;
    auto other = build_expansion_graph(n, shuffled);
    t.check(expansion_signature(fifo) == expansion_signature(other), id + ": processing order changes the result");
    check_laws(fifo, t, id);
    check_laws(other, t, id + " (shuffled)");
    ratios[i] = fifo.stats.ratio;
    ++t.n["builds"];
  });
  const double c = *std::max_element(ratios.begin(), ratios.end());
  Outcome o;
  o.pass = t.failures.empty();
  o.detail = std::to_string(kC5Instances) + " random, " + std::to_string(embeddingCount) + " embedding, " +
             std::to_string(cyclicCount) + " cyclic-ordering, " +
             std::to_string(intervalCount) + " interval and " + std::to_string(kC5ParallelInstances) +
             " parallel-arc instances, order-invariant; " + std::to_string(t.n["expansion steps"]) + " expansion steps, " +
             std::to_string(t.n["double arcs"]) + " double arcs; observed C = " + fixed(c, 3) + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  const std::size_t base = instance_size(scaling_instance(1));
  const std::size_t step = instance_size(scaling_instance(2)) - base;
  std::vector<double> medians;
  std::vector<std::size_t> actual;
  Outcome o;
  double slowest = 0;
  for (std::size_t target : kC6Sizes) {
    const int gadgets = static_cast<int>(std::max<std::size_t>(1, (target - std::min(target, base)) / step + 1));
    const Instance d = scaling_instance(gadgets);
    actual.push_back(instance_size(d));
    o.pass = o.pass && fixedness(normalize(d)).twoFixed;
    std::vector<double> times;
    for (int r = 0; r < kC6Repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      auto res = solve(d);
      times.push_back(seconds_since(start));
      o.pass = o.pass && res.status == SolveStatus::Feasible;
    }
    std::sort(times.begin(), times.end());
    slowest = std::max(slowest, times.back());
    medians.push_back(times[times.size() / 2]);
  }
  std::ostringstream os;
  os << "|N| =";
  for (auto n : actual) os << ' ' << n;
  os << ", median s =";
  for (double m : medians) os << ' ' << fixed(m, 4);
  os << ", ratios =";
  for (std::size_t i = 1; i < medians.size(); ++i) {
    const double ratio = medians[i] / medians[i - 1];
    o.pass = o.pass && ratio <= kC6MaxRatio;
    os << ' ' << fixed(ratio);
  }
  o.pass = o.pass && slowest <= kC6RunSeconds;
  os << " (limit " << fixed(kC6MaxRatio, 1) << "), slowest run " << fixed(slowest) << " s";
  o.detail = os.str();
  return o;
}

// ---------------------------------------------------------------- 7

bool euler_ok(const Graph& g, const RotationSystem& rot) {
  const long long faces = static_cast<long long>(trace_faces(g, rot).size());
  return g.vertex_count() - g.edge_count() + faces == 2 && is_planar_rotation(g, rot);
}

Outcome criterion7() {
  auto graphs = biconnected_graphs(kC7EdgeLimit);
  const std::size_t exhaustive = graphs.size();
  std::mt19937_64 rng(7000);
  while (graphs.size() < exhaustive + kC7RandomGraphs) {
    Graph g = random_biconnected_graph(rng, kC7RandomEdges);
    if (rotation_system_count(g) <= kC7MaxRotations) graphs.push_back(g);
  }
  auto t = run_items(graphs.size(), [&](std::size_t i, Tally& t) {
    const Graph& g = graphs[i];
    const std::string id = "graph " + std::to_string(i);
    const auto all = brute_force_embeddings(g);
    const bool planar = !all.empty();
    t.check(planar_embedding(g).has_value() == planar, id + ": planarity differs");
    if (!planar) {
      ++t.n["non-planar"];
      return;
    }
    const auto sets = fixtures::rotation_sets(g, all);
    const auto trees = embedding_trees(g, spqr_tree(g));
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto orders = enumerate_orders(trees[static_cast<std::size_t>(v)], 1u << 20);
      t.check(std::set<CircularOrder>(orders.begin(), orders.end()) == sets[static_cast<std::size_t>(v)],
              id + ": embedding tree of vertex " + g.names[static_cast<std::size_t>(v)]);
    }
    t.check(fixedness(normalize(pq_embedding_representation(g).instance)).twoFixed, id + ": representation not 2-fixed");
    std::mt19937_64 local(70000 + i);
    for (int round = 0; round < kC7ConstraintRounds; ++round) {
      auto cons = fixtures::random_constraints(local, g);
      auto res = solve_partially_pq_constrained(g, cons);
      t.check(res.twoFixed, id + ": constrained instance not 2-fixed");
      auto oracle = brute_force_pq_constrained(g, cons);
      t.check((res.status == SolveStatus::Feasible) == oracle.has_value(), id + ": constrained decision differs");
      if (res.status == SolveStatus::Feasible) {
        ++t.n["constrained feasible"];
        t.check(euler_ok(g, res.rotation) && fixtures::respects_constraints(res.rotation, cons),
                id + ": constrained rotation invalid");
      } else {
        ++t.n["constrained infeasible"];
      }
    }
    ++t.n["planar"];
  });
  auto s = run_items(kC7SefePairs, [](std::size_t i, Tally& t) {
    std::mt19937_64 rng(77000 + i);
    const std::string id = "pair " + std::to_string(i);
    Graph g1, g2;
    if (i % 3 == 0) {
      std::tie(g1, g2) = fixtures::wheel_pair(rng);
    } else {
      do g1 = random_biconnected_graph(rng, kC7EdgeLimit);
      while (rotation_system_count(g1) > kC7MaxRotations);
      g2 = fixtures::sefe_partner(rng, g1, kC7MaxRotations);
    }
    auto res = solve_sefe(g1, g2);
    if (res.status == SolveStatus::NotSupported) {
      ++t.n["sefe out of scope"];
      return;
    }
    t.check(res.twoFixed, id + ": SEFE instance not 2-fixed");
    auto oracle = brute_force_sefe(g1, g2);
    t.check((res.status == SolveStatus::Feasible) == oracle.has_value(), id + ": SEFE decision differs");
    if (res.status == SolveStatus::Feasible) {
      ++t.n["sefe feasible"];
      t.check(euler_ok(g1, res.first) && euler_ok(g2, res.second) && verify_sefe(g1, g2, res.first, res.second),
              id + ": SEFE rotations invalid");
    } else {
      ++t.n["sefe infeasible"];
    }
  });
  t.add(s);
  Outcome o;
  o.pass = t.failures.empty();
  o.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(kC7RandomGraphs) + " random graphs (" +
             std::to_string(t.n["planar"]) + " planar); constrained " + std::to_string(t.n["constrained feasible"]) +
             " yes / " + std::to_string(t.n["constrained infeasible"]) + " no; SEFE " +
             std::to_string(t.n["sefe feasible"]) + " yes / " + std::to_string(t.n["sefe infeasible"]) + " no / " +
             std::to_string(t.n["sefe out of scope"]) + " disconnected common graph" + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 8

void check_recognition(const Graph& g, Tally& t, const std::string& id) {
  auto rep = recognize_interval(g);
  t.check(rep.has_value() == brute_force_interval(g).has_value(), id + ": recognition differs");
  if (rep) t.check(represents_graph(g, *rep), id + ": bad representation");
  ++t.n[rep ? "recognized" : "rejected"];
}

void check_simultaneous(const Graph& g1, const Graph& g2, Tally& t, const std::string& id) {
  auto res = simultaneous_interval(g1, g2);
  if (res.status == SolveStatus::NotSupported) {
    t.fail(id + ": " + res.reason);
    return;
  }
  auto oracle = brute_force_simultaneous_interval(g1, g2);
  t.check((res.status == SolveStatus::Feasible) == oracle.has_value(), id + ": simultaneous decision differs");
  if (res.status != SolveStatus::Feasible) {
    ++t.n["sim no"];
    return;
  }
  ++t.n["sim yes"];
  bool ok = represents_graph(g1, res.first) && represents_graph(g2, res.second);
  for (const auto& [name, iv] : res.first)
    if (res.second.count(name)) ok = ok && iv == res.second.at(name);
  t.check(ok, id + ": simultaneous representations invalid");
}

void check_extension(const Graph& g, const IntervalRep& pres, Tally& t, const std::string& id) {
  auto res = extend_partial_interval(g, pres);
  if (res.status == SolveStatus::NotSupported) {
    t.fail(id + ": " + res.reason);
    return;
  }
  const bool oracle = brute_force_interval_extension(g, pres);
  t.check((res.status == SolveStatus::Feasible) == oracle, id + ": extension decision differs");
  if (res.status != SolveStatus::Feasible) {
    ++t.n["ext no"];
    return;
  }
  ++t.n["ext yes"];
  t.check(represents_graph(g, res.representation), id + ": extension does not represent the graph");
  t.check(fixtures::restrict_rep(res.representation, pres) == pres, id + ": prescribed intervals moved");
}

// Vertex set c0.. shared, a0.. only in g1, b0.. only in g2; the common part
// has the same edges in both graphs.
struct PairShape {
  int common, only1, only2;
  std::uint64_t commonMask, mask1, mask2;
};

int pair_count(int n) { return n * (n - 1) / 2; }

Graph pair_graph(const PairShape& s, bool first) {
  const int own = first ? s.only1 : s.only2;
  const std::string prefix = first ? "a" : "b";
  Graph g;
  for (int v = 0; v < s.common; ++v) g.add_vertex("c" + std::to_string(v));
  for (int v = 0; v < own; ++v) g.add_vertex(prefix + std::to_string(v));
  int bit = 0, ownBit = 0;
  const std::uint64_t ownMask = first ? s.mask1 : s.mask2;
  for (int u = 0; u < s.common + own; ++u)
    for (int v = u + 1; v < s.common + own; ++v) {
      if (v < s.common) {
        if (s.commonMask >> bit++ & 1) g.add_edge(u, v);
      } else if (ownMask >> ownBit++ & 1) {
        g.add_edge(u, v);
      }
    }
  return g;
}

std::vector<PairShape> all_pair_shapes(int maxVertices) {
  std::vector<PairShape> out;
  for (int c = 1; c <= maxVertices; ++c)
    for (int a = 0; c + a <= maxVertices; ++a)
      for (int b = 0; c + a + b <= maxVertices; ++b) {
        const int cm = pair_count(c), m1 = pair_count(c + a) - cm, m2 = pair_count(c + b) - cm;
        for (std::uint64_t x = 0; x < (1ULL << cm); ++x)
          for (std::uint64_t y = 0; y < (1ULL << m1); ++y)
            for (std::uint64_t z = 0; z < (1ULL << m2); ++z) out.push_back({c, a, b, x, y, z});
      }
  return out;
}

Outcome criterion8() {
  Tally t;
  // recognition on every graph up to the vertex limit
  std::vector<std::pair<int, std::uint64_t>> graphs;
  for (int n = 1; n <= kC8RecognitionVertices; ++n)
    for (std::uint64_t m = 0; m < (1ULL << pair_count(n)); ++m) graphs.emplace_back(n, m);
  t.add(run_items(graphs.size(), [&](std::size_t i, Tally& t) {
    check_recognition(graph_from_edge_mask(graphs[i].first, graphs[i].second), t, "graph " + std::to_string(i));
  }));
  // simultaneous on every pair up to the vertex limit
  const auto shapes = all_pair_shapes(kC8PairVertices);
  t.add(run_items(shapes.size(), [&](std::size_t i, Tally& t) {
    check_simultaneous(pair_graph(shapes[i], true), pair_graph(shapes[i], false), t, "pair " + std::to_string(i));
  }));
  // extension on every graph and vertex subset, one sampled prescription each
  std::vector<std::tuple<int, std::uint64_t, unsigned>> subsets;
  for (int n = 1; n <= kC8ExtensionVertices; ++n)
    for (std::uint64_t m = 0; m < (1ULL << pair_count(n)); ++m)
      for (unsigned s = 1; s < (1u << n); ++s) subsets.emplace_back(n, m, s);
  t.add(run_items(subsets.size(), [&](std::size_t i, Tally& t) {
    const auto [n, m, s] = subsets[i];
    const Graph g = graph_from_edge_mask(n, m);
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) names.push_back(g.names[static_cast<std::size_t>(v)]);
    std::mt19937_64 rng(800000 + i);
    auto pres = fixtures::random_prescription_on(rng, g, names);
    if (!pres) {
      ++t.n["ext skipped"];
      return;
    }
    check_extension(g, *pres, t, "subset " + std::to_string(i));
  }));
  const Tally exhaustive = t;
  // random cases with more vertices
  t.add(run_items(kC8Random, [](std::size_t i, Tally& t) {
    std::mt19937_64 rng(8000 + i);
    const int n = 2 + static_cast<int>(rng() % (kC8RandomVertices - 1));
    const std::string id = "random " + std::to_string(i);
    check_recognition(random_graph(rng, n, 0.5), t, id);
    if (auto pair = fixtures::random_interval_pair(rng, n, static_cast<int>(i % 4)))
      check_simultaneous(pair->first, pair->second, t, id);
    Graph g = rng() % 2 ? random_graph(rng, n, 0.5) : intersection_graph(random_intervals(rng, fixtures::vertex_names(n)));
    if (auto pres = fixtures::random_prescription(rng, g)) check_extension(g, *pres, t, id);
    // gadget cardinalities
    auto rep = random_intervals(rng, fixtures::vertex_names(n));
    auto gadget = build_extension_gadget(intersection_graph(rep), rep);
    int markers = 0, connectors = 0;
    for (const auto& [role, idx] : gadget.provenance) {
      markers += role == GadgetRole::Left || role == GadgetRole::Middle || role == GadgetRole::Right;
      connectors += role == GadgetRole::Connector;
    }
    t.check(n + markers == 7 * n && connectors == 2 * n - 1 && gadget.graph.vertex_count() == 9 * n - 1,
            id + ": gadget cardinalities");
    t.check(represents_graph(gadget.graph, gadget.representation), id + ": gadget representation");
    ++t.n["gadgets"];
  }));
  Outcome o;
  o.pass = t.failures.empty();
  o.detail = "recognition " + std::to_string(t.n["recognized"]) + " yes / " + std::to_string(t.n["rejected"]) +
             " no; simultaneous " + std::to_string(t.n["sim yes"]) + " yes / " + std::to_string(t.n["sim no"]) +
             " no; extension " + std::to_string(t.n["ext yes"]) + " yes / " + std::to_string(t.n["ext no"]) + " no (" +
             std::to_string(exhaustive.n.count("ext skipped") ? exhaustive.n.at("ext skipped") : 0) +
             " subsets without a sampled prescription); " + std::to_string(t.n["gadgets"]) + " gadgets" +
             failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
  struct Case {
    int leaves;
    std::vector<int> triples;
  };
  std::vector<std::vector<std::array<Label, 3>>> triplesOf(kC9Leaves + 1);
  std::vector<Case> cases;
  for (int n = 3; n <= kC9Leaves; ++n) {
    const auto l = brute::letters(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          triplesOf[static_cast<std::size_t>(n)].push_back({l[a], l[b], l[c]});
          triplesOf[static_cast<std::size_t>(n)].push_back({l[a], l[c], l[b]});
        }
    const int m = static_cast<int>(triplesOf[static_cast<std::size_t>(n)].size());
    // every subset of at most kC9Triples triples, as ascending index lists
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
      cases.push_back({n, pick});
      if (static_cast<int>(pick.size()) == kC9Triples) return;
      for (int k = from; k < m; ++k) {
        pick.push_back(k);
        rec(k + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  auto t = run_items(cases.size(), [&](std::size_t i, Tally& t) {
    const auto& c = cases[i];
    std::vector<std::array<Label, 3>> delta;
    for (int k : c.triples) delta.push_back(triplesOf[static_cast<std::size_t>(c.leaves)][static_cast<std::size_t>(k)]);
    const auto leaves = brute::letters(c.leaves);
    const bool oracle = brute_force_cyclic_ordering(leaves, delta).has_value();
    ++t.n[oracle ? "oracle yes" : "oracle no"];
    const auto res = solve(reduce_cyclic_ordering(leaves, delta));
    if (res.status == SolveStatus::NotSupported) {
      ++t.n["not supported"];
      return;
    }
    if ((res.status == SolveStatus::Feasible) == oracle) {
      ++t.n["agree"];
    } else {
      t.fail("case " + std::to_string(i) + ": decision differs");
    }
  });
  Outcome o;
  o.pass = t.n["agree"] == static_cast<long long>(cases.size());
  o.detail = std::to_string(cases.size()) + " instances (" + std::to_string(t.n["oracle yes"]) + " orderable): " +
             std::to_string(t.n["agree"]) + " decided and agreeing, " + std::to_string(t.n["not supported"]) +
             " rejected as not 1-critical, " +
             std::to_string(static_cast<long long>(cases.size()) - t.n["agree"] - t.n["not supported"]) +
             " disagreeing" + failures_text(t);
  return o;
}

// ---------------------------------------------------------------- 10

struct Run {
  int code = -1;
  std::string output;
  bool operator==(const Run&) const = default;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "cd '" SPQO_GOLDEN_DIR "' && '" SPQO_CLI_PATH "' " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome criterion10() {
  std::ifstream manifest(SPQO_GOLDEN_DIR "/manifest.txt");
  Outcome o;
  if (!manifest) return {false, "golden manifest missing"};
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    int expected;
    in >> expected;
    std::string args;
    std::getline(in, args);
    lines.emplace_back(expected, args);
  }
  std::set<std::string> subcommands;
  Tally t;
  for (const auto& [expected, args] : lines) {
    subcommands.insert(args.substr(1, args.find(' ', 1) - 1));
    const Run first = run_cli(args);
    t.check(first.code == expected, args + ": exit " + std::to_string(first.code) + ", expected " + std::to_string(expected));
    for (int r = 1; r < kC10Runs; ++r) t.check(run_cli(args) == first, args + ": output changed between runs");
  }
  o.pass = t.failures.empty() && !lines.empty();
  o.detail = std::to_string(lines.size()) + " golden inputs over " + std::to_string(subcommands.size()) +
             " subcommands, " + std::to_string(kC10Runs) + " runs each" + failures_text(t);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
      {"PQ-tree semantics", criterion1},         {"operation algebra", criterion2},
      {"permutation witnesses", criterion3},     {"solver vs oracle", criterion4},
      {"expansion-graph laws", criterion5},      {"quadratic scaling", criterion6},
      {"planarity applications", criterion7},    {"interval suite", criterion8},
      {"cyclic-ordering reduction", criterion9}, {"CLI determinism", criterion10}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--serial") {
      gMode = SweepMode::Serial;
    } else {
      selected.insert(std::stoi(a));
    }
  }
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("aborted: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[k].first << "): " << o.detail
              << " [" << fixed(seconds_since(start), 1) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
