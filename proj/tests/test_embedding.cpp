#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "fixtures.hpp"
#include "spqo/embedding.hpp"
#include "spqo/errors.hpp"
#include "spqo/generators.hpp"
#include "spqo/oracle.hpp"

using namespace spqo;

using fixtures::parse;
using fixtures::random_constraints;
using fixtures::rotation_sets;
using fixtures::sefe_partner;
using fixtures::wheel_pair;

TEST(Graph, ParsesEdgeListsAndRejectsParallelEdges) {
  auto g = parse("# triangle\na b\nb c  # comment\n\nc a\n");
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.edge_count(), 3);
  EXPECT_TRUE(is_biconnected(g));
  EXPECT_THROW(parse("a b\nb a\n"), Error);
  EXPECT_THROW(parse("a a\n"), Error);
  EXPECT_THROW(parse("a b c\n"), Error);
}

TEST(Graph, BlocksOfTwoTrianglesAndABridge) {
  auto g = parse("a b\nb c\nc a\nc d\nd e\ne c\ne f\n");
  auto blocks = biconnected_components(g);
  ASSERT_EQ(blocks.size(), 3u);
  std::multiset<std::size_t> sizes;
  for (const auto& b : blocks) sizes.insert(b.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 3, 3}));
}

TEST(Spqr, CycleIsOneSNodeAndK4OneRNode) {
  auto c = parse("a b\nb c\nc d\nd e\ne a\n");
  auto t = spqr_tree(c);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].kind, SpqrKind::S);
  auto k4 = parse("a b\na c\na d\nb c\nb d\nc d\n");
  auto r = spqr_tree(k4);
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_EQ(r.nodes[0].kind, SpqrKind::R);
  for (const auto& tree : embedding_trees(k4, r)) {
    EXPECT_EQ(tree.leaf_count(), 3u);
  }
}

TEST(Spqr, RoundTripAndNodeShapes) {
  for (const auto& g : biconnected_graphs(8)) {
    if (!planar_embedding(g)) {
      EXPECT_THROW(spqr_tree(g), Error);
      continue;
    }
    auto t = spqr_tree(g);
    std::multiset<int> reals;
    for (std::size_t n = 0; n < t.nodes.size(); ++n) {
      const auto& node = t.nodes[n];
      for (std::size_t i = 0; i < node.edges.size(); ++i) {
        const auto& e = node.edges[i];
        if (e.real >= 0) {
          reals.insert(e.real);
          continue;
        }
        const auto& twin = t.nodes[static_cast<std::size_t>(e.twinNode)].edges[static_cast<std::size_t>(e.twinEdge)];
        EXPECT_EQ(twin.twinNode, static_cast<int>(n));
        EXPECT_EQ(twin.twinEdge, static_cast<int>(i));
        EXPECT_EQ(std::minmax(twin.u, twin.v), std::minmax(e.u, e.v));
      }
      if (node.kind == SpqrKind::P) {
        EXPECT_EQ(node.vertices.size(), 2u);
        EXPECT_GE(node.edges.size(), 3u);
      }
      if (node.kind == SpqrKind::S) EXPECT_EQ(node.edges.size(), node.vertices.size());
      if (node.kind == SpqrKind::R) EXPECT_GE(node.vertices.size(), 4u);
    }
    std::multiset<int> expected;
    for (int e = 0; e < g.edge_count(); ++e) expected.insert(e);
    EXPECT_EQ(reals, expected);
  }
}

TEST(Embedding, PlanarityAgreesWithExhaustiveSearch) {
  int nonPlanar = 0;
  for (const auto& g : biconnected_graphs(9)) {
    bool planar = !brute_force_embeddings(g).empty();
    EXPECT_EQ(planar_embedding(g).has_value(), planar);
    nonPlanar += !planar;
  }
  EXPECT_EQ(nonPlanar, 1);  // K_{3,3}
}

TEST(Embedding, EmbeddingTreesMatchAllRotations) {
  for (const auto& g : biconnected_graphs(8)) {
    auto all = brute_force_embeddings(g);
    if (all.empty()) continue;
    auto sets = rotation_sets(g, all);
    auto trees = embedding_trees(g, spqr_tree(g));
    for (int v = 0; v < g.vertex_count(); ++v) {
      auto orders = enumerate_orders(trees[static_cast<std::size_t>(v)], 100000);
      std::set<CircularOrder> got(orders.begin(), orders.end());
      EXPECT_EQ(got, sets[static_cast<std::size_t>(v)]);
    }
  }
}

TEST(Embedding, RepresentationSolvesToPlanarRotations) {
  for (const auto& g : biconnected_graphs(8)) {
    if (!planar_embedding(g)) continue;
    auto rep = pq_embedding_representation(g);
    EXPECT_TRUE(fixedness(normalize(rep.instance)).twoFixed);
    auto res = solve(rep.instance);
    ASSERT_EQ(res.status, SolveStatus::Feasible);
    auto rot = rotation_from_solution(g, rep, res.solution);
    EXPECT_TRUE(is_planar_rotation(g, rot));
  }
}

TEST(Embedding, ConstrainedPlanarityAgreesWithBruteForce) {
  std::mt19937_64 rng(31);
  auto graphs = biconnected_graphs(9);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_biconnected_graph(rng, 13);
    if (rotation_system_count(g) <= 300000) graphs.push_back(g);
  }
  int feasible = 0, infeasible = 0;
  for (int round = 0; round < 6; ++round)
    for (const auto& g : graphs) {
      if (!planar_embedding(g)) continue;
      auto cons = random_constraints(rng, g);
      auto res = solve_partially_pq_constrained(g, cons);
      ASSERT_NE(res.status, SolveStatus::NotSupported) << res.reason;
      EXPECT_TRUE(res.twoFixed);
      auto oracle = brute_force_pq_constrained(g, cons);
      ASSERT_EQ(res.status == SolveStatus::Feasible, oracle.has_value());
      if (oracle) {
        ++feasible;
        EXPECT_TRUE(is_planar_rotation(g, res.rotation));
        for (const auto& [v, t] : cons) {
          std::vector<Label> seq;
          for (int e : res.rotation[static_cast<std::size_t>(v)]) {
            Label l = edge_label(e);
            if (t.leaf_index(l) >= 0) seq.push_back(l);
          }
          EXPECT_TRUE(represents(t, CircularOrder(seq)));
        }
      } else {
        ++infeasible;
      }
    }
  EXPECT_GT(feasible, 10);
  EXPECT_GT(infeasible, 10);
}

TEST(Embedding, CutvertexGeneralization) {
  auto bowtie = parse("a b\nb c\nc a\nc d\nd e\ne c\n");
  auto rep = generalize_cutvertices(bowtie);
  int c = bowtie.find("c");
  ASSERT_GE(rep.vertexTree[static_cast<std::size_t>(c)], 0);
  const auto& comb = rep.instance.trees[static_cast<std::size_t>(rep.vertexTree[static_cast<std::size_t>(c)])];
  EXPECT_EQ(comb.leaf_count(), 4u);
  EXPECT_EQ(count_orders(comb), 4u);  // each triangle's pair stays together
  auto three = parse("a b\nb c\nc a\nc d\nd e\ne c\nc f\nf g\ng c\n");
  EXPECT_THROW(generalize_cutvertices(three), Error);
  auto withBridges = parse("a b\nb c\nc a\nc d\nd e\ne c\nc x\nc y\n");
  auto res = solve_partially_pq_constrained(withBridges, {});
  ASSERT_EQ(res.status, SolveStatus::Feasible);
  EXPECT_TRUE(is_planar_rotation(withBridges, res.rotation));
  // planar rotations at c restricted to the block edges are exactly the
  // orders of the bowtie's combined tree
  std::set<CircularOrder> restricted;
  for (const auto& r : brute_force_embeddings(withBridges)) {
    std::vector<Label> seq;
    for (int e : r[static_cast<std::size_t>(withBridges.find("c"))])
      if (e < bowtie.edge_count()) seq.push_back(edge_label(e));
    restricted.insert(CircularOrder(seq));
  }
  EXPECT_EQ(restricted.size(), 4u);
  for (const auto& o : restricted) EXPECT_TRUE(represents(comb, o));
}

TEST(Embedding, ConstrainedWithCutvertices) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> graphs{"a b\nb c\nc a\nc d\nd e\ne c\nb d\n",
                                        "a b\nb c\nc d\nd a\na c\nc e\ne f\nf c\nc g\n",
                                        "a b\nb c\nc a\nc d\nd e\ne f\nf d\nf g\n"};
  for (const auto& text : graphs) {
    auto g = parse(text);
    for (int round = 0; round < 30; ++round) {
      auto cons = random_constraints(rng, g);
      auto res = solve_partially_pq_constrained(g, cons);
      ASSERT_NE(res.status, SolveStatus::NotSupported) << res.reason;
      EXPECT_TRUE(res.twoFixed);
      EXPECT_EQ(res.status == SolveStatus::Feasible, brute_force_pq_constrained(g, cons).has_value());
    }
  }
}

TEST(Embedding, SefeAgreesWithBruteForce) {
  std::mt19937_64 rng(77);
  int feasible = 0, infeasible = 0, checked = 0;
  while (checked < 150) {
    Graph g1, g2;
    if (checked % 3 == 0) {
      std::tie(g1, g2) = wheel_pair(rng);
    } else {
      g1 = random_biconnected_graph(rng, 9);
      g2 = sefe_partner(rng, g1);
    }
    if (rotation_system_count(g1) > 200000 || rotation_system_count(g2) > 200000) continue;
    auto res = solve_sefe(g1, g2);
    if (res.status == SolveStatus::NotSupported) continue;
    ++checked;
    EXPECT_TRUE(res.twoFixed);
    auto oracle = brute_force_sefe(g1, g2);
    ASSERT_EQ(res.status == SolveStatus::Feasible, oracle.has_value()) << res.reason;
    if (oracle) {
      ++feasible;
      EXPECT_TRUE(verify_sefe(g1, g2, res.first, res.second));
    } else {
      ++infeasible;
    }
  }
  EXPECT_GT(feasible, 10);
  EXPECT_GT(infeasible, 5);
}

TEST(Embedding, SefeOfIdenticalGraphs) {
  auto g = parse("a b\nb c\nc d\nd a\na c\nb d\nd e\ne a\n");
  auto res = solve_sefe(g, g);
  ASSERT_EQ(res.status, SolveStatus::Feasible) << res.reason;
  EXPECT_TRUE(verify_sefe(g, g, res.first, res.second));
}
