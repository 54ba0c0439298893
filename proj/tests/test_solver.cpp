#include <gtest/gtest.h>

#include <random>

#include "spqo/errors.hpp"
#include "spqo/generators.hpp"
#include "spqo/oracle.hpp"
#include "spqo/solver.hpp"

using namespace spqo;

TEST(TwoSat, MatchesTruthTable) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 400; ++round) {
    const int n = 1 + static_cast<int>(rng() % 5);
    TwoSat sat(n);
    const int m = static_cast<int>(rng() % 9);
    for (int c = 0; c < m; ++c)
      sat.add_clause(static_cast<int>(rng() % static_cast<unsigned>(2 * n)),
                     static_cast<int>(rng() % static_cast<unsigned>(2 * n)));
    auto holds = [&](const std::vector<bool>& v) {
      for (auto [a, b] : sat.clauses()) {
        bool la = v[static_cast<std::size_t>(a / 2)] != (a % 2 == 1);
        bool lb = v[static_cast<std::size_t>(b / 2)] != (b % 2 == 1);
        if (!la && !lb) return false;
      }
      return true;
    };
    bool any = false;
    for (int mask = 0; mask < (1 << n) && !any; ++mask) {
      std::vector<bool> v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1;
      any = holds(v);
    }
    auto res = sat.solve();
    ASSERT_EQ(res.has_value(), any);
    if (res) EXPECT_TRUE(holds(*res));
  }
}

TEST(Solver, AgreesWithOracleOnRandomTwoFixedInstances) {
  std::mt19937_64 rng(2024);
  int feasible = 0, infeasible = 0;
  for (int i = 0; i < 300; ++i) {
    auto d = random_two_fixed_instance(rng);
    ASSERT_TRUE(d.has_value());
    auto res = solve(*d);
    ASSERT_NE(res.status, SolveStatus::NotSupported) << res.message;
    auto oracle = brute_force_simultaneous_orders(*d);
    ASSERT_EQ(res.status == SolveStatus::Feasible, oracle.has_value()) << "instance " << i;
    if (oracle) {
      EXPECT_TRUE(verify_solution(*d, *oracle));
      EXPECT_TRUE(verify_solution(*d, res.solution)) << "instance " << i;
      ++feasible;
    } else {
      ++infeasible;
    }
  }
  EXPECT_GT(feasible, 30);
  EXPECT_GT(infeasible, 30);
}

TEST(Expansion, ProcessingOrderInvariant) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    auto d = random_two_fixed_instance(rng);
    ASSERT_TRUE(d.has_value());
    auto n = normalize(*d);
    auto fifo = build_expansion_graph(n);
    ExpansionOptions shuffled;
    shuffled.shuffleSeed = 1000 + static_cast<std::uint64_t>(i);
    auto other = build_expansion_graph(n, shuffled);
    EXPECT_EQ(expansion_signature(fifo), expansion_signature(other)) << "instance " << i;
  }
}

TEST(Solver, ScalingFamilyIsTwoFixedAndSolves) {
  for (int g : {1, 2, 5, 40}) {
    auto d = scaling_instance(g);
    EXPECT_TRUE(fixedness(normalize(d)).twoFixed);
    auto res = solve(d);
    ASSERT_EQ(res.status, SolveStatus::Feasible) << res.message;
    EXPECT_TRUE(verify_solution(d, res.solution));
  }
}

TEST(Solver, DetectsCyclicConflict) {
  // a star whose two children demand opposite orders of the same triple
  std::vector<PQTree> trees{PQTree::universal({"a", "b", "c", "d"}), PQTree::universal({"1", "2", "3"}),
                            from_consecutive_sets({"a", "b", "c", "d"}, {{"a", "b"}})};
  std::vector<Arc> arcs{{0, 1, {{"1", "a"}, {"2", "b"}, {"3", "c"}}, false},
                        {0, 1, {{"1", "a"}, {"2", "c"}, {"3", "b"}}, false}};
  auto d = build_instance(trees, arcs);
  auto res = solve(d);
  EXPECT_EQ(res.status, SolveStatus::Infeasible);
  EXPECT_FALSE(brute_force_simultaneous_orders(d).has_value());
}
