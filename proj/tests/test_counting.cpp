#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fpptree/analytics.hpp"
#include "fpptree/counting.hpp"
#include "fpptree/error.hpp"
#include "fpptree/families.hpp"
#include "test_support.hpp"

using namespace fpptree;

TEST(SimplePaths, Examples) {
  EXPECT_EQ(count_simple_paths_from(gen_path(3).graph, 0, 2), 1);
  EXPECT_EQ(count_simple_paths_from(gen_complete(4).graph, 2, 3), 6);
  EXPECT_EQ(count_simple_paths_from(gen_cycle(6).graph, 4, 3), 2);
  EXPECT_EQ(count_simple_paths_from(gen_cycle(6).graph, 0, 0), 1);
  EXPECT_EQ(count_simple_paths_from(gen_path(3).graph, 0, 5), 0);
}

TEST(SimplePaths, BudgetIsAnError) {
  try {
    count_simple_paths_from(gen_complete(9).graph, 0, 8, 1000);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("after counting"), std::string::npos);
  }
}

TEST(SimplePaths, MatchBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = oracles::random_connected_graph(rng, 2 + trial % 6, 0.4);
    for (std::uint32_t L = 0; L <= 4; ++L) {
      EXPECT_EQ(count_simple_paths_from(g, 0, L), oracles::brute_force_paths(g, 0, L));
    }
  }
}

TEST(SimplePaths, VertexTransitiveSymmetry) {
  for (const auto& g : {gen_cycle(7).graph, gen_grid(4, 1).graph}) {
    const auto ref = count_simple_paths_from(g, 0, 5);
    for (VertexId s = 1; s < g.num_vertices(); ++s) EXPECT_EQ(count_simple_paths_from(g, s, 5), ref);
  }
}

TEST(Walks, Examples) {
  const auto k3 = gen_complete(3).graph;
  EXPECT_EQ(count_walks(k3, 2), 12);
  const auto g = gen_house().graph;
  EXPECT_EQ(count_walks(g, 0), 5);
  EXPECT_EQ(count_walks(g, 1), 2 * 6);
  EXPECT_EQ(count_walks_from(k3, 0, 2), 4);
}

TEST(Walks, MatchMatrixPowers) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracles::random_connected_graph(rng, 1 + trial % 9, 0.35);
    for (std::uint32_t L = 0; L <= 6; ++L) {
      EXPECT_EQ(count_walks(g, L), BigInt(oracles::matrix_walks(g, L)));
    }
  }
}

TEST(Walks, OrderedByPaths) {
  const auto g = gen_grid(2, 2).graph;
  const auto delta = max_degree(g);
  for (std::uint32_t L = 0; L <= 6; ++L) {
    const auto paths = count_simple_paths_from(g, 4, L);
    const auto walks = count_walks_from(g, 4, L);
    EXPECT_LE(paths, walks);
    EXPECT_LE(walks, boost::multiprecision::pow(BigInt(delta), L));
  }
}

TEST(Bounds, DegenerateWalkFormula) {
  EXPECT_EQ(bound_walks_degenerate(6, 1, 2, 2).value, 96);
  EXPECT_TRUE(bound_walks_degenerate(6, 1, 2, 2).exact);
  EXPECT_EQ(bound_walks_degenerate(9, 2, 5, 0).value, 18);
  // odd L with a perfect square stays exact: 2*3*2*sqrt(4)
  const auto sq = bound_walks_degenerate(3, 1, 4, 1);
  EXPECT_EQ(sq.value, 24);
  EXPECT_TRUE(sq.exact);
  // odd L otherwise rounds up: 2*1*2*sqrt(2) = 5.65..
  const auto up = bound_walks_degenerate(1, 1, 2, 1);
  EXPECT_EQ(up.value, 6);
  EXPECT_FALSE(up.exact);
  EXPECT_THROW(bound_walks_degenerate(5, 3, 2, 1), InvalidParameter);
}

TEST(Bounds, GenusPathFormula) {
  EXPECT_EQ(bound_paths_genus(20, 0, 6, 4).value, 829440);
  // genus zero is 2n 2^L (6 Delta)^(L/2)
  EXPECT_EQ(bound_paths_genus(5, 0, 7, 6).value, BigInt(2 * 5 * 64) * boost::multiprecision::pow(BigInt(42), 3));
  // g = 1, L = 6: 6^0 * Delta^6
  EXPECT_EQ(bound_paths_genus(2, 1, 8, 6).value, BigInt(2 * 2 * 64) * boost::multiprecision::pow(BigInt(8), 6));
  EXPECT_THROW(bound_paths_genus(5, 0, 5, 2), InvalidParameter);
  const auto odd = bound_paths_genus(1, 0, 6, 1);  // 2*2*6 exactly
  EXPECT_EQ(odd.value, 24);
  EXPECT_TRUE(odd.exact);
}

TEST(Bounds, WalksOfSmallTreesWithinDegenerateBound) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto g = oracles::random_tree(rng, n);
    const auto d = degeneracy_ordering(g).degeneracy;
    ASSERT_EQ(d, 1u);
    for (std::uint32_t L = 0; L <= 6; ++L) {
      EXPECT_LE(count_walks(g, L), bound_walks_degenerate(n, d, max_degree(g), L).value);
    }
  }
}

TEST(MetaTheorem, Plan) {
  const double n = 1000;
  const double D = 10;
  const double delta = 4;
  const double K = 4 * std::log(n) + 2 * D;
  const auto plan = meta_theorem_plan(1 / n, delta, 2, K);
  EXPECT_EQ(plan.L, static_cast<std::uint64_t>(std::ceil(2 * std::numbers::e * delta * K)));
  EXPECT_NEAR(plan.failure_probability, 1 / n, 1e-12);
  const auto small = meta_theorem_plan(0.0, 1.0, 1.0, 0.1);
  EXPECT_EQ(small.L, 1u);
  EXPECT_DOUBLE_EQ(small.failure_probability, 1.0);
  EXPECT_THROW(meta_theorem_plan(1.0, 2, 2, 1), InvalidParameter);
  EXPECT_THROW(meta_theorem_plan(0.1, 0.5, 2, 1), InvalidParameter);
  EXPECT_THROW(meta_theorem_plan(0.1, 2, 0, 1), InvalidParameter);
}

TEST(MetaTheorem, MonotoneInEachArgument) {
  std::uint64_t prev = 0;
  for (double a = 1; a < 20; a += 1.5) {
    const auto L = meta_theorem_plan(0.1, a, 2, 3).L;
    EXPECT_GE(L, prev);
    prev = L;
  }
  prev = 0;
  for (double c = 0.5; c < 5; c += 0.25) {
    const auto L = meta_theorem_plan(0.1, 3, c, 3).L;
    EXPECT_GE(L, prev);
    prev = L;
  }
  prev = 0;
  for (double K = 0.1; K < 10; K *= 1.3) {
    const auto L = meta_theorem_plan(0.1, 3, 2, K).L;
    EXPECT_GE(L, prev);
    prev = L;
  }
}

TEST(BoundMatrix, Entries) {
  const double e = std::numbers::e;
  const auto m = bound_matrix({16, 6, 4, 2, 0, std::nullopt});
  const auto* t33 = m.find("height_max_degree");
  ASSERT_NE(t33, nullptr);
  EXPECT_DOUBLE_EQ(t33->value, 2 * e * 4 * (4 * std::log(16.0) + 12));
  EXPECT_TRUE(t33->applicable);
  EXPECT_NEAR(m.find("height_degeneracy")->value, 8 * e * std::sqrt(8.0) * (12 + 4 * std::log(16.0)), 1e-9);
  EXPECT_TRUE(m.find("height_genus")->applicable);
  EXPECT_FALSE(m.find("height_inverse_perimeter")->applicable);
  EXPECT_DOUBLE_EQ(m.find("cover_time")->allowed_failure, 2.0 / 16);

  const auto k2 = bound_matrix({2, 1, 1, 1, 0, 1.0});
  EXPECT_FALSE(k2.find("height_max_degree")->applicable);  // needs Delta > 1

  // K16: Psi from the exhaustive profile
  const auto psi = expansion_profile(gen_complete(16).graph).inverse_perimeter;
  const auto k16 = bound_matrix({16, 1, 15, 15, std::nullopt, psi});
  EXPECT_DOUBLE_EQ(k16.find("height_inverse_perimeter")->value, std::ceil(4 * e * psi * 15));
  EXPECT_FALSE(k16.find("height_genus")->applicable);

  // genus hypothesis g ln Delta <= 36 sqrt(Delta)(D + ln n)
  EXPECT_FALSE(bound_matrix({4, 1, 3, 3, 1000, std::nullopt}).find("height_genus")->applicable);
}

TEST(CountReports, SmallGraph) {
  const auto inst = gen_grid(2, 1);
  const auto rows = count_reports("square", inst.graph, 0, 4, inst.meta.declared_genus);
  EXPECT_EQ(rows.size(), 5u * 3);
  for (const auto& r : rows) EXPECT_TRUE(r.pass);
}
