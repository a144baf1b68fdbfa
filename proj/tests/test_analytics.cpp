#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fpptree/analytics.hpp"
#include "fpptree/error.hpp"
#include "fpptree/families.hpp"
#include "test_support.hpp"

using namespace fpptree;

TEST(Bfs, SmallGraphs) {
  EXPECT_EQ(bfs_distances(gen_path(3).graph, 0), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(bfs_distances(gen_complete(4).graph, 0), (std::vector<std::uint32_t>{0, 1, 1, 1}));
  EXPECT_EQ(bfs_distances(gen_cycle(6).graph, 0), (std::vector<std::uint32_t>{0, 1, 2, 3, 2, 1}));
  EXPECT_EQ(eccentricity(gen_path(5).graph, 2), 2u);
}

TEST(Diameter, Families) {
  EXPECT_EQ(diameter(gen_complete(2).graph), 1u);
  EXPECT_EQ(diameter(gen_complete(50).graph), 1u);
  EXPECT_EQ(diameter(gen_path(1).graph), 0u);
  for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {1, 5}, {4, 1}, {6, 1}}) {
    EXPECT_EQ(diameter(gen_grid(d, k).graph), static_cast<std::uint32_t>(d * k));
  }
}

TEST(MaxDegree, Families) {
  EXPECT_EQ(max_degree(gen_complete(7).graph), 6u);
  EXPECT_EQ(max_degree(gen_grid(3, 2).graph), 6u);
  EXPECT_EQ(max_degree(gen_grid(5, 1).graph), 5u);
}

TEST(Degeneracy, Examples) {
  EXPECT_EQ(degeneracy_ordering(gen_complete(5).graph).degeneracy, 4u);
  EXPECT_EQ(degeneracy_ordering(gen_cycle(8).graph).degeneracy, 2u);
  EXPECT_EQ(degeneracy_ordering(gen_subdivided_tree_i(8, 3).graph).degeneracy, 1u);
  EXPECT_EQ(degeneracy_ordering(gen_star(6).graph).degeneracy, 1u);
}

TEST(Degeneracy, LowestIdTieBreak) {
  // In C4 every vertex has degree 2; vertex 0 goes first.
  EXPECT_EQ(degeneracy_ordering(gen_cycle(4).graph).order.front(), 0u);
}

TEST(Degeneracy, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto g = oracles::random_connected_graph(rng, n, 0.1 + 0.1 * (trial % 7));
    const auto ord = degeneracy_ordering(g);
    EXPECT_EQ(ord.degeneracy, oracles::brute_force_degeneracy(g)) << "trial " << trial;
    EXPECT_TRUE(check_degeneracy_certificate(g, ord));
  }
}

TEST(Degeneracy, CertificateRejectsBadOrder) {
  auto g = gen_complete(4).graph;
  DegeneracyOrdering bad{{0, 1, 2, 3}, 2};
  EXPECT_FALSE(check_degeneracy_certificate(g, bad));
  DegeneracyOrdering short_order{{0, 1}, 3};
  EXPECT_FALSE(check_degeneracy_certificate(g, short_order));
}

TEST(Expansion, CompleteGraph) {
  for (std::size_t n : {2u, 5u, 8u}) {
    const auto g = gen_complete(n).graph;
    for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(edge_boundary_min(g, k), k * (n - k));
    EXPECT_DOUBLE_EQ(expansion_profile(g).edge_expansion, std::ceil(n / 2.0));
  }
}

TEST(Expansion, SmallExamples) {
  EXPECT_EQ(edge_boundary_min(gen_cycle(7).graph, 1), 2u);
  EXPECT_EQ(edge_boundary_min(gen_path(4).graph, 2), 1u);
  const auto k4 = expansion_profile(gen_complete(4).graph);
  EXPECT_DOUBLE_EQ(k4.inverse_perimeter, 1.0 / 3 + 1.0 / 4);
  const auto p2 = expansion_profile(gen_path(2).graph);
  EXPECT_DOUBLE_EQ(p2.edge_expansion, 1.0);
  EXPECT_DOUBLE_EQ(p2.inverse_perimeter, 1.0);
}

TEST(Expansion, GrayCodeProfileMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto g = oracles::random_connected_graph(rng, n, 0.3);
    const auto prof = expansion_profile(g);
    for (std::size_t k = 1; k < n; ++k) {
      const auto expected = oracles::brute_force_boundary(g, k);
      EXPECT_EQ(prof.boundary_min[k], expected);
      EXPECT_EQ(edge_boundary_min(g, k), expected);
      // complement symmetry e_k = e_{n-k}
      EXPECT_EQ(prof.boundary_min[k], prof.boundary_min[n - k]);
    }
  }
}

TEST(Expansion, BudgetEnforced) {
  const auto g = gen_path(30).graph;
  EXPECT_THROW(edge_boundary_min(g, 3), BudgetExceeded);
  EXPECT_THROW(expansion_profile(g), BudgetExceeded);
  EXPECT_THROW(edge_boundary_min(gen_path(5).graph, 0), InvalidParameter);
}

TEST(Stats, MeasureGraph) {
  const auto s = measure_graph(gen_grid(2, 2).graph, true);
  EXPECT_EQ(s.vertices, 9u);
  EXPECT_EQ(s.edges, 12u);
  EXPECT_EQ(s.diameter, 4u);
  EXPECT_EQ(s.max_degree, 4u);
  EXPECT_EQ(s.degeneracy, 2u);
  ASSERT_TRUE(s.expansion.has_value());
  EXPECT_FALSE(measure_graph(gen_grid(2, 2).graph, false).expansion.has_value());
}
