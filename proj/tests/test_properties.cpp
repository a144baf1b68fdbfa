// Randomized invariants over hand-rolled graph generators. Seeds are fixed,
// so every run checks the same instances.

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fpptree/analytics.hpp"
#include "fpptree/counting.hpp"
#include "fpptree/families.hpp"
#include "fpptree/growth.hpp"
#include "test_support.hpp"

using namespace fpptree;
using fpptree::oracles::random_connected_graph;

namespace {

struct Case {
  Graph graph;
  VertexId source;
};

// Mix of sparse, dense and tree-like instances.
std::vector<Case> random_cases(std::uint64_t seed, std::size_t count, std::size_t max_n) {
  std::mt19937_64 rng(seed);
  std::vector<Case> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, max_n)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    auto g = random_connected_graph(rng, n, p);
    const auto s = static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    out.push_back({std::move(g), s});
  }
  return out;
}

}  // namespace

TEST(Properties, DiscreteTreesAreSpanningAndTall) {
  std::uint64_t id = 0;
  for (const auto& [g, s] : random_cases(1, 200, 40)) {
    Stream stream(SeedPath{11, {id++}});
    const auto t = grow_discrete(g, s, stream);
    EXPECT_TRUE(validate_spanning_tree(g, t).empty());
    EXPECT_EQ(t.root, s);
    EXPECT_GE(height(t), eccentricity(g, s));
    EXPECT_EQ(t.attach_order.size(), g.num_vertices());
  }
}

TEST(Properties, FppTreesPassCertificate) {
  std::uint64_t id = 0;
  for (const auto& [g, s] : random_cases(2, 200, 40)) {
    Stream stream(SeedPath{12, {id++}});
    const auto w = sample_edge_weights(g, stream);
    const auto r = grow_fpp(g, s, w);
    EXPECT_TRUE(validate_spanning_tree(g, r.tree).empty());
    EXPECT_TRUE(check_fpp_certificate(g, w, r).empty());
    EXPECT_GE(height(r.tree), eccentricity(g, s));
    EXPECT_EQ(r.cover_time, *std::max_element(r.hitting_time.begin(), r.hitting_time.end()));
    EXPECT_LE(max_weight_path_length(r), height(r.tree));
  }
}

TEST(Properties, FppDistancesMatchFloydWarshall) {
  std::uint64_t id = 0;
  for (const auto& [g, s] : random_cases(3, 60, 15)) {
    Stream stream(SeedPath{13, {id++}});
    const auto w = sample_edge_weights(g, stream);
    const auto r = grow_fpp(g, s, w);
    const auto d = fpptree::oracles::floyd_warshall(g, w);
    for (VertexId v = 0; v < g.num_vertices(); ++v) EXPECT_NEAR(r.hitting_time[v], d[s][v], 1e-9);
  }
}

TEST(Properties, PathsWalksAndTrivialBound) {
  for (const auto& [g, s] : random_cases(4, 80, 9)) {
    const BigInt delta = max_degree(g);
    for (std::uint32_t L = 0; L <= 6; ++L) {
      const auto paths = count_simple_paths_from(g, s, L);
      const auto walks = count_walks_from(g, s, L);
      EXPECT_LE(paths, walks);
      EXPECT_LE(walks, boost::multiprecision::pow(delta, L));
      EXPECT_EQ(paths, fpptree::oracles::brute_force_paths(g, s, L));
    }
  }
}

TEST(Properties, WalksWithinDegenerateBound) {
  for (const auto& [g, s] : random_cases(5, 80, 12)) {
    const auto d = degeneracy_ordering(g).degeneracy;
    const auto delta = max_degree(g);
    for (std::uint32_t L = 1; L <= 8; ++L) {
      const auto b = bound_walks_degenerate(g.num_vertices(), d, delta, L);
      EXPECT_LE(count_walks(g, L), b.value) << "L=" << L;
    }
  }
}

TEST(Properties, PathsWithinGenusBoundOnPlanarGraphs) {
  std::mt19937_64 rng(6);
  std::vector<Graph> planar;
  for (int i = 0; i < 20; ++i) planar.push_back(fpptree::oracles::random_tree(rng, 5 + i));
  for (std::uint32_t k = 2; k <= 5; ++k) planar.push_back(generate({FamilyKind::grid, {{"d", 2}, {"k", double(k)}}}).graph);
  for (std::size_t n = 3; n <= 10; ++n) planar.push_back(gen_cycle(n).graph);
  planar.push_back(gen_house().graph);
  planar.push_back(gen_complete(4).graph);
  planar.push_back(generate({FamilyKind::planar_lower_g, {{"L", 4}, {"delta", 2}, {"m", 1}}}).graph);
  for (const auto& g : planar) {
    const auto delta = std::max<std::uint64_t>(max_degree(g), 6);
    for (std::uint32_t L = 1; L <= 8; ++L) {
      const auto b = bound_paths_genus(g.num_vertices(), 0, delta, L);
      BigInt total = 0;
      for (VertexId s = 0; s < g.num_vertices(); ++s) total += count_simple_paths_from(g, s, L);
      EXPECT_LE(total, b.value) << "n=" << g.num_vertices() << " L=" << L;
    }
  }
}

TEST(Properties, EdgeBoundaryIsSymmetric) {
  for (const auto& [g, s] : random_cases(7, 40, 11)) {
    const auto n = g.num_vertices();
    for (std::size_t k = 1; k < n; ++k) {
      const auto ek = edge_boundary_min(g, k);
      EXPECT_EQ(ek, edge_boundary_min(g, n - k));
      EXPECT_EQ(ek, fpptree::oracles::brute_force_boundary(g, k));
    }
  }
}

TEST(Properties, DegeneracyMatchesBruteForce) {
  for (const auto& [g, s] : random_cases(8, 60, 12)) {
    const auto o = degeneracy_ordering(g);
    EXPECT_TRUE(check_degeneracy_certificate(g, o));
    EXPECT_EQ(o.degeneracy, fpptree::oracles::brute_force_degeneracy(g));
  }
}

TEST(Properties, ExactLawSumsToOneAndMatchesSampling) {
  std::uint64_t id = 0;
  for (const auto& [g, s] : random_cases(9, 12, 6)) {
    const auto law = exact_discrete_law(g, s);
    Rational total = 0;
    for (const auto& [key, p] : law) {
      EXPECT_GT(p, 0);
      total += p;
    }
    EXPECT_EQ(total, 1);
    for (auto process : {Process::discrete, Process::fpp}) {
      Stream stream(SeedPath{14, {id++}});
      const auto r = law_equivalence_test(g, s, process, 20000, stream);
      EXPECT_EQ(r.outside_support, 0u);
      EXPECT_LT(r.total_variation, 0.03);
      EXPECT_GT(r.p_value, 1e-4) << to_string(process) << " n=" << g.num_vertices();
    }
  }
}
