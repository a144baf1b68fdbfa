#include <cmath>
#include <numbers>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <gtest/gtest.h>

#include "fpptree/analytics.hpp"
#include "fpptree/error.hpp"
#include "fpptree/families.hpp"

using namespace fpptree;

namespace {

bool is_planar(const Graph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph b(g.num_vertices());
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, b);
  return boost::boyer_myrvold_planarity_test(b);
}

FamilyInstance make(FamilyKind kind, std::map<std::string, double> params) { return generate({kind, std::move(params)}); }

}  // namespace

TEST(Complete, Sizes) {
  EXPECT_EQ(gen_complete(4).graph.num_edges(), 6u);
  EXPECT_EQ(gen_complete(2).graph.num_edges(), 1u);
  const auto k100 = gen_complete(100);
  EXPECT_EQ(max_degree(k100.graph), 99u);
  EXPECT_EQ(diameter(k100.graph), 1u);
  EXPECT_THROW(gen_complete(1), InvalidParameter);
}

TEST(Grid, Sizes) {
  const auto cube = gen_grid(3, 1);
  EXPECT_EQ(cube.graph.num_vertices(), 8u);
  EXPECT_EQ(cube.graph.num_edges(), 12u);
  const auto g22 = gen_grid(2, 2);
  EXPECT_EQ(g22.graph.num_vertices(), 9u);
  EXPECT_EQ(g22.graph.num_edges(), 12u);
  const auto line = gen_grid(1, 5);
  EXPECT_EQ(line.graph.num_vertices(), 6u);
  EXPECT_EQ(max_degree(line.graph), 2u);
  EXPECT_EQ(diameter(line.graph), 5u);
  EXPECT_THROW(gen_grid(30, 3), BudgetExceeded);
}

TEST(LadderH, Sizes) {
  const auto a = gen_ladder_h(2, 3);
  EXPECT_EQ(a.graph.num_vertices(), 6u);
  EXPECT_EQ(a.graph.num_edges(), 9u);
  const auto p4 = gen_ladder_h(4, 1);
  EXPECT_EQ(p4.graph.num_edges(), 3u);
  EXPECT_EQ(diameter(p4.graph), 3u);
  const auto b = gen_ladder_h(3, 2);
  EXPECT_EQ(b.graph.num_vertices(), 6u);
  EXPECT_EQ(b.graph.num_edges(), 8u);
}

TEST(SubdividedTreeI, Sizes) {
  const auto p3 = gen_subdivided_tree_i(2, 1);
  EXPECT_EQ(p3.graph.num_vertices(), 3u);
  EXPECT_EQ(p3.graph.num_edges(), 2u);
  EXPECT_EQ(gen_subdivided_tree_i(4, 2).graph.num_vertices(), 11u);
  const auto perfect = gen_subdivided_tree_i(4, 1);
  EXPECT_EQ(perfect.graph.num_vertices(), 7u);
  EXPECT_EQ(perfect.meta.tree_leaves.size(), 4u);
  EXPECT_THROW(gen_subdivided_tree_i(6, 1), InvalidParameter);
}

TEST(SubdividedTreeI, LeavesAreInDepthFirstOrder) {
  const auto inst = gen_subdivided_tree_i(8, 3);
  const auto& meta = inst.meta;
  // Consecutive leaves in depth-first order meet at their lowest common
  // ancestor; the I-distance is 2 (m + depth below the LCA - 1).
  auto dist = bfs_distances(inst.graph, meta.tree_leaves[0]);
  EXPECT_EQ(dist[meta.tree_leaves[1]], 2u * 3);
  EXPECT_EQ(dist[meta.tree_leaves[2]], 2u * 4);
  EXPECT_EQ(dist[meta.tree_leaves[4]], 2u * 5);
  EXPECT_TRUE(check_construction(inst).empty());
}

TEST(GluedG, FormulaExample) {
  const double D = std::ceil(16 * std::pow(std::numbers::e, 3) * std::log(5.0));
  ASSERT_EQ(D, 518.0);
  const auto inst = make(FamilyKind::glued_g, {{"Delta", 5}, {"D", D}});
  EXPECT_EQ(inst.meta.resolved.at("delta"), 2.0);
  EXPECT_EQ(inst.meta.resolved.at("L"), 8.0);
  EXPECT_EQ(inst.meta.resolved.at("a_over_e2"), 4.0);
  EXPECT_LE(diameter(inst.graph), 518u);
  EXPECT_EQ(max_degree(inst.graph), 5u);
  EXPECT_TRUE(check_construction(inst).empty());
}

TEST(GluedG, OverrideExample) {
  const auto inst = make(FamilyKind::glued_g, {{"L", 4}, {"delta", 1}, {"a", 8}});
  EXPECT_EQ(inst.meta.resolved.at("m"), 32.0);
  EXPECT_EQ(inst.meta.groups.size(), 4u);
  // H is P4 on the group vertices
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    EXPECT_TRUE(inst.graph.has_edge(inst.meta.groups[i][0], inst.meta.groups[i + 1][0]));
  }
  EXPECT_EQ(inst.meta.tree_leaves.size(), 4u);
  EXPECT_TRUE(check_construction(inst).empty());
}

TEST(GluedG, MaxDegreeIsTwoDeltaPlusOne) {
  for (int delta : {2, 3, 5}) {
    const auto inst = make(FamilyKind::glued_g, {{"L", 8}, {"delta", delta}, {"m", 4}});
    EXPECT_EQ(max_degree(inst.graph), static_cast<std::size_t>(2 * delta + 1));
    EXPECT_EQ(inst.meta.height_target, 7u);
    EXPECT_EQ(inst.meta.source, inst.meta.groups.front().front());
    EXPECT_EQ(inst.meta.target, inst.meta.groups.back().front());
  }
}

TEST(GluedG, RejectsBadParameters) {
  EXPECT_THROW(make(FamilyKind::glued_g, {{"Delta", 5}, {"D", 100}}), InvalidParameter);  // D too small
  EXPECT_THROW(make(FamilyKind::glued_g, {{"Delta", 5}, {"L", 4}}), InvalidParameter);    // mixed modes
  EXPECT_THROW(make(FamilyKind::glued_g, {{"L", 4}, {"delta", 1}, {"a", 8}, {"a_over_e2", 1}}), InvalidParameter);
  EXPECT_THROW(make(FamilyKind::glued_g, {{"L", 4}, {"delta", 1}, {"bogus", 1}}), InvalidParameter);
  EXPECT_THROW(make(FamilyKind::glued_g, {{"L", 4.5}, {"delta", 1}, {"m", 2}}), InvalidParameter);
}

TEST(PlanarLowerG, CountsAndDegree) {
  const auto inst = make(FamilyKind::planar_lower_g, {{"L", 4}, {"delta", 4}, {"m", 3}});
  std::size_t h_vertices = 0;
  for (const auto& g : inst.meta.groups) h_vertices += g.size();
  for (const auto& g : inst.meta.connector_groups) h_vertices += g.size();
  EXPECT_EQ(h_vertices, 19u);
  for (const auto& c : inst.meta.connector_groups) {
    for (VertexId v : c) EXPECT_EQ(inst.graph.degree(v), 8u);
  }
  EXPECT_EQ(inst.meta.height_target, 6u);
  EXPECT_TRUE(check_construction(inst).empty());
}

TEST(PlanarLowerG, IsPlanar) {
  for (int L : {2, 4, 8, 16}) {
    for (int delta : {1, 3, 6}) {
      const auto inst = make(FamilyKind::planar_lower_g, {{"L", L}, {"delta", delta}, {"m", 2}});
      EXPECT_TRUE(is_planar(inst.graph)) << "L=" << L << " delta=" << delta;
    }
  }
  EXPECT_FALSE(is_planar(gen_complete(5).graph));  // the oracle itself can say no
}

TEST(DegenerateLowerG, BipartiteCounts) {
  const auto inst = make(FamilyKind::degenerate_lower_g, {{"L", 2}, {"delta", 3}, {"d", 2}, {"m", 1}});
  ASSERT_EQ(inst.meta.groups.size(), 2u);
  ASSERT_EQ(inst.meta.connector_groups.size(), 1u);
  EXPECT_EQ(inst.meta.connector_groups[0].size(), 2u);
  // 12 bipartite edges plus the two edges of I = P3
  EXPECT_EQ(inst.graph.num_edges(), 14u);
  EXPECT_LE(max_degree(inst.graph), 6u);
  EXPECT_TRUE(check_construction(inst).empty());
}

TEST(DegenerateLowerG, DegreeWithinDeclared) {
  for (int d : {1, 2, 3}) {
    for (int delta : {2, 4, 8}) {
      const auto inst = make(FamilyKind::degenerate_lower_g, {{"L", 8}, {"delta", delta}, {"d", d}, {"a_over_e2", 4}});
      EXPECT_TRUE(check_construction(inst).empty()) << "d=" << d << " delta=" << delta;
      EXPECT_LE(max_degree(inst.graph), static_cast<std::size_t>(std::max({2 * delta, 2 * d + 1, 3})));
    }
  }
}

TEST(Families, StringRoundTrip) {
  for (auto kind : {FamilyKind::complete, FamilyKind::grid, FamilyKind::ladder_h, FamilyKind::subdivided_tree_i,
                    FamilyKind::glued_g, FamilyKind::planar_lower_g, FamilyKind::degenerate_lower_g,
                    FamilyKind::path, FamilyKind::cycle, FamilyKind::star, FamilyKind::house}) {
    EXPECT_EQ(family_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_THROW(family_kind_from_string("torus"), InvalidParameter);
}

TEST(Families, PowerOfTwo) {
  EXPECT_EQ(largest_power_of_two_at_most(10.95), 8u);
  EXPECT_EQ(largest_power_of_two_at_most(16.0), 16u);
  EXPECT_EQ(largest_power_of_two_at_most(1.0), 1u);
  EXPECT_EQ(largest_power_of_two_at_most(0.5), 0u);
}

TEST(Families, VertexBudget) {
  EXPECT_THROW(generate({FamilyKind::glued_g, {{"L", 1024}, {"delta", 8}, {"m", 5000}}}, 100000), BudgetExceeded);
}
