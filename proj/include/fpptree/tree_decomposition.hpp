#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fpptree/families.hpp"
#include "fpptree/graph.hpp"

namespace fpptree {

/// Bags indexed by bag id, plus the edges of the tree over bag ids.
struct TreeDecomposition {
  std::vector<std::vector<VertexId>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  std::size_t max_bag_size() const;
  // max bag size - 1 (0 for an empty decomposition)
  std::size_t width() const;
};

struct DecompositionReport {
  bool valid = false;
  std::size_t width = 0;
  std::vector<std::string> violations;
};

/// Checks that the bag tree is a tree, every vertex and every edge of g is
/// covered by some bag, and the bags containing any fixed vertex induce a
/// connected subtree. Failures are reported, never thrown.
DecompositionReport verify_tree_decomposition(const Graph& g, const TreeDecomposition& td);

/// Three-step decomposition of a degenerate_lower_G instance: bags shaped
/// like the subdivided tree I, each holding its vertex and its parent; each
/// leaf bag of v_i gets V'_{i-1} and V'_i, and V'_i is threaded along the
/// I-path from v_i to v_{i+1}; finally every other vertex of V_i gets a
/// pendant bag with V'_{i-1} and V'_i attached to the bag of v_i.
/// Throws InvalidParameter when `meta` does not describe that family.
TreeDecomposition build_tree_decomposition_degenerate(const Graph& g, const ConstructionMeta& meta);

}  // namespace fpptree
