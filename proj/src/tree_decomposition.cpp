#include "fpptree/tree_decomposition.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "fpptree/error.hpp"

namespace fpptree {

std::size_t TreeDecomposition::max_bag_size() const {
  std::size_t best = 0;
  for (const auto& bag : bags) best = std::max(best, bag.size());
  return best;
}

std::size_t TreeDecomposition::width() const {
  const std::size_t size = max_bag_size();
  return size == 0 ? 0 : size - 1;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

DecompositionReport verify_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  DecompositionReport report;
  report.width = td.width();
  const std::size_t n = g.num_vertices();
  const std::size_t bag_count = td.bags.size();

  std::vector<std::vector<VertexId>> bags(bag_count);
  bool vertices_in_range = true;
  for (std::size_t b = 0; b < bag_count; ++b) {
    bags[b] = td.bags[b];
    std::sort(bags[b].begin(), bags[b].end());
    bags[b].erase(std::unique(bags[b].begin(), bags[b].end()), bags[b].end());
    for (VertexId v : bags[b]) {
      if (v >= n) {
        report.violations.push_back("bag " + std::to_string(b) + " contains out-of-range vertex " + std::to_string(v));
        vertices_in_range = false;
      }
    }
  }

  bool is_tree = bag_count > 0 && td.tree_edges.size() + 1 == bag_count;
  std::vector<std::size_t> uf(bag_count);
  std::iota(uf.begin(), uf.end(), 0);
  for (auto [a, b] : td.tree_edges) {
    if (a >= bag_count || b >= bag_count) {
      report.violations.push_back("bag tree edge refers to a missing bag");
      is_tree = false;
      continue;
    }
    std::size_t ra = find_root(uf, a);
    std::size_t rb = find_root(uf, b);
    if (ra == rb) {
      is_tree = false;
    } else {
      uf[ra] = rb;
    }
  }
  if (!is_tree) report.violations.push_back("bag tree is not a tree");

  if (vertices_in_range) {
    std::vector<std::vector<std::size_t>> bags_of(n);
    for (std::size_t b = 0; b < bag_count; ++b) {
      for (VertexId v : bags[b]) bags_of[v].push_back(b);
    }
    for (VertexId v = 0; v < n; ++v) {
      if (bags_of[v].empty()) report.violations.push_back("vertex " + std::to_string(v) + " is in no bag");
    }
    for (const auto& e : g.edges()) {
      const auto& a = bags_of[e.u];
      const auto& b = bags_of[e.v];
      std::vector<std::size_t> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) {
        report.violations.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") is not covered by any bag");
      }
    }
    if (is_tree) {
      // In a forest, components = nodes - edges.
      std::vector<std::size_t> inner_edges(n, 0);
      for (auto [a, b] : td.tree_edges) {
        std::vector<VertexId> shared;
        std::set_intersection(bags[a].begin(), bags[a].end(), bags[b].begin(), bags[b].end(),
                              std::back_inserter(shared));
        for (VertexId v : shared) ++inner_edges[v];
      }
      for (VertexId v = 0; v < n; ++v) {
        if (!bags_of[v].empty() && bags_of[v].size() - inner_edges[v] != 1) {
          report.violations.push_back("bags containing vertex " + std::to_string(v) + " are disconnected");
        }
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

TreeDecomposition build_tree_decomposition_degenerate(const Graph& g, const ConstructionMeta& meta) {
  if (meta.kind != FamilyKind::degenerate_lower_g || !meta.has_tree()) {
    throw InvalidParameter("tree decomposition builder needs a degenerate_lower_G instance");
  }
  const std::size_t n = g.num_vertices();
  const std::size_t L = meta.groups.size();
  if (meta.tree_leaves.size() != L || meta.connector_groups.size() + 1 != L || meta.tree_parent.size() != n) {
    throw InvalidParameter("construction metadata is inconsistent with degenerate_lower_G");
  }

  TreeDecomposition td;
  std::vector<std::size_t> bag_of(n, static_cast<std::size_t>(-1));
  std::vector<std::uint64_t> depth(n, 0);

  // Step 1: one bag per vertex of I holding the vertex and its parent.
  for (VertexId v : meta.tree_order) {
    bag_of[v] = td.bags.size();
    VertexId p = meta.tree_parent[v];
    if (p == kNoVertex) {
      td.bags.push_back({v});
    } else {
      td.bags.push_back({v, p});
      td.tree_edges.emplace_back(bag_of[v], bag_of[p]);
      depth[v] = depth[p] + 1;
    }
  }

  auto add_set = [&](std::size_t bag, const std::vector<VertexId>& set) {
    td.bags[bag].insert(td.bags[bag].end(), set.begin(), set.end());
  };

  // Step 2: leaf bags get V'_{i-1} and V'_i; V'_i is threaded along the
  // path from v_i to v_{i+1} in I.
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t leaf_bag = bag_of[meta.tree_leaves[i]];
    if (i > 0) add_set(leaf_bag, meta.connector_groups[i - 1]);
    if (i + 1 < L) add_set(leaf_bag, meta.connector_groups[i]);
  }
  for (std::size_t i = 0; i + 1 < L; ++i) {
    VertexId x = meta.tree_leaves[i];
    VertexId y = meta.tree_leaves[i + 1];
    std::vector<VertexId> path;
    while (depth[x] > depth[y]) {
      path.push_back(x);
      x = meta.tree_parent[x];
    }
    while (depth[y] > depth[x]) {
      path.push_back(y);
      y = meta.tree_parent[y];
    }
    while (x != y) {
      path.push_back(x);
      path.push_back(y);
      x = meta.tree_parent[x];
      y = meta.tree_parent[y];
    }
    path.push_back(x);
    for (VertexId v : path) add_set(bag_of[v], meta.connector_groups[i]);
  }

  // Step 3: pendant bags for the remaining vertices of each group.
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t leaf_bag = bag_of[meta.tree_leaves[i]];
    for (VertexId x : meta.groups[i]) {
      if (x == meta.tree_leaves[i]) continue;
      std::vector<VertexId> bag{x};
      if (i > 0) bag.insert(bag.end(), meta.connector_groups[i - 1].begin(), meta.connector_groups[i - 1].end());
      if (i + 1 < L) bag.insert(bag.end(), meta.connector_groups[i].begin(), meta.connector_groups[i].end());
      td.tree_edges.emplace_back(td.bags.size(), leaf_bag);
      td.bags.push_back(std::move(bag));
    }
  }

  for (auto& bag : td.bags) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  }
  return td;
}

}  // namespace fpptree
