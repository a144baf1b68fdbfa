#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fpptree/graph.hpp"

namespace fpptree {

std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId s);
std::uint32_t eccentricity(const Graph& g, VertexId s);

// BFS from every vertex; complete graphs are recognised from their edge count.
std::uint32_t diameter(const Graph& g);
std::size_t max_degree(const Graph& g);

struct DegeneracyOrdering {
  std::vector<VertexId> order;
  std::uint32_t degeneracy = 0;
};

/// Min-degree peeling. Among vertices of minimum residual degree the lowest
/// id is removed first, so the result is a pure function of the graph.
DegeneracyOrdering degeneracy_ordering(const Graph& g);

// True iff every order[i] has at most `degeneracy` neighbors among order[i+1..].
bool check_degeneracy_certificate(const Graph& g, const DegeneracyOrdering& ordering);

inline constexpr std::size_t kDefaultExpansionBudget = 24;

// e_k(G): minimum number of edges leaving a k-subset, by exhaustive search.
std::uint64_t edge_boundary_min(const Graph& g, std::size_t k,
                                std::size_t max_vertices = kDefaultExpansionBudget);

struct ExpansionProfile {
  std::vector<std::uint64_t> boundary_min;  // index k in [1, n-1]; slot 0 unused
  double edge_expansion = 0.0;              // min_{k <= n/2} e_k / k
  double inverse_perimeter = 0.0;           // sum_{k <= n/2} 1 / e_k
};

ExpansionProfile expansion_profile(const Graph& g, std::size_t max_vertices = kDefaultExpansionBudget);

// Structural quantities used by the bound formulas.
struct GraphStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::uint32_t diameter = 0;
  std::size_t max_degree = 0;
  std::uint32_t degeneracy = 0;
  std::optional<ExpansionProfile> expansion;
};

GraphStats measure_graph(const Graph& g, bool with_expansion,
                         std::size_t max_vertices = kDefaultExpansionBudget);

}  // namespace fpptree
