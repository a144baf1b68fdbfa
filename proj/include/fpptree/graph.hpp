#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace fpptree {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Undirected edge in canonical form (u < v).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable finite, simple, undirected, connected graph in CSR form.
///
/// Neighbor lists are sorted by vertex id. Edge ids are dense in [0, m) and
/// follow the lexicographic order of the canonical (min, max) pairs, so two
/// graphs built from the same edge set are identical irrespective of the
/// order in which the edges were supplied.
class Graph {
 public:
  /// Builds a graph from an edge list. Pairs are canonicalised; self-loops,
  /// duplicates, out-of-range endpoints and disconnected inputs throw
  /// InvalidGraph.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {adjacency_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool has_edge(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

 private:
  Graph() = default;

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
  std::vector<Edge> edges_;
};

// Text format: header "n m", then m lines "u v" with u < v, 0-based,
// newline-terminated. Edges are written in edge-id order.
void write_graph_text(std::ostream& out, const Graph& g);
Graph read_graph_text(std::istream& in);

}  // namespace fpptree
