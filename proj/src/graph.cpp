#include "fpptree/graph.hpp"

#include <algorithm>
#include <string>

#include "fpptree/error.hpp"

namespace fpptree {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw InvalidGraph("graph must have at least one vertex");
  if (n > std::numeric_limits<VertexId>::max() - 1) throw InvalidGraph("too many vertices");
  if (edges.size() >= std::numeric_limits<EdgeId>::max()) throw InvalidGraph("too many edges");

  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidGraph("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InvalidGraph("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidGraph("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  // Sorted edge order fills every list in increasing neighbor order: the
  // smaller neighbors of x arrive as (u, x) before any (x, w).
  g.adjacency_.resize(2 * edges.size());
  g.adjacency_edges_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const auto& e = edges[id];
    g.adjacency_[cursor[e.u]] = e.v;
    g.adjacency_edges_[cursor[e.u]++] = id;
    g.adjacency_[cursor[e.v]] = e.u;
    g.adjacency_edges_[cursor[e.v]++] = id;
  }
  g.edges_ = std::move(edges);

  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) {
    throw InvalidGraph("graph is disconnected: vertex 0 reaches " + std::to_string(reached) + " of " +
                       std::to_string(n) + " vertices");
  }
  return g;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return std::nullopt;
  return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

}  // namespace fpptree
