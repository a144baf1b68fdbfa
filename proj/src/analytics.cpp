#include "fpptree/analytics.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "fpptree/error.hpp"

namespace fpptree {

namespace {

void require_vertex(const Graph& g, VertexId s) {
  if (s >= g.num_vertices()) {
    throw InvalidParameter("vertex " + std::to_string(s) + " is out of range for a graph with " +
                           std::to_string(g.num_vertices()) + " vertices");
  }
}

std::uint32_t bfs_into(const Graph& g, VertexId s, std::vector<std::uint32_t>& dist,
                       std::vector<VertexId>& queue) {
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  dist[s] = 0;
  queue.push_back(s);
  std::uint32_t far = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    far = dist[v];
    for (VertexId w : g.neighbors(v)) {
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return far;
}

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(g.num_vertices(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId w : g.neighbors(v)) masks[v] |= std::uint64_t{1} << w;
  }
  return masks;
}

void require_expansion_budget(const Graph& g, std::size_t max_vertices) {
  const std::size_t limit = std::min<std::size_t>(max_vertices, 40);
  if (g.num_vertices() > limit) {
    throw BudgetExceeded("instance too large for exact expansion: n=" + std::to_string(g.num_vertices()) +
                         " exceeds the exhaustive-search budget of " + std::to_string(limit));
  }
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId s) {
  require_vertex(g, s);
  std::vector<std::uint32_t> dist(g.num_vertices());
  std::vector<VertexId> queue;
  queue.reserve(g.num_vertices());
  bfs_into(g, s, dist, queue);
  return dist;
}

std::uint32_t eccentricity(const Graph& g, VertexId s) {
  require_vertex(g, s);
  std::vector<std::uint32_t> dist(g.num_vertices());
  std::vector<VertexId> queue;
  queue.reserve(g.num_vertices());
  return bfs_into(g, s, dist, queue);
}

std::uint32_t diameter(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 1) return 0;
  if (2 * g.num_edges() == n * (n - 1)) return 1;
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue;
  queue.reserve(n);
  std::uint32_t best = 0;
  for (VertexId s = 0; s < n; ++s) best = std::max(best, bfs_into(g, s, dist, queue));
  return best;
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

DegeneracyOrdering degeneracy_ordering(const Graph& g) {
  const std::size_t n = g.num_vertices();
  using Entry = std::pair<std::size_t, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<std::size_t> residual(n);
  for (VertexId v = 0; v < n; ++v) {
    residual[v] = g.degree(v);
    heap.emplace(residual[v], v);
  }
  std::vector<char> removed(n, 0);
  DegeneracyOrdering out;
  out.order.reserve(n);
  while (!heap.empty()) {
    auto [deg, v] = heap.top();
    heap.pop();
    if (removed[v] || deg != residual[v]) continue;
    removed[v] = 1;
    out.order.push_back(v);
    out.degeneracy = std::max(out.degeneracy, static_cast<std::uint32_t>(deg));
    for (VertexId w : g.neighbors(v)) {
      if (!removed[w]) heap.emplace(--residual[w], w);
    }
  }
  return out;
}

bool check_degeneracy_certificate(const Graph& g, const DegeneracyOrdering& ordering) {
  const std::size_t n = g.num_vertices();
  if (ordering.order.size() != n) return false;
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = ordering.order[i];
    if (v >= n || position[v] != n) return false;
    position[v] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = ordering.order[i];
    std::size_t later = 0;
    for (VertexId w : g.neighbors(v)) later += position[w] > i;
    if (later > ordering.degeneracy) return false;
  }
  return true;
}

std::uint64_t edge_boundary_min(const Graph& g, std::size_t k, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k + 1 > n) {
    throw InvalidParameter("subset size k=" + std::to_string(k) + " must lie in [1, n-1] for n=" +
                           std::to_string(n));
  }
  require_expansion_budget(g, max_vertices);
  const auto masks = adjacency_masks(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  // Gosper's hack walks the k-subsets in increasing numeric order.
  std::uint64_t subset = (std::uint64_t{1} << k) - 1;
  while (subset <= full) {
    std::uint64_t cut = 0;
    for (std::uint64_t rest = subset; rest != 0 && cut < best; rest &= rest - 1) {
      cut += std::popcount(masks[std::countr_zero(rest)] & ~subset);
    }
    best = std::min(best, cut);
    const std::uint64_t low = subset & (~subset + 1);
    const std::uint64_t ripple = subset + low;
    if (ripple == 0) break;
    subset = (((ripple ^ subset) >> 2) / low) | ripple;
  }
  return best;
}

ExpansionProfile expansion_profile(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw InvalidParameter("edge expansion needs at least two vertices");
  require_expansion_budget(g, max_vertices);
  const auto masks = adjacency_masks(g);

  // Gray-code walk: each step toggles one vertex and updates e(A) in O(1).
  ExpansionProfile profile;
  profile.boundary_min.assign(n + 1, std::numeric_limits<std::uint64_t>::max());
  std::uint64_t subset = 0;
  std::int64_t cut = 0;
  std::size_t size = 0;
  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int v = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << v;
    const std::int64_t deg = static_cast<std::int64_t>(g.degree(static_cast<VertexId>(v)));
    if (subset & bit) {
      subset ^= bit;
      cut += 2 * std::popcount(masks[v] & subset) - deg;
      --size;
    } else {
      cut += deg - 2 * std::popcount(masks[v] & subset);
      subset ^= bit;
      ++size;
    }
    auto& slot = profile.boundary_min[size];
    slot = std::min(slot, static_cast<std::uint64_t>(cut));
  }
  profile.boundary_min[0] = 0;
  profile.boundary_min[n] = 0;

  profile.edge_expansion = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double e = static_cast<double>(profile.boundary_min[k]);
    profile.edge_expansion = std::min(profile.edge_expansion, e / static_cast<double>(k));
    profile.inverse_perimeter += 1.0 / e;
  }
  return profile;
}

GraphStats measure_graph(const Graph& g, bool with_expansion, std::size_t max_vertices) {
  GraphStats stats;
  stats.vertices = g.num_vertices();
  stats.edges = g.num_edges();
  stats.diameter = diameter(g);
  stats.max_degree = max_degree(g);
  stats.degeneracy = degeneracy_ordering(g).degeneracy;
  if (with_expansion && g.num_vertices() >= 2 && g.num_vertices() <= max_vertices) {
    stats.expansion = expansion_profile(g, max_vertices);
  }
  return stats;
}

}  // namespace fpptree
