#include "fpptree/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include <boost/math/distributions/chi_squared.hpp>

#include "fpptree/error.hpp"

namespace fpptree {

namespace {

void require_vertex(const Graph& g, VertexId s) {
  if (s >= g.num_vertices()) throw InvalidParameter("source vertex out of range");
}

}  // namespace

std::vector<std::uint32_t> depths(const RootedTree& t) {
  const std::size_t n = t.parent.size();
  // Vertices sorted by attach order have their parent earlier.
  std::vector<VertexId> by_round(n);
  for (VertexId v = 0; v < n; ++v) by_round[t.attach_order[v]] = v;
  std::vector<std::uint32_t> depth(n, 0);
  for (VertexId v : by_round) {
    if (t.parent[v] != kNoVertex) depth[v] = depth[t.parent[v]] + 1;
  }
  return depth;
}

std::uint32_t height(const RootedTree& t) {
  const auto d = depths(t);
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<std::string> validate_spanning_tree(const Graph& g, const RootedTree& t) {
  std::vector<std::string> problems;
  const std::size_t n = g.num_vertices();
  if (t.parent.size() != n || t.attach_order.size() != n) {
    problems.push_back("tree arrays do not match the vertex count");
    return problems;
  }
  if (t.root >= n || t.parent[t.root] != kNoVertex) problems.push_back("root is invalid or has a parent");
  if (t.root < n && t.attach_order[t.root] != 0) problems.push_back("root does not join at round 0");
  std::vector<bool> seen(n, false);
  for (VertexId v = 0; v < n; ++v) {
    const auto r = t.attach_order[v];
    if (r >= n || seen[r]) {
      problems.push_back("attach order is not a permutation");
      break;
    }
    seen[r] = true;
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v == t.root) continue;
    const VertexId p = t.parent[v];
    if (p == kNoVertex || p >= n) {
      problems.push_back("vertex " + std::to_string(v) + " has no parent");
      continue;
    }
    if (!g.has_edge(p, v)) problems.push_back("parent link " + std::to_string(p) + "-" + std::to_string(v) + " is not an edge");
    if (t.attach_order[p] >= t.attach_order[v]) problems.push_back("vertex " + std::to_string(v) + " joins before its parent");
  }
  return problems;
}

RootedTree grow_discrete(const Graph& g, VertexId s, Stream& stream) {
  require_vertex(g, s);
  const std::size_t n = g.num_vertices();
  RootedTree t;
  t.root = s;
  t.parent.assign(n, kNoVertex);
  t.attach_order.assign(n, 0);

  std::vector<bool> inside(n, false);
  // Each edge enters the pool at most once, when its first endpoint joins.
  // Stale entries (both ends inside) are dropped when drawn, which keeps the
  // draw uniform over the live boundary.
  std::vector<EdgeId> pool;
  auto join = [&](VertexId v) {
    inside[v] = true;
    const auto nbrs = g.neighbors(v);
    const auto eids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!inside[nbrs[i]]) pool.push_back(eids[i]);
    }
  };
  join(s);
  for (std::uint32_t round = 1; round < n; ++round) {
    for (;;) {
      if (pool.empty()) throw InvalidGraph("boundary emptied before the tree spanned the graph");
      const auto i = static_cast<std::size_t>(stream.uniform_index(pool.size()));
      const Edge& e = g.edge(pool[i]);
      pool[i] = pool.back();
      pool.pop_back();
      if (inside[e.u] == inside[e.v]) continue;
      const VertexId from = inside[e.u] ? e.u : e.v;
      const VertexId to = inside[e.u] ? e.v : e.u;
      t.parent[to] = from;
      t.attach_order[to] = round;
      join(to);
      break;
    }
  }
  return t;
}

EdgeWeights sample_edge_weights(const Graph& g, Stream& stream) {
  EdgeWeights w(g.num_edges());
  for (auto& x : w) x = sample_exponential(stream, 1.0);
  return w;
}

namespace {

void require_weights(const Graph& g, const EdgeWeights& weights) {
  if (weights.size() != g.num_edges()) throw InvalidParameter("weights must cover every edge");
  for (double w : weights) {
    if (!(w > 0) || !std::isfinite(w)) throw InvalidParameter("edge weights must be positive and finite");
  }
}

using QueueItem = std::pair<double, VertexId>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

FppResult grow_fpp(const Graph& g, VertexId s, const EdgeWeights& weights) {
  require_vertex(g, s);
  require_weights(g, weights);
  const std::size_t n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();

  FppResult r;
  r.tree.root = s;
  r.tree.parent.assign(n, kNoVertex);
  r.tree.attach_order.assign(n, 0);
  r.hitting_time.assign(n, inf);
  std::vector<bool> settled(n, false);

  MinQueue queue;
  r.hitting_time[s] = 0.0;
  queue.emplace(0.0, s);
  std::uint32_t round = 0;
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u] || d != r.hitting_time[u]) continue;
    settled[u] = true;
    r.tree.attach_order[u] = round++;
    if (d >= r.cover_time) {
      r.cover_time = d;
      r.cover_vertex = u;
    }
    const auto nbrs = g.neighbors(u);
    const auto eids = g.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId v = nbrs[i];
      if (settled[v]) continue;
      const double nd = d + weights[eids[i]];
      if (nd < r.hitting_time[v]) {
        r.hitting_time[v] = nd;
        r.tree.parent[v] = u;
        queue.emplace(nd, v);
      } else if (nd == r.hitting_time[v] && u < r.tree.parent[v]) {
        r.tree.parent[v] = u;
      }
    }
  }
  return r;
}

std::vector<double> restricted_hitting_times(const Graph& g, VertexId s, const EdgeWeights& weights,
                                             const std::vector<bool>& mask, VertexId target) {
  require_vertex(g, s);
  if (weights.size() != g.num_edges() || mask.size() != g.num_edges()) {
    throw InvalidParameter("weights and mask must cover every edge");
  }
  const std::size_t n = g.num_vertices();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<bool> settled(n, false);
  MinQueue queue;
  dist[s] = 0.0;
  queue.emplace(0.0, s);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    if (u == target) break;
    const auto nbrs = g.neighbors(u);
    const auto eids = g.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!mask[eids[i]] || settled[nbrs[i]]) continue;
      const double nd = d + weights[eids[i]];
      if (nd < dist[nbrs[i]]) {
        dist[nbrs[i]] = nd;
        queue.emplace(nd, nbrs[i]);
      }
    }
  }
  return dist;
}

std::vector<std::string> check_fpp_certificate(const Graph& g, const EdgeWeights& weights, const FppResult& r) {
  auto problems = validate_spanning_tree(g, r.tree);
  if (!problems.empty()) return problems;
  const auto& tau = r.hitting_time;
  if (tau[r.tree.root] != 0.0) problems.push_back("source hitting time is not zero");
  double cover = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) cover = std::max(cover, tau[v]);
  if (cover != r.cover_time || tau[r.cover_vertex] != r.cover_time) problems.push_back("cover time is not the max hitting time");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const double w = weights[e];
    const double slack = 1e-12 * std::max(1.0, std::max(tau[u], tau[v]));
    if (r.tree.parent[v] == u || r.tree.parent[u] == v) {
      const VertexId child = r.tree.parent[v] == u ? v : u;
      const VertexId par = r.tree.parent[child];
      if (std::abs(tau[child] - (tau[par] + w)) > slack) {
        problems.push_back("tree edge " + std::to_string(u) + "-" + std::to_string(v) + " breaks tau(child) = tau(parent) + w");
      }
    } else if (std::abs(tau[u] - tau[v]) > w + slack) {
      problems.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " violates the optimality certificate");
    }
  }
  return problems;
}

std::uint32_t max_weight_path_length(const FppResult& r) {
  std::uint32_t hops = 0;
  for (VertexId v = r.cover_vertex; r.tree.parent[v] != kNoVertex; v = r.tree.parent[v]) ++hops;
  return hops;
}

std::string_view to_string(Process p) { return p == Process::discrete ? "discrete" : "fpp"; }

Process process_from_string(std::string_view name) {
  if (name == "discrete") return Process::discrete;
  if (name == "fpp") return Process::fpp;
  throw InvalidParameter("unknown process '" + std::string(name) + "'");
}

std::uint32_t sample_height(const Graph& g, VertexId s, Process process, Stream& stream) {
  if (process == Process::discrete) return height(grow_discrete(g, s, stream));
  return height(grow_fpp(g, s, sample_edge_weights(g, stream)).tree);
}

std::map<TreeKey, Rational> exact_discrete_law(const Graph& g, VertexId s, std::size_t state_budget) {
  require_vertex(g, s);
  const std::size_t n = g.num_vertices();
  if (n > kExactLawMaxVertices) {
    throw BudgetExceeded("exact law is limited to " + std::to_string(kExactLawMaxVertices) + " vertices, got " +
                         std::to_string(n));
  }
  // A partial tree is its parent array; membership is parent set, or the root.
  std::map<TreeKey, Rational> layer;
  layer.emplace(TreeKey(n, kNoVertex), Rational(1));
  for (std::size_t round = 1; round < n; ++round) {
    std::map<TreeKey, Rational> next;
    for (const auto& [key, prob] : layer) {
      auto inside = [&](VertexId v) { return v == s || key[v] != kNoVertex; };
      std::vector<Edge> boundary;
      for (const auto& e : g.edges()) {
        if (inside(e.u) != inside(e.v)) boundary.push_back(e);
      }
      const Rational share = prob / static_cast<long long>(boundary.size());
      for (const auto& e : boundary) {
        TreeKey child = key;
        if (inside(e.u)) {
          child[e.v] = e.u;
        } else {
          child[e.u] = e.v;
        }
        next[std::move(child)] += share;
      }
      if (next.size() > state_budget) {
        throw BudgetExceeded("exact law state budget of " + std::to_string(state_budget) + " exceeded at round " +
                             std::to_string(round));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

LawReport compare_to_law(const std::map<TreeKey, Rational>& law, const std::map<TreeKey, std::uint64_t>& counts) {
  LawReport report;
  report.support = law.size();
  for (const auto& [key, c] : counts) report.trials += c;
  if (report.trials == 0) throw InvalidParameter("law comparison needs at least one trial");
  const double n = static_cast<double>(report.trials);
  double tv = 0.0;
  for (const auto& [key, c] : counts) {
    if (!law.contains(key)) {
      report.outside_support += c;
      tv += static_cast<double>(c) / n;
    }
  }
  for (const auto& [key, p] : law) {
    const double expected = static_cast<double>(p);
    const auto it = counts.find(key);
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    tv += std::abs(observed / n - expected);
    const double e = expected * n;
    report.chi_square += (observed - e) * (observed - e) / e;
  }
  report.total_variation = tv / 2.0;
  report.degrees_of_freedom = law.size() > 1 ? law.size() - 1 : 0;
  if (report.outside_support > 0) {
    report.p_value = 0.0;
  } else if (report.degrees_of_freedom > 0) {
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(report.degrees_of_freedom));
    report.p_value = boost::math::cdf(boost::math::complement(dist, report.chi_square));
  }
  return report;
}

LawReport law_equivalence_test(const Graph& g, VertexId s, Process process, std::uint64_t trials, Stream& stream) {
  const auto law = exact_discrete_law(g, s);
  std::map<TreeKey, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < trials; ++i) {
    if (process == Process::discrete) {
      ++counts[grow_discrete(g, s, stream).parent];
    } else {
      ++counts[grow_fpp(g, s, sample_edge_weights(g, stream)).tree.parent];
    }
  }
  return compare_to_law(law, counts);
}

}  // namespace fpptree
