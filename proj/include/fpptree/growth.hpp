#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpptree/graph.hpp"
#include "fpptree/randvar.hpp"

namespace fpptree {

struct RootedTree {
  VertexId root = 0;
  std::vector<VertexId> parent;          // kNoVertex at the root
  std::vector<std::uint32_t> attach_order;  // round in which each vertex joined; 0 for the root
};

std::vector<std::uint32_t> depths(const RootedTree& t);
std::uint32_t height(const RootedTree& t);

// Empty when t is a spanning tree of g rooted at t.root whose parent links are
// graph edges and whose attach order is a permutation with parents first.
std::vector<std::string> validate_spanning_tree(const Graph& g, const RootedTree& t);

// The discrete process: each round adds a uniformly random boundary edge.
RootedTree grow_discrete(const Graph& g, VertexId s, Stream& stream);

using EdgeWeights = std::vector<double>;

EdgeWeights sample_edge_weights(const Graph& g, Stream& stream);

struct FppResult {
  RootedTree tree;
  std::vector<double> hitting_time;
  double cover_time = 0.0;
  VertexId cover_vertex = 0;  // vertex attaining the cover time
};

// Shortest-path tree from s. Ties are broken by (distance, lower predecessor id).
FppResult grow_fpp(const Graph& g, VertexId s, const EdgeWeights& weights);

// Dijkstra over the edges with mask[e] set. Unreached vertices get +inf.
// Stops early once `target` is settled when target != kNoVertex.
std::vector<double> restricted_hitting_times(const Graph& g, VertexId s, const EdgeWeights& weights,
                                             const std::vector<bool>& mask, VertexId target = kNoVertex);

// Checks monotonicity along the tree and |tau(u) - tau(v)| <= w(uv) on every edge.
std::vector<std::string> check_fpp_certificate(const Graph& g, const EdgeWeights& weights, const FppResult& r);

// Hop length of the heaviest root-to-leaf path (the path to cover_vertex).
std::uint32_t max_weight_path_length(const FppResult& r);

enum class Process { discrete, fpp };

std::string_view to_string(Process p);
Process process_from_string(std::string_view name);

std::uint32_t sample_height(const Graph& g, VertexId s, Process process, Stream& stream);

// Canonical tree key: the parent array, kNoVertex at the root.
using TreeKey = std::vector<VertexId>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kExactLawMaxVertices = 9;
inline constexpr std::size_t kExactLawStateBudget = 2'000'000;

// Exact law of the discrete process from s, by dynamic programming over
// partial trees with exact rational weights.
std::map<TreeKey, Rational> exact_discrete_law(const Graph& g, VertexId s,
                                               std::size_t state_budget = kExactLawStateBudget);

struct LawReport {
  std::uint64_t trials = 0;
  std::size_t support = 0;
  std::uint64_t outside_support = 0;
  double total_variation = 0.0;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Empirical tree frequencies of `process` over `trials` draws against the exact law.
LawReport law_equivalence_test(const Graph& g, VertexId s, Process process, std::uint64_t trials, Stream& stream);
LawReport compare_to_law(const std::map<TreeKey, Rational>& law, const std::map<TreeKey, std::uint64_t>& counts);

}  // namespace fpptree
