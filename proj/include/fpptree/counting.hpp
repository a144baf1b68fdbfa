#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpptree/graph.hpp"

namespace fpptree {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultPathBudget = 100'000'000;

// Simple paths of length L (L edges, L + 1 distinct vertices) starting at s.
// Throws BudgetExceeded after `budget` search-node expansions.
BigInt count_simple_paths_from(const Graph& g, VertexId s, std::uint32_t L,
                               std::uint64_t budget = kDefaultPathBudget);
BigInt count_walks(const Graph& g, std::uint32_t L);
BigInt count_walks_from(const Graph& g, VertexId s, std::uint32_t L);

// An upper bound rounded up to an integer. `exact` is false when the value
// went through a real square root and was rounded up.
struct BoundValue {
  BigInt value;
  bool exact = true;
};

// 2 n 2^L (d Delta)^(L/2).
BoundValue bound_walks_degenerate(std::uint64_t n, std::uint64_t d, std::uint64_t max_degree, std::uint32_t L);
// 2 n 2^L 6^(L/2 - 3g) Delta^(L/2 + 3g); needs Delta >= 6.
BoundValue bound_paths_genus(std::uint64_t n, std::uint64_t genus, std::uint64_t max_degree, std::uint32_t L);

struct MetaPlan {
  std::uint64_t L = 0;
  double failure_probability = 0.0;
};

// L = ceil(c e a K), failure p + c^-L.
MetaPlan meta_theorem_plan(double p, double a, double c, double K);

enum class BoundKind { trivial, degenerate, genus };

std::string to_string(BoundKind kind);

struct CountReport {
  std::string graph_id;
  std::optional<VertexId> source;  // absent for whole-graph totals
  std::uint32_t L = 0;
  BigInt exact_count;
  BoundKind bound_kind = BoundKind::trivial;
  BoundValue bound;
  bool pass = false;
};

// Every (L, kind) row for one graph: walks against the degenerate bound, the
// total simple-path count against the genus bound (genus declared), and paths
// from s against Delta^L.
std::vector<CountReport> count_reports(const std::string& graph_id, const Graph& g, VertexId s, std::uint32_t max_L,
                                       std::optional<std::uint32_t> genus,
                                       std::uint64_t budget = kDefaultPathBudget);

struct BoundInputs {
  std::uint64_t n = 0;
  std::uint64_t diameter = 0;
  std::uint64_t max_degree = 0;
  std::uint64_t degeneracy = 0;
  std::optional<std::uint64_t> genus;
  std::optional<double> inverse_perimeter;
};

struct BoundEntry {
  std::string id;
  std::string theorem_ref;
  std::string metric;  // "height" or "cover_time"
  double value = 0.0;
  // Exceedance means metric > value, or metric >= value when `inclusive`.
  bool inclusive = false;
  double allowed_failure = 0.0;
  bool applicable = true;
  std::string note;
};

struct BoundMatrix {
  std::vector<BoundEntry> entries;
  const BoundEntry* find(const std::string& id) const;
};

BoundMatrix bound_matrix(const BoundInputs& in);

}  // namespace fpptree
