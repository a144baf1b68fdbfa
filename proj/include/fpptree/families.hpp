#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpptree/graph.hpp"

namespace fpptree {

enum class FamilyKind {
  complete,
  grid,
  ladder_h,
  subdivided_tree_i,
  glued_g,
  planar_lower_g,
  degenerate_lower_g,
  path,
  cycle,
  star,
  house,
};

std::string_view to_string(FamilyKind kind);
// Throws InvalidParameter for unknown names.
FamilyKind family_kind_from_string(std::string_view name);

/// Declarative generator description.
///
/// Parameter keys by kind:
///   complete: n            grid: d, k              ladder_H: L, delta
///   subdivided_tree_I: L, m                        path/cycle: n
///   star: leaves           house: (none)
///   glued_G:            Delta, D                   | override: L, delta, [a | a_over_e2], [m]
///   planar_lower_G:     Delta, D                   | override: L, delta, [a | a_over_e2], [m]
///   degenerate_lower_G: Delta, D, d                | override: L, delta, d, [a | a_over_e2], [m]
/// Override mode is selected by the presence of L.
struct FamilySpec {
  FamilyKind kind = FamilyKind::complete;
  std::map<std::string, double> params;
};

/// Metadata declared by a generator alongside the graph it builds.
///
/// For the lower-bound constructions, `groups` holds V_1..V_L, and
/// `connector_groups` holds the sets between consecutive groups (single
/// connector vertices for planar_lower_G, the d-sets V'_i for
/// degenerate_lower_G). The subdivided binary tree I is described by
/// `tree_order` (parents first), `tree_parent` (indexed by graph vertex,
/// kNoVertex outside I and at its root) and `tree_leaves` in depth-first
/// order; leaf i is identified with groups[i][0].
struct ConstructionMeta {
  FamilyKind kind = FamilyKind::complete;
  std::map<std::string, double> resolved;

  std::uint64_t declared_diameter_bound = 0;
  std::uint64_t declared_max_degree = 0;
  std::optional<std::uint32_t> declared_degeneracy;
  std::optional<std::uint32_t> declared_genus;

  VertexId source = 0;
  std::optional<VertexId> target;

  std::vector<std::vector<VertexId>> groups;
  std::vector<std::vector<VertexId>> connector_groups;
  std::vector<VertexId> tree_leaves;
  std::vector<VertexId> tree_order;
  std::vector<VertexId> tree_parent;

  // Lower-bound families: the common threshold of events A and B, and the
  // height that A and B together force.
  std::optional<double> event_threshold;
  std::optional<std::uint64_t> height_target;

  std::vector<std::string> notes;

  bool has_tree() const { return !tree_order.empty(); }
  // True iff e is an edge of the subdivided tree I.
  bool is_tree_edge(const Edge& e) const;
};

struct FamilyInstance {
  Graph graph;
  ConstructionMeta meta;
};

inline constexpr std::size_t kDefaultVertexBudget = std::size_t{1} << 22;

// Generators. Preconditions are validated up front and violations throw
// InvalidParameter (or BudgetExceeded for oversize instances).
FamilyInstance gen_complete(std::size_t n);
FamilyInstance gen_grid(std::uint32_t dimension, std::uint32_t side,
                        std::size_t vertex_budget = kDefaultVertexBudget);
FamilyInstance gen_ladder_h(std::uint64_t groups, std::uint32_t group_size,
                            std::size_t vertex_budget = kDefaultVertexBudget);
FamilyInstance gen_subdivided_tree_i(std::uint64_t leaves, std::uint64_t subdivision,
                                     std::size_t vertex_budget = kDefaultVertexBudget);
FamilyInstance gen_path(std::size_t n);
FamilyInstance gen_cycle(std::size_t n);
FamilyInstance gen_star(std::size_t leaves);
FamilyInstance gen_house();

/// Parameters of the three lower-bound constructions. Formula mode uses
/// (max_degree, diameter[, degeneracy]) and the constants from the proofs;
/// override mode is selected by setting `groups` and takes L, delta, d and
/// either a or m explicitly. `a` is carried as a multiple of e^2.
struct LowerBoundConfig {
  std::optional<std::uint64_t> max_degree;
  std::optional<std::uint64_t> diameter;
  std::uint32_t degeneracy = 0;

  std::optional<std::uint64_t> groups;
  std::optional<std::uint32_t> group_size;
  std::optional<double> a_over_e2;
  std::optional<std::uint64_t> subdivision;
};

FamilyInstance gen_glued_g(const LowerBoundConfig& config, std::size_t vertex_budget = kDefaultVertexBudget);
FamilyInstance gen_planar_lower_g(const LowerBoundConfig& config,
                                  std::size_t vertex_budget = kDefaultVertexBudget);
FamilyInstance gen_degenerate_lower_g(const LowerBoundConfig& config,
                                      std::size_t vertex_budget = kDefaultVertexBudget);

FamilyInstance generate(const FamilySpec& spec, std::size_t vertex_budget = kDefaultVertexBudget);

// Largest power of two not exceeding x (x >= 1), or 0 when x < 1.
std::uint64_t largest_power_of_two_at_most(long double x);

/// Compares declared metadata with measurements: measured max degree and
/// (when n <= diameter_limit) measured diameter must not exceed the declared
/// values, and groups/tree data must be consistent with the graph. Returns
/// human-readable violations; an empty list means the construction checks out.
std::vector<std::string> check_construction(const FamilyInstance& instance,
                                            std::size_t diameter_limit = 20000);

}  // namespace fpptree
