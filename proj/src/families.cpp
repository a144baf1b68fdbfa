#include "fpptree/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "fpptree/analytics.hpp"
#include "fpptree/error.hpp"

namespace fpptree {

namespace {

constexpr long double kE = std::numbers::e_v<long double>;
constexpr long double kE2 = kE * kE;

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t reserve_vertices = 0) { (void)reserve_vertices; }

  VertexId add_vertex() { return static_cast<VertexId>(n_++); }
  VertexId add_vertices(std::size_t count) {
    auto first = static_cast<VertexId>(n_);
    n_ += count;
    return first;
  }
  void add_edge(VertexId u, VertexId v) { edges_.push_back({u, v}); }
  void reserve_edges(std::size_t m) { edges_.reserve(m); }
  std::size_t size() const { return n_; }

  Graph build() && { return Graph::from_edges(n_, std::move(edges_)); }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

struct TreeLinks {
  std::vector<VertexId> order;
  std::vector<std::pair<VertexId, VertexId>> child_parent;
  std::vector<VertexId> leaves;
};

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::uint64_t log2_exact(std::uint64_t x) { return static_cast<std::uint64_t>(std::countr_zero(x)); }

void require_budget(long double projected, std::size_t budget, std::string_view what) {
  if (projected > static_cast<long double>(budget)) {
    throw BudgetExceeded(std::string(what) + " would have " + std::to_string(static_cast<double>(projected)) +
                         " vertices, exceeding the vertex budget of " + std::to_string(budget));
  }
}

// Perfect binary tree with L leaves in heap layout; each leaf-incident edge
// becomes a path of m edges. Leaves in heap order are the depth-first order.
// With empty `leaf_ids` each leaf is allocated right after its own path.
TreeLinks append_tree_i(GraphBuilder& b, std::uint64_t leaves, std::uint64_t subdivision,
                        const std::vector<VertexId>& leaf_ids) {
  TreeLinks links;
  std::vector<VertexId> internal(leaves, kNoVertex);  // heap index 1..L-1
  for (std::uint64_t h = 1; h < leaves; ++h) {
    internal[h] = b.add_vertex();
    links.order.push_back(internal[h]);
    if (h > 1) {
      b.add_edge(internal[h / 2], internal[h]);
      links.child_parent.emplace_back(internal[h], internal[h / 2]);
    }
  }
  for (std::uint64_t h = leaves; h < 2 * leaves; ++h) {
    VertexId prev = internal[h / 2];
    for (std::uint64_t step = 1; step < subdivision; ++step) {
      VertexId x = b.add_vertex();
      b.add_edge(prev, x);
      links.child_parent.emplace_back(x, prev);
      links.order.push_back(x);
      prev = x;
    }
    VertexId leaf = leaf_ids.empty() ? b.add_vertex() : leaf_ids[h - leaves];
    b.add_edge(prev, leaf);
    links.child_parent.emplace_back(leaf, prev);
    links.order.push_back(leaf);
    links.leaves.push_back(leaf);
  }
  return links;
}

void install_tree(ConstructionMeta& meta, std::size_t n, TreeLinks links) {
  meta.tree_parent.assign(n, kNoVertex);
  for (auto [child, parent] : links.child_parent) meta.tree_parent[child] = parent;
  meta.tree_order = std::move(links.order);
  meta.tree_leaves = std::move(links.leaves);
}

std::vector<std::vector<VertexId>> add_groups(GraphBuilder& b, std::uint64_t count, std::uint32_t size) {
  std::vector<std::vector<VertexId>> groups(count);
  for (auto& group : groups) {
    VertexId first = b.add_vertices(size);
    for (std::uint32_t j = 0; j < size; ++j) group.push_back(first + j);
  }
  return groups;
}

void join_complete_bipartite(GraphBuilder& b, const std::vector<VertexId>& left,
                             const std::vector<VertexId>& right) {
  for (VertexId x : left) {
    for (VertexId y : right) b.add_edge(x, y);
  }
}

// Lower-bound construction parameters after formula evaluation or override.
struct Resolved {
  bool formula = false;
  std::uint64_t groups = 0;     // L
  std::uint32_t group_size = 0; // delta
  std::uint32_t degeneracy = 0; // d
  long double a_over_e2 = 0;
  std::uint64_t subdivision = 0; // m
};

std::uint64_t ceil_positive(long double x) {
  if (!(x > 0) || !std::isfinite(static_cast<double>(x))) throw InvalidParameter("subdivision length is not finite");
  // a given directly is carried as a / e^2, so absorb the round-trip error
  const long double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-12L * nearest) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(x));
}

// Override mode: L, delta and at least one of (a, m); the missing one is
// derived from `length_scale` = m / (a L) so that threshold and m agree.
Resolved resolve_override(const LowerBoundConfig& c, long double length_scale, std::string_view family) {
  Resolved r;
  r.groups = *c.groups;
  if (!is_power_of_two(r.groups) || r.groups < 2) {
    throw InvalidParameter(std::string(family) + ": L must be a power of 2 and at least 2");
  }
  if (!c.group_size || *c.group_size < 1) throw InvalidParameter(std::string(family) + ": delta must be >= 1");
  r.group_size = *c.group_size;
  if (!c.a_over_e2 && !c.subdivision) {
    throw InvalidParameter(std::string(family) + ": override mode needs a (or a_over_e2) or m");
  }
  if (c.a_over_e2 && !(*c.a_over_e2 > 0)) throw InvalidParameter(std::string(family) + ": a must be positive");
  if (c.subdivision && *c.subdivision < 1) throw InvalidParameter(std::string(family) + ": m must be >= 1");
  const long double L = static_cast<long double>(r.groups);
  if (c.a_over_e2) {
    r.a_over_e2 = *c.a_over_e2;
    r.subdivision = c.subdivision ? *c.subdivision : ceil_positive(r.a_over_e2 * kE2 * L * length_scale);
  } else {
    r.subdivision = *c.subdivision;
    r.a_over_e2 = static_cast<long double>(r.subdivision) / (L * length_scale) / kE2;
  }
  return r;
}

void write_resolved(ConstructionMeta& meta, const Resolved& r) {
  meta.resolved["formula_mode"] = r.formula ? 1.0 : 0.0;
  meta.resolved["L"] = static_cast<double>(r.groups);
  meta.resolved["delta"] = r.group_size;
  meta.resolved["m"] = static_cast<double>(r.subdivision);
  meta.resolved["a_over_e2"] = static_cast<double>(r.a_over_e2);
  meta.resolved["a"] = static_cast<double>(r.a_over_e2 * kE2);
  if (r.degeneracy > 0) meta.resolved["d"] = r.degeneracy;
}

void check_diameter_budget(const LowerBoundConfig& c, const ConstructionMeta& meta, std::string_view family) {
  if (c.diameter && meta.declared_diameter_bound > *c.diameter) {
    throw InvalidParameter(std::string(family) + ": construction diameter bound " +
                           std::to_string(meta.declared_diameter_bound) + " exceeds D=" + std::to_string(*c.diameter));
  }
}

long double log_checked(std::uint64_t max_degree) { return std::log(static_cast<long double>(max_degree)); }

}  // namespace

bool ConstructionMeta::is_tree_edge(const Edge& e) const {
  if (tree_parent.empty()) return false;
  return tree_parent[e.u] == e.v || tree_parent[e.v] == e.u;
}

std::uint64_t largest_power_of_two_at_most(long double x) {
  if (!(x >= 1)) return 0;
  // A power of two within one ulp above the computed quotient is accepted.
  const long double slack = std::nextafter(x, std::numeric_limits<long double>::infinity());
  std::uint64_t p = 1;
  while (p <= (std::uint64_t{1} << 62) && static_cast<long double>(2 * p) <= slack) p *= 2;
  return p;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::complete: return "complete";
    case FamilyKind::grid: return "grid";
    case FamilyKind::ladder_h: return "ladder_H";
    case FamilyKind::subdivided_tree_i: return "subdivided_tree_I";
    case FamilyKind::glued_g: return "glued_G";
    case FamilyKind::planar_lower_g: return "planar_lower_G";
    case FamilyKind::degenerate_lower_g: return "degenerate_lower_G";
    case FamilyKind::path: return "path";
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::star: return "star";
    case FamilyKind::house: return "house";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
  for (auto kind : {FamilyKind::complete, FamilyKind::grid, FamilyKind::ladder_h, FamilyKind::subdivided_tree_i,
                    FamilyKind::glued_g, FamilyKind::planar_lower_g, FamilyKind::degenerate_lower_g,
                    FamilyKind::path, FamilyKind::cycle, FamilyKind::star, FamilyKind::house}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidParameter("unknown family '" + std::string(name) + "'");
}

FamilyInstance gen_complete(std::size_t n) {
  if (n < 2) throw InvalidParameter("complete: n must be >= 2");
  if (n > 65536) throw BudgetExceeded("complete: n=" + std::to_string(n) + " exceeds the edge budget");
  GraphBuilder b;
  b.add_vertices(n);
  b.reserve_edges(n * (n - 1) / 2);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  ConstructionMeta meta;
  meta.kind = FamilyKind::complete;
  meta.resolved["n"] = static_cast<double>(n);
  meta.declared_diameter_bound = 1;
  meta.declared_max_degree = n - 1;
  meta.declared_degeneracy = static_cast<std::uint32_t>(n - 1);
  if (n <= 4) meta.declared_genus = 0;
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_grid(std::uint32_t dimension, std::uint32_t side, std::size_t vertex_budget) {
  if (dimension < 1 || side < 1) throw InvalidParameter("grid: d and k must be >= 1");
  require_budget(std::pow(static_cast<long double>(side) + 1, dimension), vertex_budget, "grid");
  std::size_t n = 1;
  std::vector<std::size_t> stride(dimension);
  for (std::uint32_t i = 0; i < dimension; ++i) {
    stride[i] = n;
    n *= side + 1;
  }
  GraphBuilder b;
  b.add_vertices(n);
  b.reserve_edges(static_cast<std::size_t>(dimension) * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::uint32_t i = 0; i < dimension; ++i) {
      if ((x / stride[i]) % (side + 1) < side) {
        b.add_edge(static_cast<VertexId>(x), static_cast<VertexId>(x + stride[i]));
      }
    }
  }
  ConstructionMeta meta;
  meta.kind = FamilyKind::grid;
  meta.resolved["d"] = dimension;
  meta.resolved["k"] = side;
  meta.declared_diameter_bound = static_cast<std::uint64_t>(dimension) * side;
  meta.declared_max_degree = side >= 2 ? 2ull * dimension : dimension;
  meta.declared_degeneracy = dimension;
  if (dimension <= 2 || (side == 1 && dimension <= 3)) meta.declared_genus = 0;
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_ladder_h(std::uint64_t groups, std::uint32_t group_size, std::size_t vertex_budget) {
  if (groups < 2 || group_size < 1) throw InvalidParameter("ladder_H: need L >= 2 and delta >= 1");
  require_budget(static_cast<long double>(groups) * group_size, vertex_budget, "ladder_H");
  GraphBuilder b;
  ConstructionMeta meta;
  meta.kind = FamilyKind::ladder_h;
  meta.groups = add_groups(b, groups, group_size);
  for (std::uint64_t i = 0; i + 1 < groups; ++i) join_complete_bipartite(b, meta.groups[i], meta.groups[i + 1]);
  meta.resolved["L"] = static_cast<double>(groups);
  meta.resolved["delta"] = group_size;
  meta.declared_diameter_bound = group_size >= 2 ? std::max<std::uint64_t>(groups - 1, 2) : groups - 1;
  meta.declared_max_degree = groups == 2 ? group_size : 2ull * group_size;
  meta.declared_degeneracy = group_size;
  if (group_size <= 2) meta.declared_genus = 0;
  meta.source = meta.groups.front().front();
  meta.target = meta.groups.back().front();
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_subdivided_tree_i(std::uint64_t leaves, std::uint64_t subdivision, std::size_t vertex_budget) {
  if (leaves < 2 || !is_power_of_two(leaves)) {
    throw InvalidParameter("subdivided_tree_I: L must be a power of 2 and at least 2");
  }
  if (subdivision < 1) throw InvalidParameter("subdivided_tree_I: m must be >= 1");
  require_budget(static_cast<long double>(leaves - 1) + static_cast<long double>(leaves) * subdivision, vertex_budget,
                 "subdivided_tree_I");
  GraphBuilder b;
  auto links = append_tree_i(b, leaves, subdivision, {});
  ConstructionMeta meta;
  meta.kind = FamilyKind::subdivided_tree_i;
  meta.resolved["L"] = static_cast<double>(leaves);
  meta.resolved["m"] = static_cast<double>(subdivision);
  const std::uint64_t height = subdivision + log2_exact(leaves) - 1;
  meta.declared_diameter_bound = 2 * height;
  meta.declared_max_degree = leaves >= 4 ? 3 : 2;
  meta.declared_degeneracy = 1;
  meta.declared_genus = 0;
  meta.source = links.order.front();
  meta.resolved["height"] = static_cast<double>(height);
  const std::size_t n = b.size();
  install_tree(meta, n, std::move(links));
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_path(std::size_t n) {
  if (n < 1) throw InvalidParameter("path: n must be >= 1");
  GraphBuilder b;
  b.add_vertices(n);
  for (VertexId v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  ConstructionMeta meta;
  meta.kind = FamilyKind::path;
  meta.resolved["n"] = static_cast<double>(n);
  meta.declared_diameter_bound = n - 1;
  meta.declared_max_degree = std::min<std::size_t>(n - 1, 2);
  meta.declared_degeneracy = n >= 2 ? 1 : 0;
  meta.declared_genus = 0;
  meta.target = static_cast<VertexId>(n - 1);
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_cycle(std::size_t n) {
  if (n < 3) throw InvalidParameter("cycle: n must be >= 3");
  GraphBuilder b;
  b.add_vertices(n);
  for (VertexId v = 0; v < n; ++v) b.add_edge(v, static_cast<VertexId>((v + 1) % n));
  ConstructionMeta meta;
  meta.kind = FamilyKind::cycle;
  meta.resolved["n"] = static_cast<double>(n);
  meta.declared_diameter_bound = n / 2;
  meta.declared_max_degree = 2;
  meta.declared_degeneracy = 2;
  meta.declared_genus = 0;
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_star(std::size_t leaves) {
  if (leaves < 1) throw InvalidParameter("star: needs at least one leaf");
  GraphBuilder b;
  b.add_vertices(leaves + 1);
  for (VertexId v = 1; v <= leaves; ++v) b.add_edge(0, v);
  ConstructionMeta meta;
  meta.kind = FamilyKind::star;
  meta.resolved["leaves"] = static_cast<double>(leaves);
  meta.declared_diameter_bound = leaves >= 2 ? 2 : 1;
  meta.declared_max_degree = leaves;
  meta.declared_degeneracy = 1;
  meta.declared_genus = 0;
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_house() {
  GraphBuilder b;
  b.add_vertices(5);
  // Square 0-1-2-3 with the roof vertex 4 over the edge 2-3.
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}, {3, 4}}) {
    b.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  ConstructionMeta meta;
  meta.kind = FamilyKind::house;
  meta.declared_diameter_bound = 2;
  meta.declared_max_degree = 3;
  meta.declared_degeneracy = 2;
  meta.declared_genus = 0;
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_glued_g(const LowerBoundConfig& c, std::size_t vertex_budget) {
  Resolved r;
  if (c.groups) {
    // m = ceil(a L / delta)
    if (!c.group_size || *c.group_size < 1) throw InvalidParameter("glued_G: delta must be >= 1");
    r = resolve_override(c, 1.0L / *c.group_size, "glued_G");
  } else {
    if (!c.max_degree || !c.diameter) throw InvalidParameter("glued_G: needs Delta and D, or an override with L");
    const std::uint64_t Delta = *c.max_degree;
    const std::uint64_t D = *c.diameter;
    if (Delta < 3) throw InvalidParameter("glued_G: hypothesis violated: Delta must be >= 3");
    const long double needed = 16 * kE2 * kE * log_checked(Delta);
    if (static_cast<long double>(D) < needed) {
      throw InvalidParameter("glued_G: hypothesis violated: D=" + std::to_string(D) + " < 16 e^3 ln Delta = " +
                             std::to_string(static_cast<double>(needed)));
    }
    r.formula = true;
    r.group_size = static_cast<std::uint32_t>((Delta - 1) / 2);
    r.a_over_e2 = 4;
    const long double a = r.a_over_e2 * kE2;
    r.groups = largest_power_of_two_at_most(static_cast<long double>(D) * Delta / (8 * a));
    if (r.groups < 2) throw InvalidParameter("glued_G: D Delta / 8a < 2 leaves no admissible L");
    r.subdivision = ceil_positive(a * r.groups / r.group_size);
  }
  const std::uint64_t L = r.groups;
  const std::uint32_t delta = r.group_size;
  const std::uint64_t m = r.subdivision;
  require_budget(static_cast<long double>(L) * delta + (L - 1) + static_cast<long double>(L) * (m - 1), vertex_budget,
                 "glued_G");

  GraphBuilder b;
  ConstructionMeta meta;
  meta.kind = FamilyKind::glued_g;
  meta.groups = add_groups(b, L, delta);
  for (std::uint64_t i = 0; i + 1 < L; ++i) join_complete_bipartite(b, meta.groups[i], meta.groups[i + 1]);
  std::vector<VertexId> leaf_ids;
  for (const auto& group : meta.groups) leaf_ids.push_back(group.front());
  auto links = append_tree_i(b, L, m, leaf_ids);

  write_resolved(meta, r);
  meta.declared_diameter_bound = 2 * (m + log2_exact(L));
  meta.declared_max_degree = std::max<std::uint64_t>(2ull * delta + 1, 3);
  meta.source = meta.groups.front().front();
  meta.target = meta.groups.back().front();
  meta.event_threshold = static_cast<double>(2 * r.a_over_e2 * L / delta);
  meta.height_target = L - 1;
  if (r.formula && meta.declared_max_degree < *c.max_degree) {
    meta.notes.push_back("achieved max degree " + std::to_string(meta.declared_max_degree) + " < Delta=" +
                         std::to_string(*c.max_degree));
  }
  if (r.formula) check_diameter_budget(c, meta, "glued_G");
  const std::size_t n = b.size();
  install_tree(meta, n, std::move(links));
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_planar_lower_g(const LowerBoundConfig& c, std::size_t vertex_budget) {
  Resolved r;
  if (c.groups) {
    // m = ceil(a L / sqrt(delta))
    if (!c.group_size || *c.group_size < 1) throw InvalidParameter("planar_lower_G: delta must be >= 1");
    r = resolve_override(c, 1.0L / std::sqrt(static_cast<long double>(*c.group_size)), "planar_lower_G");
  } else {
    if (!c.max_degree || !c.diameter) {
      throw InvalidParameter("planar_lower_G: needs Delta and D, or an override with L");
    }
    const std::uint64_t Delta = *c.max_degree;
    const std::uint64_t D = *c.diameter;
    if (Delta < 4) throw InvalidParameter("planar_lower_G: hypothesis violated: Delta must be >= 4");
    const long double needed = 1e6L * log_checked(Delta);
    if (static_cast<long double>(D) < needed) {
      throw InvalidParameter("planar_lower_G: hypothesis violated: D=" + std::to_string(D) +
                             " < 10^6 ln Delta = " + std::to_string(static_cast<double>(needed)));
    }
    r.formula = true;
    r.group_size = static_cast<std::uint32_t>(Delta / 2);
    r.a_over_e2 = 1e5L;
    const long double a = r.a_over_e2 * kE2;
    const long double root = std::sqrt(static_cast<long double>(r.group_size));
    r.groups = largest_power_of_two_at_most(static_cast<long double>(D) * root / (3 * a));
    if (r.groups < 2) throw InvalidParameter("planar_lower_G: D sqrt(delta) / 3a < 2 leaves no admissible L");
    r.subdivision = ceil_positive(a * r.groups / root);
  }
  const std::uint64_t L = r.groups;
  const std::uint32_t delta = r.group_size;
  const std::uint64_t m = r.subdivision;
  require_budget(static_cast<long double>(L) * delta + 2.0L * (L - 1) + static_cast<long double>(L) * (m - 1),
                 vertex_budget, "planar_lower_G");

  GraphBuilder b;
  ConstructionMeta meta;
  meta.kind = FamilyKind::planar_lower_g;
  meta.groups = add_groups(b, L, delta);
  meta.connector_groups = add_groups(b, L - 1, 1);
  for (std::uint64_t i = 0; i + 1 < L; ++i) {
    join_complete_bipartite(b, meta.groups[i], meta.connector_groups[i]);
    join_complete_bipartite(b, meta.connector_groups[i], meta.groups[i + 1]);
  }
  std::vector<VertexId> leaf_ids;
  for (const auto& group : meta.groups) leaf_ids.push_back(group.front());
  auto links = append_tree_i(b, L, m, leaf_ids);

  write_resolved(meta, r);
  meta.declared_diameter_bound = 2 * (m + log2_exact(L) + 1);
  meta.declared_max_degree = std::max<std::uint64_t>(2ull * delta, 3);
  meta.declared_degeneracy = 2;
  meta.declared_genus = 0;
  meta.source = meta.groups.front().front();
  meta.target = meta.groups.back().front();
  meta.event_threshold = static_cast<double>(r.a_over_e2 * L / std::sqrt(static_cast<long double>(delta)));
  meta.height_target = 2 * L - 2;
  meta.notes.push_back("H reconstructed as groups of delta vertices alternating with single connector vertices");
  if (r.formula) check_diameter_budget(c, meta, "planar_lower_G");
  const std::size_t n = b.size();
  install_tree(meta, n, std::move(links));
  return {std::move(b).build(), std::move(meta)};
}

FamilyInstance gen_degenerate_lower_g(const LowerBoundConfig& c, std::size_t vertex_budget) {
  if (c.degeneracy < 1) throw InvalidParameter("degenerate_lower_G: d must be >= 1");
  const std::uint32_t d = c.degeneracy;
  Resolved r;
  if (c.groups) {
    // m = ceil(a L / sqrt(d delta))
    if (!c.group_size || *c.group_size < 1) throw InvalidParameter("degenerate_lower_G: delta must be >= 1");
    r = resolve_override(c, 1.0L / std::sqrt(static_cast<long double>(d) * *c.group_size), "degenerate_lower_G");
  } else {
    if (!c.max_degree || !c.diameter) {
      throw InvalidParameter("degenerate_lower_G: needs Delta, D and d, or an override with L");
    }
    const std::uint64_t Delta = *c.max_degree;
    const std::uint64_t D = *c.diameter;
    if (Delta < 2) throw InvalidParameter("degenerate_lower_G: hypothesis violated: Delta must be >= 2");
    if (d >= Delta) throw InvalidParameter("degenerate_lower_G: hypothesis violated: d must be < Delta");
    const long double needed = 1e6L * log_checked(Delta);
    if (static_cast<long double>(D) < needed) {
      throw InvalidParameter("degenerate_lower_G: hypothesis violated: D=" + std::to_string(D) +
                             " < 10^6 ln Delta = " + std::to_string(static_cast<double>(needed)));
    }
    r.formula = true;
    r.group_size = static_cast<std::uint32_t>(Delta / 2);
    if (2ull * d + 1 > Delta) {
      throw InvalidParameter("degenerate_lower_G: hypothesis violated: identified vertices would have degree 2d+1 > Delta");
    }
    r.a_over_e2 = 1e5L;
    const long double a = r.a_over_e2 * kE2;
    r.groups = largest_power_of_two_at_most(static_cast<long double>(D) *
                                            std::sqrt(static_cast<long double>(d) * Delta) / (8 * a));
    if (r.groups < 2) throw InvalidParameter("degenerate_lower_G: D sqrt(d Delta) / 8a < 2 leaves no admissible L");
    r.subdivision = ceil_positive(a * r.groups / std::sqrt(static_cast<long double>(d) * r.group_size));
  }
  r.degeneracy = d;
  const std::uint64_t L = r.groups;
  const std::uint32_t delta = r.group_size;
  const std::uint64_t m = r.subdivision;
  require_budget(static_cast<long double>(L) * delta + static_cast<long double>(L - 1) * (d + 1) +
                     static_cast<long double>(L) * (m - 1),
                 vertex_budget, "degenerate_lower_G");

  GraphBuilder b;
  ConstructionMeta meta;
  meta.kind = FamilyKind::degenerate_lower_g;
  meta.groups = add_groups(b, L, delta);
  meta.connector_groups = add_groups(b, L - 1, d);
  for (std::uint64_t i = 0; i + 1 < L; ++i) {
    join_complete_bipartite(b, meta.groups[i], meta.connector_groups[i]);
    join_complete_bipartite(b, meta.connector_groups[i], meta.groups[i + 1]);
  }
  std::vector<VertexId> leaf_ids;
  for (const auto& group : meta.groups) leaf_ids.push_back(group.front());
  auto links = append_tree_i(b, L, m, leaf_ids);

  write_resolved(meta, r);
  meta.declared_diameter_bound = 2 * (m + log2_exact(L) + 1);
  meta.declared_max_degree = std::max<std::uint64_t>({2ull * delta, 2ull * d + 1, 3});
  meta.declared_degeneracy = d;
  if (d == 1) meta.declared_genus = 0;
  meta.source = meta.groups.front().front();
  meta.target = meta.groups.back().front();
  meta.event_threshold =
      static_cast<double>(r.a_over_e2 * L / std::sqrt(static_cast<long double>(d) * delta));
  meta.height_target = 2 * L - 2;
  if (2ull * d + 1 > 2ull * delta) {
    meta.notes.push_back("identified group vertices have degree 2d+1 > 2 delta");
  }
  if (r.formula) check_diameter_budget(c, meta, "degenerate_lower_G");
  const std::size_t n = b.size();
  install_tree(meta, n, std::move(links));
  return {std::move(b).build(), std::move(meta)};
}

namespace {

class ParamReader {
 public:
  explicit ParamReader(const FamilySpec& spec) : spec_(spec) {}

  std::uint64_t required(const std::string& key) {
    auto value = optional(key);
    if (!value) {
      throw InvalidParameter(std::string(to_string(spec_.kind)) + ": missing parameter '" + key + "'");
    }
    return *value;
  }

  std::optional<std::uint64_t> optional(const std::string& key) {
    used_.insert(key);
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    const double x = it->second;
    if (!(x >= 0) || x != std::floor(x) || x > 9.0e15) {
      throw InvalidParameter(std::string(to_string(spec_.kind)) + ": parameter '" + key +
                             "' must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(x);
  }

  std::optional<double> real(const std::string& key) {
    used_.insert(key);
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    if (!(it->second > 0) || !std::isfinite(it->second)) {
      throw InvalidParameter(std::string(to_string(spec_.kind)) + ": parameter '" + key + "' must be positive");
    }
    return it->second;
  }

  void reject_unused() const {
    for (const auto& [key, value] : spec_.params) {
      if (!used_.count(key)) {
        throw InvalidParameter(std::string(to_string(spec_.kind)) + ": unknown parameter '" + key + "'");
      }
    }
  }

 private:
  const FamilySpec& spec_;
  std::set<std::string> used_;
};

std::uint32_t narrow32(std::uint64_t x, std::string_view what) {
  if (x > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidParameter(std::string(what) + " is too large");
  }
  return static_cast<std::uint32_t>(x);
}

LowerBoundConfig read_lower_bound(ParamReader& p, bool with_degeneracy) {
  LowerBoundConfig c;
  c.max_degree = p.optional("Delta");
  c.diameter = p.optional("D");
  if (with_degeneracy) c.degeneracy = narrow32(p.required("d"), "d");
  c.groups = p.optional("L");
  if (auto delta = p.optional("delta")) c.group_size = narrow32(*delta, "delta");
  c.subdivision = p.optional("m");
  auto a = p.real("a");
  auto a_over_e2 = p.real("a_over_e2");
  if (a && a_over_e2) throw InvalidParameter("give either a or a_over_e2, not both");
  if (a) c.a_over_e2 = *a / static_cast<double>(kE2);
  if (a_over_e2) c.a_over_e2 = *a_over_e2;
  const bool formula_keys = c.max_degree || c.diameter;
  const bool override_keys = c.groups || c.group_size || c.subdivision || a || a_over_e2;
  if (formula_keys && override_keys) {
    throw InvalidParameter("mix of formula (Delta, D) and override (L, delta, a, m) parameters");
  }
  if (!c.groups && override_keys) throw InvalidParameter("override mode requires L");
  return c;
}

}  // namespace

FamilyInstance generate(const FamilySpec& spec, std::size_t vertex_budget) {
  ParamReader p(spec);
  FamilyInstance out = [&]() -> FamilyInstance {
    switch (spec.kind) {
      case FamilyKind::complete: return gen_complete(p.required("n"));
      case FamilyKind::grid:
        return gen_grid(narrow32(p.required("d"), "d"), narrow32(p.required("k"), "k"), vertex_budget);
      case FamilyKind::ladder_h:
        return gen_ladder_h(p.required("L"), narrow32(p.required("delta"), "delta"), vertex_budget);
      case FamilyKind::subdivided_tree_i: return gen_subdivided_tree_i(p.required("L"), p.required("m"), vertex_budget);
      case FamilyKind::glued_g: return gen_glued_g(read_lower_bound(p, false), vertex_budget);
      case FamilyKind::planar_lower_g: return gen_planar_lower_g(read_lower_bound(p, false), vertex_budget);
      case FamilyKind::degenerate_lower_g: return gen_degenerate_lower_g(read_lower_bound(p, true), vertex_budget);
      case FamilyKind::path: return gen_path(p.required("n"));
      case FamilyKind::cycle: return gen_cycle(p.required("n"));
      case FamilyKind::star: return gen_star(p.required("leaves"));
      case FamilyKind::house: return gen_house();
    }
    throw InvalidParameter("unhandled family");
  }();
  p.reject_unused();
  return out;
}

std::vector<std::string> check_construction(const FamilyInstance& instance, std::size_t diameter_limit) {
  const auto& g = instance.graph;
  const auto& meta = instance.meta;
  std::vector<std::string> problems;
  const std::size_t n = g.num_vertices();

  const std::size_t measured_degree = max_degree(g);
  if (measured_degree > meta.declared_max_degree) {
    problems.push_back("max degree " + std::to_string(measured_degree) + " exceeds declared " +
                       std::to_string(meta.declared_max_degree));
  }
  if (n <= diameter_limit) {
    const std::uint32_t measured = diameter(g);
    if (measured > meta.declared_diameter_bound) {
      problems.push_back("diameter " + std::to_string(measured) + " exceeds declared bound " +
                         std::to_string(meta.declared_diameter_bound));
    }
  }
  if (meta.source >= n) problems.push_back("source vertex out of range");
  if (meta.target && *meta.target >= n) problems.push_back("target vertex out of range");

  if (meta.has_tree()) {
    if (meta.tree_parent.size() != n) problems.push_back("tree_parent is not indexed by graph vertex");
    std::size_t roots = 0;
    for (VertexId v : meta.tree_order) {
      if (v >= n) {
        problems.push_back("tree vertex out of range");
        continue;
      }
      VertexId p = meta.tree_parent[v];
      if (p == kNoVertex) {
        ++roots;
      } else if (!g.has_edge(v, p)) {
        problems.push_back("tree link " + std::to_string(v) + "-" + std::to_string(p) + " is not a graph edge");
      }
    }
    if (roots != 1) problems.push_back("subdivided tree must have exactly one root");
    if (!meta.groups.empty()) {
      if (meta.tree_leaves.size() != meta.groups.size()) {
        problems.push_back("number of tree leaves differs from number of groups");
      } else {
        for (std::size_t i = 0; i < meta.groups.size(); ++i) {
          if (meta.groups[i].empty() || meta.tree_leaves[i] != meta.groups[i].front()) {
            problems.push_back("leaf " + std::to_string(i) + " is not identified with the first vertex of its group");
          }
        }
      }
    }
  }
  return problems;
}

}  // namespace fpptree
