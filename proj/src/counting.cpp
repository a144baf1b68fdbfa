#include "fpptree/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>


#include "fpptree/analytics.hpp"
#include "fpptree/error.hpp"

namespace fpptree {

namespace {


struct PathSearch {
  const Graph& g;
  std::uint32_t L;
  std::uint64_t budget;
  std::uint64_t expansions = 0;
  std::uint64_t count = 0;
  std::vector<bool> visited;

  void run(VertexId v, std::uint32_t depth) {
    if (depth == L) {
      ++count;
      return;
    }
    if (++expansions > budget) {
      throw BudgetExceeded("simple path search exceeded " + std::to_string(budget) + " expansions after counting " +
                           std::to_string(count) + " paths");
    }
    visited[v] = true;
    for (VertexId w : g.neighbors(v)) {
      if (!visited[w]) run(w, depth + 1);
    }
    visited[v] = false;
  }
};

BigInt pow_big(std::uint64_t base, std::uint64_t exponent) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent)); }

// ceil(sqrt(num / den)) in integers; exact iff the root is rational.
BoundValue ceil_sqrt_ratio(const BigInt& num, const BigInt& den) {
  BigInt x = boost::multiprecision::sqrt(BigInt(num / den));
  while (x * x * den < num) ++x;
  return {x, x * x * den == num};
}

// prefix * q^(L/2), rounding up when L is odd and q is not a square.
BoundValue times_half_power(const BigInt& prefix, std::uint64_t q, std::uint32_t L) {
  BigInt base = prefix * pow_big(q, L / 2);
  if (L % 2 == 0) return {base, true};
  return ceil_sqrt_ratio(base * base * q, 1);
}

}  // namespace

BigInt count_simple_paths_from(const Graph& g, VertexId s, std::uint32_t L, std::uint64_t budget) {
  if (s >= g.num_vertices()) throw InvalidParameter("source vertex out of range");
  PathSearch search{g, L, budget, 0, 0, std::vector<bool>(g.num_vertices(), false)};
  search.run(s, 0);
  return BigInt(search.count);
}

BigInt count_walks(const Graph& g, std::uint32_t L) {
  const std::size_t n = g.num_vertices();
  std::vector<BigInt> w(n, BigInt(1));
  for (std::uint32_t step = 0; step < L; ++step) {
    std::vector<BigInt> next(n);
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId u : g.neighbors(v)) next[v] += w[u];
    }
    w = std::move(next);
  }
  BigInt total = 0;
  for (const auto& x : w) total += x;
  return total;
}

BigInt count_walks_from(const Graph& g, VertexId s, std::uint32_t L) {
  if (s >= g.num_vertices()) throw InvalidParameter("source vertex out of range");
  // Walks from s of length L equal walks into s of length L by symmetry of A.
  const std::size_t n = g.num_vertices();
  std::vector<BigInt> w(n, BigInt(1));
  for (std::uint32_t step = 0; step < L; ++step) {
    std::vector<BigInt> next(n);
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId u : g.neighbors(v)) next[v] += w[u];
    }
    w = std::move(next);
  }
  return w[s];
}

BoundValue bound_walks_degenerate(std::uint64_t n, std::uint64_t d, std::uint64_t max_degree, std::uint32_t L) {
  if (d > max_degree) throw InvalidParameter("degeneracy cannot exceed the maximum degree");
  const BigInt prefix = BigInt(2) * n * pow_big(2, L);
  return times_half_power(prefix, d * max_degree, L);
}

BoundValue bound_paths_genus(std::uint64_t n, std::uint64_t genus, std::uint64_t max_degree, std::uint32_t L) {
  if (max_degree < 6) throw InvalidParameter("the genus path bound needs maximum degree >= 6");
  const BigInt prefix = BigInt(2) * n * pow_big(2, L);
  // 6^(L/2 - 3g) Delta^(L/2 + 3g) = (6 Delta)^(L/2) (Delta / 6)^(3g)
  if (L % 2 == 0 && L / 2 >= 3 * genus) {
    return {prefix * pow_big(6, L / 2 - 3 * genus) * pow_big(max_degree, L / 2 + 3 * genus), true};
  }
  // square of the value: prefix^2 6^(L - 6g) Delta^(L + 6g)
  const std::int64_t six = static_cast<std::int64_t>(L) - 6 * static_cast<std::int64_t>(genus);
  const BigInt num = prefix * prefix * pow_big(max_degree, L + 6 * genus) * pow_big(6, six > 0 ? six : 0);
  return ceil_sqrt_ratio(num, pow_big(6, six < 0 ? -six : 0));
}

MetaPlan meta_theorem_plan(double p, double a, double c, double K) {
  if (!(p >= 0 && p < 1)) throw InvalidParameter("meta plan needs 0 <= p < 1");
  if (!(a >= 1)) throw InvalidParameter("meta plan needs a >= 1");
  if (!(c > 0) || !(K > 0)) throw InvalidParameter("meta plan needs c > 0 and K > 0");
  MetaPlan plan;
  plan.L = static_cast<std::uint64_t>(std::ceil(c * std::numbers::e * a * K));
  plan.failure_probability = p + std::pow(c, -static_cast<double>(plan.L));
  return plan;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::trivial:
      return "trivial";
    case BoundKind::degenerate:
      return "degenerate";
    case BoundKind::genus:
      return "genus";
  }
  return "unknown";
}

std::vector<CountReport> count_reports(const std::string& graph_id, const Graph& g, VertexId s, std::uint32_t max_L,
                                       std::optional<std::uint32_t> genus, std::uint64_t budget) {
  const std::uint64_t delta = max_degree(g);
  const std::uint64_t d = degeneracy_ordering(g).degeneracy;
  const std::uint64_t n = g.num_vertices();
  std::vector<CountReport> out;
  for (std::uint32_t L = 0; L <= max_L; ++L) {
    CountReport walks{graph_id, std::nullopt, L, count_walks(g, L), BoundKind::degenerate,
                      bound_walks_degenerate(n, d, delta, L)};
    walks.pass = walks.exact_count <= walks.bound.value;
    out.push_back(std::move(walks));

    const BigInt from_s = count_simple_paths_from(g, s, L, budget);
    CountReport trivial{graph_id, s, L, from_s, BoundKind::trivial, BoundValue{pow_big(delta, L), true}};
    trivial.pass = trivial.exact_count <= trivial.bound.value;
    out.push_back(std::move(trivial));

    if (genus) {
      BigInt total = 0;
      for (VertexId v = 0; v < n; ++v) total += count_simple_paths_from(g, v, L, budget);
      // The lemma is stated for Delta >= 6; a smaller degree is covered by the Delta = 6 case.
      CountReport planar{graph_id, std::nullopt, L, total, BoundKind::genus,
                         bound_paths_genus(n, *genus, std::max<std::uint64_t>(delta, 6), L)};
      planar.pass = planar.exact_count <= planar.bound.value;
      out.push_back(std::move(planar));
    }
  }
  return out;
}

const BoundEntry* BoundMatrix::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

BoundMatrix bound_matrix(const BoundInputs& in) {
  if (in.n == 0) throw InvalidParameter("bound matrix needs n >= 1");
  const double n = static_cast<double>(in.n);
  const double D = static_cast<double>(in.diameter);
  const double delta = static_cast<double>(in.max_degree);
  const double d = static_cast<double>(in.degeneracy);
  const double ln_n = std::log(n);
  const double K = 4.0 * ln_n + 2.0 * D;
  const double e = std::numbers::e;
  const double big_o = 2.0 / n;

  BoundMatrix m;
  m.entries.push_back({"cover_time", "cover time 4 ln n + 2D", "cover_time", K, false, big_o, true,
                       "tau <= 4 ln n + 2D; failure 1/n, checked as 2/n"});

  BoundEntry t33{"height_max_degree", "height 2e Delta (4 ln n + 2D)", "height", 2.0 * e * delta * K, false, big_o, in.max_degree > 1, ""};
  if (!t33.applicable) t33.note = "needs maximum degree > 1";
  m.entries.push_back(t33);

  m.entries.push_back({"height_degeneracy", "height 8e sqrt(d Delta)(2D + 4 ln n)", "height", 8.0 * e * std::sqrt(d * delta) * K, false, big_o,
                       in.degeneracy >= 1, in.degeneracy >= 1 ? "" : "needs degeneracy >= 1"});

  BoundEntry t52{"height_genus", "height 107 sqrt(Delta)(2D + 4 ln n)", "height", 107.0 * std::sqrt(delta) * K, false, big_o, false, ""};
  if (!in.genus) {
    t52.note = "genus not declared";
  } else if (static_cast<double>(*in.genus) * std::log(std::max(delta, 1.0)) > 36.0 * std::sqrt(delta) * (D + ln_n)) {
    t52.note = "genus hypothesis g ln Delta <= 36 sqrt(Delta)(D + ln n) fails";
  } else {
    t52.applicable = true;
  }
  m.entries.push_back(t52);

  BoundEntry t61{"height_inverse_perimeter", "height 4e Psi Delta", "height", 0.0, true, 0.0, false, ""};
  if (in.inverse_perimeter) {
    // Pr{h >= L} <= (2 e Psi Delta / L)^L, at most 2^-L once L >= 4 e Psi Delta.
    const double L = std::ceil(4.0 * e * *in.inverse_perimeter * delta);
    t61.value = L;
    t61.allowed_failure = std::pow(0.5, L);
    t61.applicable = L >= 1;
    t61.note = "threshold ceil(4 e Psi Delta); failure 2^-L";
  } else {
    t61.note = "Psi not computed";
  }
  m.entries.push_back(t61);
  return m;
}

}  // namespace fpptree
