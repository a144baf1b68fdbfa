#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fpptree {

/// Names a random stream: a master seed plus a path such as
/// (experiment, trial, stream). Equal paths give identical streams; distinct
/// paths give streams seeded from distinct seed sequences.
struct SeedPath {
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> path;

  SeedPath child(std::uint64_t index) const;
  std::string to_string() const;  // "master/p0/p1/..."

  friend bool operator==(const SeedPath&, const SeedPath&) = default;
};

/// Value-like random stream. The engine is mt19937_64 seeded through
/// std::seed_seq from the 32-bit halves of the seed path, and all variates
/// are derived from raw 64-bit outputs by fixed formulas, so a stream is
/// bit-reproducible on every conforming platform.
class Stream {
 public:
  explicit Stream(const SeedPath& seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1] with 53-bit resolution; never returns 0.
  double uniform_open_closed() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// -ln(U) / rate with U uniform on (0, 1].
double sample_exponential(Stream& stream, double rate);
// Sum of k independent exponential(rate) variates.
double sample_erlang(Stream& stream, std::uint32_t k, double rate);
// Minimum root-to-leaf weight in a two-level tree with a children at the
// root and b children below each, unit exponential edge weights.
double sample_y(Stream& stream, std::uint32_t a, std::uint32_t b);

struct TailRow {
  double t = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  std::uint64_t trials = 0;
  bool pass = false;
};

struct TailCheckReport {
  std::string check;
  std::vector<std::pair<std::string, double>> params;
  std::vector<TailRow> rows;

  bool all_pass() const;
};

// Pass rule shared by every frequency check:
// empirical <= bound + 3 sqrt(p(1-p)/trials) with p the empirical frequency.
bool frequency_within_bound(double empirical, double bound, std::uint64_t trials);
double binomial_stderr(double frequency, std::uint64_t trials);

// Pr{Erlang(k,1) <= k/d} against (e/d)^k.
TailCheckReport check_head_bound(Stream& stream, std::uint32_t k, double d, std::uint64_t trials);
// Pr{Erlang(k,1) >= k t} against exp(k - k t / 2).
TailCheckReport check_tail_bound(Stream& stream, std::uint32_t k, double t, std::uint64_t trials);
// Pr{Y_{a,b} > t} against exp(-a t / 64) + exp(-a b t^2 / 1024), one row per t.
TailCheckReport check_yab_tail(Stream& stream, std::uint32_t a, std::uint32_t b, std::span<const double> t_grid,
                               std::uint64_t trials);
// Pr{sum of m Y_{a,b} >= 3 m (64/a + 1024/sqrt(ab))} against exp(-m/9).
TailCheckReport check_sum_yab(Stream& stream, std::uint32_t a, std::uint32_t b, std::uint32_t m,
                              std::uint64_t trials);
// Sample mean of Y_{a,b} against 64/a + 1024/sqrt(ab); passes when
// mean <= bound + 3 standard errors.
TailCheckReport check_yab_mean(Stream& stream, std::uint32_t a, std::uint32_t b, std::uint64_t trials);

// CSV rows: check,params,t,empirical,bound,trials,pass
void write_tail_reports_csv(std::ostream& out, std::span<const TailCheckReport> reports);

// Kolmogorov-Smirnov statistics.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_statistic_exponential(std::vector<double> sample, double rate);
// Asymptotic critical value c(alpha) sqrt((n1 + n2) / (n1 n2)).
double ks_critical_value(std::size_t n1, std::size_t n2, double alpha);
// Asymptotic one-sample critical value c(alpha) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

}  // namespace fpptree
