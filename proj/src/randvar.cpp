#include "fpptree/randvar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fpptree/error.hpp"

namespace fpptree {

SeedPath SeedPath::child(std::uint64_t index) const {
  SeedPath out = *this;
  out.path.push_back(index);
  return out;
}

std::string SeedPath::to_string() const {
  std::string out = std::to_string(master_seed);
  for (auto p : path) out += "/" + std::to_string(p);
  return out;
}

Stream::Stream(const SeedPath& seed) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * seed.path.size() + 3);
  auto push = [&](std::uint64_t x) {
    words.push_back(static_cast<std::uint32_t>(x));
    words.push_back(static_cast<std::uint32_t>(x >> 32));
  };
  push(seed.master_seed);
  // The length word keeps (s, [0]) and (s, []) apart.
  words.push_back(static_cast<std::uint32_t>(seed.path.size()));
  for (auto p : seed.path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

std::uint64_t Stream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw InvalidParameter("uniform_index needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double sample_exponential(Stream& stream, double rate) {
  if (!(rate > 0)) throw InvalidParameter("exponential rate must be positive");
  return -std::log(stream.uniform_open_closed()) / rate;
}

double sample_erlang(Stream& stream, std::uint32_t k, double rate) {
  if (k < 1) throw InvalidParameter("Erlang shape must be >= 1");
  if (!(rate > 0)) throw InvalidParameter("Erlang rate must be positive");
  double sum = 0.0;
  for (std::uint32_t i = 0; i < k; ++i) sum += -std::log(stream.uniform_open_closed());
  return sum / rate;
}

double sample_y(Stream& stream, std::uint32_t a, std::uint32_t b) {
  if (a < 1 || b < 1) throw InvalidParameter("Y_{a,b} needs a, b >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < a; ++i) {
    const double first = -std::log(stream.uniform_open_closed());
    double second = std::numeric_limits<double>::infinity();
    for (std::uint32_t j = 0; j < b; ++j) second = std::min(second, -std::log(stream.uniform_open_closed()));
    best = std::min(best, first + second);
  }
  return best;
}

bool TailCheckReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const TailRow& r) { return r.pass; });
}

double binomial_stderr(double frequency, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
}

bool frequency_within_bound(double empirical, double bound, std::uint64_t trials) {
  return empirical <= bound + 3.0 * binomial_stderr(empirical, trials);
}

namespace {

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw InvalidParameter("a tail check needs at least one trial");
}

TailRow make_row(double t, std::uint64_t hits, double bound, std::uint64_t trials) {
  TailRow row;
  row.t = t;
  row.trials = trials;
  row.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  row.bound = bound;
  row.pass = frequency_within_bound(row.empirical, bound, trials);
  return row;
}

double yab_tail_bound(double a, double b, double t) {
  return std::exp(-a * t / 64.0) + std::exp(-a * b * t * t / 1024.0);
}

double yab_mean_bound(double a, double b) { return 64.0 / a + 1024.0 / std::sqrt(a * b); }

}  // namespace

TailCheckReport check_head_bound(Stream& stream, std::uint32_t k, double d, std::uint64_t trials) {
  if (k < 1 || !(d > 1)) throw InvalidParameter("head bound needs k >= 1 and d > 1");
  require_trials(trials);
  const double threshold = static_cast<double>(k) / d;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) hits += sample_erlang(stream, k, 1.0) <= threshold;
  TailCheckReport report;
  report.check = "head_bound";
  report.params = {{"k", k}, {"d", d}};
  report.rows.push_back(make_row(1.0 / d, hits, std::pow(std::numbers::e / d, static_cast<double>(k)), trials));
  return report;
}

TailCheckReport check_tail_bound(Stream& stream, std::uint32_t k, double t, std::uint64_t trials) {
  if (k < 1 || !(t > 1)) throw InvalidParameter("tail bound needs k >= 1 and t > 1");
  require_trials(trials);
  const double threshold = static_cast<double>(k) * t;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) hits += sample_erlang(stream, k, 1.0) >= threshold;
  TailCheckReport report;
  report.check = "tail_bound";
  report.params = {{"k", k}};
  const double kk = static_cast<double>(k);
  report.rows.push_back(make_row(t, hits, std::exp(kk - kk * t / 2.0), trials));
  return report;
}

TailCheckReport check_yab_tail(Stream& stream, std::uint32_t a, std::uint32_t b, std::span<const double> t_grid,
                               std::uint64_t trials) {
  require_trials(trials);
  std::vector<std::uint64_t> hits(t_grid.size(), 0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double y = sample_y(stream, a, b);
    for (std::size_t j = 0; j < t_grid.size(); ++j) hits[j] += y > t_grid[j];
  }
  TailCheckReport report;
  report.check = "yab_tail";
  report.params = {{"a", a}, {"b", b}};
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    report.rows.push_back(make_row(t_grid[j], hits[j], yab_tail_bound(a, b, t_grid[j]), trials));
  }
  return report;
}

TailCheckReport check_sum_yab(Stream& stream, std::uint32_t a, std::uint32_t b, std::uint32_t m,
                              std::uint64_t trials) {
  if (m < 1) throw InvalidParameter("sum check needs m >= 1");
  require_trials(trials);
  const double threshold = 3.0 * m * yab_mean_bound(a, b);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    double sum = 0.0;
    for (std::uint32_t j = 0; j < m; ++j) sum += sample_y(stream, a, b);
    hits += sum >= threshold;
  }
  TailCheckReport report;
  report.check = "sum_yab";
  report.params = {{"a", a}, {"b", b}, {"m", m}};
  report.rows.push_back(make_row(threshold, hits, std::exp(-static_cast<double>(m) / 9.0), trials));
  return report;
}

TailCheckReport check_yab_mean(Stream& stream, std::uint32_t a, std::uint32_t b, std::uint64_t trials) {
  if (trials < 2) throw InvalidParameter("mean check needs at least two trials");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double y = sample_y(stream, a, b);
    sum += y;
    sum_sq += y * y;
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  TailCheckReport report;
  report.check = "yab_mean";
  report.params = {{"a", a}, {"b", b}};
  TailRow row;
  row.empirical = mean;
  row.bound = yab_mean_bound(a, b);
  row.trials = trials;
  row.pass = mean <= row.bound + 3.0 * std::sqrt(variance / n);
  report.rows.push_back(row);
  return report;
}

void write_tail_reports_csv(std::ostream& out, std::span<const TailCheckReport> reports) {
  out << "check,params,t,empirical,bound,trials,pass\n";
  const auto old_precision = out.precision(12);
  for (const auto& report : reports) {
    std::string params;
    for (const auto& [key, value] : report.params) {
      if (!params.empty()) params += ';';
      std::ostringstream v;
      v << value;
      params += key + "=" + v.str();
    }
    for (const auto& row : report.rows) {
      out << report.check << ',' << params << ',' << row.t << ',' << row.empirical << ',' << row.bound << ','
          << row.trials << ',' << (row.pass ? "pass" : "fail") << '\n';
    }
  }
  out.precision(old_precision);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidParameter("KS statistic needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double ks_statistic_exponential(std::vector<double> sample, double rate) {
  if (sample.empty()) throw InvalidParameter("KS statistic needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double best = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = 1.0 - std::exp(-rate * sample[i]);
    best = std::max({best, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return best;
}

double ks_critical_value(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c * std::sqrt((a + b) / (a * b));
}

double ks_critical_value(std::size_t n, double alpha) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

}  // namespace fpptree
