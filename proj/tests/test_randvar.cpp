#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "fpptree/error.hpp"
#include "fpptree/randvar.hpp"

using namespace fpptree;

namespace {

Stream stream_for(std::uint64_t id) { return Stream(SeedPath{99, {id}}); }

}  // namespace

TEST(SeedPath, ChildAndString) {
  SeedPath root{7, {}};
  EXPECT_EQ(root.child(3).child(1).to_string(), "7/3/1");
  EXPECT_EQ(root.to_string(), "7");
}

TEST(Stream, Reproducible) {
  Stream a(SeedPath{1, {2, 3}});
  Stream b(SeedPath{1, {2, 3}});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Stream, DistinctPathsDiffer) {
  const std::vector<SeedPath> paths = {{1, {}}, {1, {0}}, {1, {0, 0}}, {1, {1}}, {2, {0}}, {1ull << 32, {0}}};
  std::vector<std::uint64_t> first;
  for (const auto& p : paths) first.push_back(Stream(p).next_u64());
  std::sort(first.begin(), first.end());
  EXPECT_EQ(std::adjacent_find(first.begin(), first.end()), first.end());
}

TEST(Stream, UniformOpenClosedRange) {
  auto s = stream_for(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform_open_closed();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(Stream, UniformIndexIsUnbiased) {
  auto s = stream_for(2);
  std::vector<int> counts(7, 0);
  const int n = 700000;
  for (int i = 0; i < n; ++i) ++counts[s.uniform_index(7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
  EXPECT_EQ(s.uniform_index(1), 0u);
  EXPECT_THROW(s.uniform_index(0), InvalidParameter);
}

TEST(Exponential, Mean) {
  auto s = stream_for(3);
  double sum = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += sample_exponential(s, 1.0);
  EXPECT_NEAR(sum / n, 1.0, 0.01);
  EXPECT_THROW(sample_exponential(s, 0.0), InvalidParameter);
}

TEST(Exponential, MinimumOfFourIsExponentialFour) {
  auto s = stream_for(4);
  std::vector<double> mins;
  for (int i = 0; i < 20000; ++i) {
    double m = 1e300;
    for (int j = 0; j < 4; ++j) m = std::min(m, sample_exponential(s, 1.0));
    mins.push_back(m);
  }
  EXPECT_LT(ks_statistic_exponential(mins, 4.0), ks_critical_value(mins.size(), 0.001));
}

TEST(Exponential, Memoryless) {
  auto s = stream_for(5);
  int above_half = 0;
  int above_three_halves = 0;
  int above_one = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_exponential(s, 1.0);
    above_half += x > 0.5;
    above_three_halves += x > 1.5;
    above_one += x > 1.0;
  }
  const double conditional = static_cast<double>(above_three_halves) / above_half;
  EXPECT_NEAR(conditional, static_cast<double>(above_one) / n, 0.005);
}

TEST(Erlang, ShapeOneIsExponential) {
  auto a = stream_for(6);
  auto b = stream_for(6);
  for (int i = 0; i < 100; ++i) EXPECT_DOUBLE_EQ(sample_erlang(a, 1, 2.0), sample_exponential(b, 2.0));
}

TEST(Erlang, Mean) {
  auto s = stream_for(7);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += sample_erlang(s, 10, 1.0);
  EXPECT_NEAR(sum / n, 10.0, 0.05);
}

TEST(Y, OneByOneIsErlangTwo) {
  auto s = stream_for(8);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += sample_y(s, 1, 1);
  EXPECT_NEAR(sum / n, 2.0, 0.02);
}

TEST(Y, FourByOneMatchesMinimumOfErlangs) {
  auto s = stream_for(9);
  auto t = stream_for(10);
  std::vector<double> y;
  std::vector<double> direct;
  for (int i = 0; i < 20000; ++i) {
    y.push_back(sample_y(s, 4, 1));
    double m = 1e300;
    for (int j = 0; j < 4; ++j) m = std::min(m, sample_erlang(t, 2, 1.0));
    direct.push_back(m);
  }
  EXPECT_LT(ks_statistic(y, direct), ks_critical_value(y.size(), direct.size(), 0.001));
}

TEST(Y, MeanBelowBudget) {
  auto s = stream_for(11);
  const auto rep = check_yab_mean(s, 16, 16, 20000);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_DOUBLE_EQ(rep.rows[0].bound, 64.0 / 16 + 1024.0 / 16);
}

TEST(TailChecks, HeadBound) {
  auto s = stream_for(12);
  const auto rep = check_head_bound(s, 10, 8, 1'000'000);
  EXPECT_NEAR(rep.rows[0].bound, std::pow(std::numbers::e / 8, 10), 1e-12);
  EXPECT_NEAR(rep.rows[0].bound, 2.1e-5, 0.1e-5);
  EXPECT_TRUE(rep.all_pass());
  auto t = stream_for(13);
  EXPECT_DOUBLE_EQ(check_head_bound(t, 1, std::numbers::e, 10).rows[0].bound, 1.0);
  EXPECT_TRUE(check_head_bound(t, 3, 1.0001, 1000).all_pass());
}

TEST(TailChecks, TailBound) {
  auto s = stream_for(14);
  const auto rep = check_tail_bound(s, 20, 3, 200000);
  EXPECT_DOUBLE_EQ(rep.rows[0].bound, std::exp(20 - 30.0));
  EXPECT_TRUE(rep.all_pass());
}

TEST(TailChecks, YabTail) {
  auto s = stream_for(15);
  const std::vector<double> grid = {0, 8};
  const auto rep = check_yab_tail(s, 4, 1, grid, 100000);
  EXPECT_GE(rep.rows[0].bound, 1.0);
  EXPECT_DOUBLE_EQ(rep.rows[1].bound, std::exp(-0.5) + std::exp(-4.0 * 64 / 1024));
  EXPECT_TRUE(rep.all_pass());
  auto t = stream_for(16);
  const std::vector<double> four = {4};
  EXPECT_EQ(check_yab_tail(t, 64, 64, four, 100000).rows[0].empirical, 0.0);
}

TEST(TailChecks, SumYab) {
  auto s = stream_for(17);
  const auto rep = check_sum_yab(s, 4, 4, 9, 20000);
  EXPECT_DOUBLE_EQ(rep.rows[0].bound, std::exp(-1.0));
  EXPECT_TRUE(rep.all_pass());
  auto t = stream_for(18);
  EXPECT_EQ(check_sum_yab(t, 16, 1, 100, 2000).rows[0].empirical, 0.0);
}

TEST(TailChecks, PassRuleUsesThreeStandardErrors) {
  EXPECT_TRUE(frequency_within_bound(0.0, 0.0, 10));
  EXPECT_FALSE(frequency_within_bound(0.5, 0.0, 10000));
  // p = 0.11, N = 10000: stderr 0.00313, slack 0.0094
  EXPECT_TRUE(frequency_within_bound(0.11, 0.101, 10000));
  EXPECT_FALSE(frequency_within_bound(0.11, 0.100, 10000));
}

TEST(TailChecks, CsvOutput) {
  auto s = stream_for(19);
  std::vector<TailCheckReport> reps = {check_head_bound(s, 5, 4, 100)};
  std::ostringstream out;
  write_tail_reports_csv(out, reps);
  EXPECT_EQ(out.str().substr(0, 43), "check,params,t,empirical,bound,trials,pass\n");
  EXPECT_NE(out.str().find("head_bound,k=5;d=4,"), std::string::npos);
}

TEST(KolmogorovSmirnov, Statistics) {
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2}, {3, 4}), 1.0);
  EXPECT_NEAR(ks_critical_value(100, 100, 0.05), 1.358 * std::sqrt(2.0 / 100), 1e-3);
}
