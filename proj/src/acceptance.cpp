#include "fpptree/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "fpptree/analytics.hpp"
#include "fpptree/counting.hpp"
#include "fpptree/families.hpp"
#include "fpptree/growth.hpp"
#include "fpptree/harness.hpp"
#include "fpptree/randvar.hpp"
#include "fpptree/tree_decomposition.hpp"

namespace fpptree {

namespace {

constexpr std::uint64_t kSeed = 20'240'613;

std::string fixed(double x, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

std::uint64_t scaled(std::uint64_t trials, const AcceptanceOptions& o) {
  return std::max<std::uint64_t>(1, trials / std::max(1u, o.scale_down));
}

ExperimentSpec make_spec(const std::string& name, FamilyKind kind, std::map<std::string, double> params,
                         std::uint64_t trials, std::uint64_t experiment_id) {
  ExperimentSpec spec;
  spec.name = name;
  spec.family = {kind, std::move(params)};
  spec.process = ProcessChoice::fpp;
  spec.trials = trials;
  spec.master_seed = kSeed;
  spec.experiment_id = experiment_id;
  spec.metrics = {"height", "cover_time"};
  return spec;
}

CriterionResult law_equivalence(const AcceptanceOptions& o) {
  CriterionResult r{1, "process-law equivalence", false, "", 0.0};
  struct Case {
    const char* name;
    FamilyInstance inst;
  };
  std::vector<Case> cases;
  cases.push_back({"triangle", gen_cycle(3)});
  cases.push_back({"C4", gen_cycle(4)});
  cases.push_back({"K4", gen_complete(4)});
  cases.push_back({"house", gen_house()});
  const std::uint64_t trials = scaled(200'000, o);
  r.pass = true;
  std::uint64_t idx = 0;
  for (auto& c : cases) {
    for (Process p : {Process::fpp, Process::discrete}) {
      Stream stream(SeedPath{kSeed, {1, idx++}});
      const auto rep = law_equivalence_test(c.inst.graph, 0, p, trials, stream);
      const bool ok = rep.total_variation <= 0.02 && rep.outside_support == 0;
      r.pass = r.pass && ok;
      r.detail += std::string(c.name) + "/" + std::string(to_string(p)) + " TV=" + fixed(rep.total_variation) +
                  " p=" + fixed(rep.p_value, 3) + "; ";
    }
  }
  return r;
}

CriterionResult complete_height(const AcceptanceOptions& o) {
  CriterionResult r{2, "complete-graph height ratio", false, "", 0.0};
  std::vector<double> ratios;
  std::uint64_t id = 0;
  for (std::size_t n : {256u, 1024u, 4096u}) {
    auto spec = make_spec("K" + std::to_string(n), FamilyKind::complete, {{"n", static_cast<double>(n)}},
                          scaled(200, o), 200 + id++);
    spec.process = ProcessChoice::discrete;
    spec.metrics = {"height"};
    const auto res = run_experiment(spec);
    const double ratio = res.summary.metric("height")->mean / std::log(static_cast<double>(n));
    ratios.push_back(ratio);
    r.detail += "n=" + std::to_string(n) + " mean h/ln n=" + fixed(ratio, 3) + "; ";
  }
  r.pass = true;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    r.pass = r.pass && ratios[i] >= 1.5 && ratios[i] <= 3.5;
    for (std::size_t j = i + 1; j < ratios.size(); ++j) r.pass = r.pass && std::abs(ratios[i] - ratios[j]) <= 0.6;
  }
  return r;
}

CriterionResult cover_time_bound(const AcceptanceOptions& o) {
  CriterionResult r{3, "cover-time bound 4 ln n + 2D", false, "", 0.0};
  struct Case {
    const char* name;
    FamilyKind kind;
    std::map<std::string, double> params;
  };
  const std::vector<Case> cases = {
      {"K32", FamilyKind::complete, {{"n", 32}}},
      {"K256", FamilyKind::complete, {{"n", 256}}},
      {"grid(2,7)", FamilyKind::grid, {{"d", 2}, {"k", 7}}},
      {"grid(3,3)", FamilyKind::grid, {{"d", 3}, {"k", 3}}},
      {"Q10", FamilyKind::grid, {{"d", 10}, {"k", 1}}},
      {"ladder_H(16,4)", FamilyKind::ladder_h, {{"L", 16}, {"delta", 4}}},
  };
  r.pass = true;
  std::uint64_t id = 300;
  for (const auto& c : cases) {
    auto spec = make_spec(c.name, c.kind, c.params, scaled(2000, o), id++);
    spec.metrics = {"height", "cover_time", "bound_matrix"};
    const auto res = run_experiment(spec);
    const auto it = std::find_if(res.summary.verdicts.begin(), res.summary.verdicts.end(),
                                 [](const Verdict& v) { return v.check_id == "cover_time"; });
    const bool ok = it != res.summary.verdicts.end() && it->pass;
    r.pass = r.pass && ok;
    r.detail += std::string(c.name) + " exceed=" + (it == res.summary.verdicts.end() ? "n/a" : fixed(it->empirical)) +
                (ok ? "" : " FAIL") + "; ";
  }
  return r;
}

CriterionResult hypercube_cover(const AcceptanceOptions& o) {
  CriterionResult r{4, "hypercube cover time", false, "", 0.0};
  std::vector<double> means;
  bool p99_ok = true;
  std::uint64_t id = 400;
  for (int d : {8, 10, 12}) {
    const auto res = run_experiment(make_spec("Q" + std::to_string(d), FamilyKind::grid,
                                              {{"d", d}, {"k", 1}}, scaled(2000, o), id++));
    const auto* m = res.summary.metric("cover_time");
    p99_ok = p99_ok && m->p99 <= 14.05;
    means.push_back(m->mean);
    r.detail += "d=" + std::to_string(d) + " mean=" + fixed(m->mean, 3) + " p99=" + fixed(m->p99, 3) + "; ";
  }
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  const double spread = (*hi - *lo) / *lo;
  r.detail += "spread=" + fixed(spread, 3);
  r.pass = p99_ok && spread <= 0.25;
  return r;
}

CriterionResult grid_cover(const AcceptanceOptions& o) {
  CriterionResult r{5, "grid cover time O(k)", false, "", 0.0};
  std::vector<double> per_k;
  std::uint64_t id = 500;
  for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 8}, {3, 5}, {4, 3}, {6, 2}}) {
    const auto res = run_experiment(make_spec("grid", FamilyKind::grid, {{"d", d}, {"k", k}}, scaled(1000, o), id++));
    const double v = res.summary.metric("cover_time")->p99 / k;
    per_k.push_back(v);
    r.detail += "(" + std::to_string(d) + "," + std::to_string(k) + ") p99/k=" + fixed(v, 3) + "; ";
  }
  const auto [lo, hi] = std::minmax_element(per_k.begin(), per_k.end());
  r.detail += "max/min=" + fixed(*hi / *lo, 3);
  r.pass = *hi <= 3.0 * *lo;
  return r;
}

CriterionResult walk_path_bounds(const AcceptanceOptions&) {
  CriterionResult r{6, "walk and path count bounds", false, "", 0.0};
  std::vector<std::pair<std::string, FamilyInstance>> corpus;
  corpus.emplace_back("P8", gen_path(8));
  corpus.emplace_back("C8", gen_cycle(8));
  corpus.emplace_back("star7", gen_star(7));
  corpus.emplace_back("house", gen_house());
  corpus.emplace_back("K4", gen_complete(4));
  corpus.emplace_back("K6", gen_complete(6));
  corpus.emplace_back("grid(2,3)", gen_grid(2, 3));
  corpus.emplace_back("Q3", gen_grid(3, 1));
  corpus.emplace_back("Q4", gen_grid(4, 1));
  corpus.emplace_back("ladder_H(4,2)", gen_ladder_h(4, 2));
  corpus.emplace_back("ladder_H(3,4)", gen_ladder_h(3, 4));
  corpus.emplace_back("tree_I(4,2)", gen_subdivided_tree_i(4, 2));
  std::size_t rows = 0;
  std::size_t failures = 0;
  for (const auto& [name, inst] : corpus) {
    for (const auto& row : count_reports(name, inst.graph, inst.meta.source, 8, inst.meta.declared_genus)) {
      ++rows;
      if (!row.pass) {
        ++failures;
        r.detail += name + " L=" + std::to_string(row.L) + " " + to_string(row.bound_kind) + " FAIL; ";
      }
    }
  }
  r.detail += std::to_string(corpus.size()) + " graphs, " + std::to_string(rows) + " rows, " +
              std::to_string(failures) + " failures";
  r.pass = failures == 0;
  return r;
}

CriterionResult yab_checks(const AcceptanceOptions& o) {
  CriterionResult r{7, "Y_{a,b} tails and sums", false, "", 0.0};
  const std::vector<double> grid = {0.5, 1, 2, 4, 8};
  r.pass = true;
  std::uint64_t idx = 0;
  for (auto [a, b] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{4, 1}, {8, 4}, {16, 16}}) {
    Stream tail_stream(SeedPath{kSeed, {7, idx++}});
    const auto tail = check_yab_tail(tail_stream, a, b, grid, scaled(1'000'000, o));
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : tail.rows) worst = std::max(worst, row.empirical - row.bound);
    r.pass = r.pass && tail.all_pass();
    r.detail += "(" + std::to_string(a) + "," + std::to_string(b) + ") max(emp-bound)=" + fixed(worst) + " ";
    for (std::uint32_t m : {9u, 36u}) {
      Stream sum_stream(SeedPath{kSeed, {7, idx++}});
      const auto sum = check_sum_yab(sum_stream, a, b, m, scaled(100'000, o));
      r.pass = r.pass && sum.all_pass();
      r.detail += "m=" + std::to_string(m) + ":" + fixed(sum.rows[0].empirical) + "<=" + fixed(sum.rows[0].bound) + " ";
    }
    r.detail += "; ";
  }
  return r;
}

CriterionResult chernoff_checks(const AcceptanceOptions& o) {
  CriterionResult r{8, "Erlang head and tail bounds", false, "", 0.0};
  r.pass = true;
  std::uint64_t idx = 0;
  std::size_t rows = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint32_t k : {5u, 10u, 20u}) {
    for (double d : {4.0, 8.0}) {
      Stream s(SeedPath{kSeed, {8, idx++}});
      const auto rep = check_head_bound(s, k, d, scaled(1'000'000, o));
      r.pass = r.pass && rep.all_pass();
      worst = std::max(worst, rep.rows[0].empirical - rep.rows[0].bound);
      ++rows;
    }
    for (double t : {3.0, 5.0}) {
      Stream s(SeedPath{kSeed, {8, idx++}});
      const auto rep = check_tail_bound(s, k, t, scaled(1'000'000, o));
      r.pass = r.pass && rep.all_pass();
      worst = std::max(worst, rep.rows[0].empirical - rep.rows[0].bound);
      ++rows;
    }
  }
  r.detail = std::to_string(rows) + " checks, max(emp-bound)=" + fixed(worst, 6);
  return r;
}

CriterionResult lower_bound_behaviour(const AcceptanceOptions& o) {
  CriterionResult r{9, "lower-bound construction", false, "", 0.0};
  auto glued = make_spec("glued", FamilyKind::glued_g, {{"L", 64}, {"delta", 8}, {"a_over_e2", 4}}, scaled(500, o), 900);
  const auto res = run_lower_bound_experiment(glued);
  const double freq = res.summary.metric("height_ok")->mean;
  bool implication = res.summary.metric("implication_ok")->min == 1.0;
  r.detail = "glued L=64 freq(h>=L-1)=" + fixed(freq, 3) + "; ";
  std::uint64_t id = 901;
  std::size_t trials = 0;
  std::size_t both = 0;
  auto probe = [&](const std::string& name, FamilyKind kind, std::map<std::string, double> params) {
    const auto rr = run_lower_bound_experiment(make_spec(name, kind, std::move(params), scaled(200, o), id++));
    const auto* imp = rr.summary.metric("implication_ok");
    const auto* ab = rr.summary.metric("event_AB");
    trials += imp->count;
    both += static_cast<std::size_t>(std::llround(ab->mean * static_cast<double>(ab->count)));
    if (imp->min != 1.0) {
      implication = false;
      r.detail += name + " implication FAIL; ";
    }
  };
  for (int delta : {4, 8}) {
    probe("glued", FamilyKind::glued_g, {{"L", 32}, {"delta", delta}, {"a_over_e2", 4}});
    probe("planar", FamilyKind::planar_lower_g, {{"L", 32}, {"delta", delta}, {"a_over_e2", 4}});
    for (int d : {2, 4}) {
      probe("degenerate", FamilyKind::degenerate_lower_g, {{"L", 32}, {"delta", delta}, {"d", d}, {"a_over_e2", 4}});
    }
  }
  r.detail += "implication " + std::string(implication ? "held" : "VIOLATED") + " over " +
              std::to_string(trials + res.records.size()) + " trials (A and B on " + std::to_string(both) + " of " +
              std::to_string(trials) + " L=32 trials)";
  r.pass = freq >= 0.9 && implication;
  return r;
}

CriterionResult tree_decomposition(const AcceptanceOptions&) {
  CriterionResult r{10, "degenerate tree decomposition", false, "", 0.0};
  std::size_t instances = 0;
  std::size_t valid = 0;
  std::size_t width_ok = 0;
  std::size_t degeneracy_ok = 0;
  std::map<int, std::pair<std::size_t, std::uint32_t>> worst;  // d -> (max width, max degeneracy)
  for (int d : {1, 2, 3}) {
    for (int L : {2, 4, 8, 32}) {
      for (int delta : {2, 4, 8}) {
        const auto inst = generate({FamilyKind::degenerate_lower_g,
                                    {{"L", L}, {"delta", delta}, {"d", d}, {"a_over_e2", 4}}});
        const auto td = build_tree_decomposition_degenerate(inst.graph, inst.meta);
        const auto rep = verify_tree_decomposition(inst.graph, td);
        const auto degen = degeneracy_ordering(inst.graph).degeneracy;
        ++instances;
        valid += rep.valid;
        width_ok += rep.valid && rep.width <= static_cast<std::size_t>(2 * d + 1);
        degeneracy_ok += degen <= static_cast<std::uint32_t>(d);
        auto& w = worst[d];
        w.first = std::max(w.first, rep.width);
        w.second = std::max(w.second, degen);
      }
    }
  }
  r.detail = std::to_string(instances) + " instances: valid " + std::to_string(valid) + ", width<=2d+1 " +
             std::to_string(width_ok) + ", degeneracy<=d " + std::to_string(degeneracy_ok) + "; ";
  for (const auto& [d, w] : worst) {
    r.detail += "d=" + std::to_string(d) + " max width " + std::to_string(w.first) + " max degeneracy " +
                std::to_string(w.second) + "; ";
  }
  r.pass = valid == instances && width_ok == instances && degeneracy_ok == instances;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CriterionResult determinism(const AcceptanceOptions& o) {
  CriterionResult r{11, "determinism across runs and workers", false, "", 0.0};
  auto root = o.scratch_dir;
  if (root.empty()) root = std::filesystem::temp_directory_path() / ("fpptree_acceptance_" + std::to_string(::getpid()));
  std::filesystem::remove_all(root);

  std::vector<ExperimentSpec> specs;
  auto grid = make_spec("grid", FamilyKind::grid, {{"d", 3}, {"k", 3}}, 300, 1100);
  grid.process = ProcessChoice::both;
  grid.metrics = {"height", "cover_time", "hitting_times", "bound_matrix"};
  specs.push_back(grid);
  auto glued = make_spec("glued", FamilyKind::glued_g, {{"L", 16}, {"delta", 4}, {"a_over_e2", 4}}, 100, 1101);
  glued.metrics = {"height", "cover_time", "event_AB"};
  specs.push_back(glued);

  const char* files[] = {"trials.jsonl", "summary.csv", "verdicts.csv", "bounds.csv"};
  r.pass = true;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::vector<std::filesystem::path> dirs;
    for (auto [run, workers] : std::vector<std::pair<int, unsigned>>{{0, 1}, {1, 1}, {2, 8}}) {
      auto spec = specs[i];
      spec.workers = workers;
      const auto dir = root / (std::to_string(i) + "_" + std::to_string(run));
      write_experiment_outputs(run_experiment(spec), dir);
      dirs.push_back(dir);
    }
    for (const char* f : files) {
      if (!std::filesystem::exists(dirs[0] / f)) continue;
      const auto ref = slurp(dirs[0] / f);
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        ++compared;
        if (slurp(dirs[k] / f) != ref) {
          r.pass = false;
          r.detail += specs[i].name + "/" + f + " differs; ";
        }
      }
    }
  }
  std::filesystem::remove_all(root);
  r.detail += std::to_string(compared) + " file comparisons (two runs, workers 1 vs 8)";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  const std::vector<std::pair<int, Fn>> all = {
      {1, law_equivalence}, {2, complete_height},  {3, cover_time_bound},      {4, hypercube_cover},
      {5, grid_cover},      {6, walk_path_bounds}, {7, yab_checks},            {8, chernoff_checks},
      {9, lower_bound_behaviour}, {10, tree_decomposition}, {11, determinism},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : all) {
    if (!options.only.empty() && !options.only.contains(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = fn(options);
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.pass = false;
      res.detail = std::string("error: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(res);
    out.push_back(std::move(res));
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + " (" +
         fixed(r.seconds, 1) + "s): " + r.detail;
}

}  // namespace fpptree
