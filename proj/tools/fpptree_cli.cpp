// fpptree command line: generate graphs, grow trees, count paths, run
// experiments and the acceptance suite.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpptree/acceptance.hpp"
#include "fpptree/analytics.hpp"
#include "fpptree/counting.hpp"
#include "fpptree/error.hpp"
#include "fpptree/families.hpp"
#include "fpptree/growth.hpp"
#include "fpptree/harness.hpp"

using namespace fpptree;
using nlohmann::json;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

struct GraphArgs {
  std::string family;
  std::string graph_file;
  std::map<std::string, std::optional<double>> params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "family name (complete, grid, ladder_H, ...)");
    cmd->add_option("--graph", graph_file, "read the graph from a text file instead");
    for (const char* key : {"n", "d", "k", "L", "delta", "m", "Delta", "D", "a", "leaves"}) {
      params[key];
    }
    params["a_over_e2"];
    for (auto& [key, value] : params) {
      const std::string flag = "--" + (key == "a_over_e2" ? std::string("a-over-e2") : key);
      cmd->add_option(flag, value, "family parameter " + key);
    }
  }

  FamilyInstance load() const {
    if (!graph_file.empty()) {
      if (!family.empty()) throw CLI::ValidationError("give either --family or --graph");
      std::ifstream in(graph_file);
      if (!in) throw ConfigError("cannot open graph file " + graph_file);
      return FamilyInstance{read_graph_text(in), ConstructionMeta{}};
    }
    if (family.empty()) throw CLI::ValidationError("--family or --graph is required");
    FamilySpec spec{family_kind_from_string(family), {}};
    for (const auto& [key, value] : params) {
      if (value) spec.params[key] = *value;
    }
    return generate(spec);
  }
};

json meta_json(const FamilyInstance& inst) {
  const auto& m = inst.meta;
  json j;
  j["kind"] = std::string(to_string(m.kind));
  j["vertices"] = inst.graph.num_vertices();
  j["edges"] = inst.graph.num_edges();
  j["params"] = m.resolved;
  j["declared_diameter_bound"] = m.declared_diameter_bound;
  j["declared_max_degree"] = m.declared_max_degree;
  if (m.declared_degeneracy) j["declared_degeneracy"] = *m.declared_degeneracy;
  if (m.declared_genus) j["declared_genus"] = *m.declared_genus;
  j["source"] = m.source;
  if (m.target) j["target"] = *m.target;
  if (!m.groups.empty()) j["groups"] = m.groups;
  if (!m.connector_groups.empty()) j["connector_groups"] = m.connector_groups;
  if (m.has_tree()) {
    j["tree_leaves"] = m.tree_leaves;
    j["tree_vertices"] = m.tree_order;
  }
  if (m.event_threshold) j["event_threshold"] = *m.event_threshold;
  if (m.height_target) j["height_target"] = *m.height_target;
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j;
}

VertexId pick_source(const FamilyInstance& inst, std::optional<std::uint64_t> source) {
  const VertexId s = source ? static_cast<VertexId>(*source) : inst.meta.source;
  if (s >= inst.graph.num_vertices()) throw InvalidParameter("source vertex out of range");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random spanning tree growth and first-passage percolation experiments"};
  app.require_subcommand(1);

  GraphArgs gen_args;
  std::string gen_graph_out;
  std::string gen_meta_out;
  auto* gen = app.add_subcommand("gen", "emit a family graph and its construction metadata");
  gen_args.attach(gen);
  gen->add_option("--graph-out", gen_graph_out, "write the graph here (default stdout)");
  gen->add_option("--meta-out", gen_meta_out, "write the metadata JSON here");

  GraphArgs grow_args;
  std::optional<std::uint64_t> grow_source;
  std::string grow_process = "discrete";
  std::uint64_t grow_seed = 1;
  auto* grow = app.add_subcommand("grow", "grow one tree and print its statistics");
  grow_args.attach(grow);
  grow->add_option("--source", grow_source, "root vertex (default: family source)");
  grow->add_option("--process", grow_process, "discrete or fpp")->check(CLI::IsMember({"discrete", "fpp"}));
  grow->add_option("--seed", grow_seed, "master seed");

  GraphArgs fpp_args;
  std::optional<std::uint64_t> fpp_source;
  std::uint64_t fpp_seed = 1;
  auto* fpp = app.add_subcommand("fpp", "one FPP run with per-vertex hitting times");
  fpp_args.attach(fpp);
  fpp->add_option("--source", fpp_source, "root vertex (default: family source)");
  fpp->add_option("--seed", fpp_seed, "master seed");

  GraphArgs count_args;
  std::optional<std::uint64_t> count_source;
  std::uint32_t count_max_L = 6;
  std::uint64_t count_budget = kDefaultPathBudget;
  auto* count = app.add_subcommand("count", "exact path and walk counts against their bounds");
  count_args.attach(count);
  count->add_option("--source", count_source, "start vertex for path counts");
  count->add_option("--max-L", count_max_L, "largest length counted");
  count->add_option("--budget", count_budget, "path search expansion budget");

  std::string expt_config;
  std::string expt_out;
  std::optional<std::uint64_t> expt_seed;
  std::optional<std::uint64_t> expt_trials;
  std::optional<unsigned> expt_workers;
  auto* expt = app.add_subcommand("expt", "run an experiment config");
  expt->add_option("--config", expt_config, "JSON config")->required();
  expt->add_option("--out", expt_out, "output directory (default $FPPTREE_OUT_DIR or results)");
  expt->add_option("--seed", expt_seed, "override master_seed");
  expt->add_option("--trials", expt_trials, "override trials");
  expt->add_option("--workers", expt_workers, "override workers");

  std::string verify_suite = "full";
  std::vector<int> verify_only;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", verify_suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--only", verify_only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const auto inst = gen_args.load();
      if (gen_graph_out.empty()) {
        write_graph_text(std::cout, inst.graph);
      } else {
        std::ofstream out(gen_graph_out);
        write_graph_text(out, inst.graph);
      }
      if (!gen_meta_out.empty()) {
        std::ofstream out(gen_meta_out);
        out << meta_json(inst).dump(2) << '\n';
      }
      return 0;
    }
    if (grow->parsed()) {
      const auto inst = grow_args.load();
      const VertexId s = pick_source(inst, grow_source);
      const SeedPath seed{grow_seed, {0, 0}};
      json j;
      j["vertices"] = inst.graph.num_vertices();
      j["edges"] = inst.graph.num_edges();
      j["source"] = s;
      j["process"] = grow_process;
      j["eccentricity"] = eccentricity(inst.graph, s);
      if (grow_process == "discrete") {
        Stream stream(seed.child(1));
        j["height"] = height(grow_discrete(inst.graph, s, stream));
      } else {
        Stream stream(seed.child(0));
        const auto r = grow_fpp(inst.graph, s, sample_edge_weights(inst.graph, stream));
        j["height"] = height(r.tree);
        j["cover_time"] = r.cover_time;
        j["max_weight_path_length"] = max_weight_path_length(r);
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (fpp->parsed()) {
      const auto inst = fpp_args.load();
      const VertexId s = pick_source(inst, fpp_source);
      Stream stream(SeedPath{fpp_seed, {0, 0, 0}});
      const auto weights = sample_edge_weights(inst.graph, stream);
      const auto r = grow_fpp(inst.graph, s, weights);
      json j;
      j["source"] = s;
      j["height"] = height(r.tree);
      j["cover_time"] = r.cover_time;
      j["cover_vertex"] = r.cover_vertex;
      j["hitting_times"] = r.hitting_time;
      std::vector<std::int64_t> parent;
      for (VertexId p : r.tree.parent) parent.push_back(p == kNoVertex ? -1 : static_cast<std::int64_t>(p));
      j["parent"] = parent;
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (count->parsed()) {
      const auto inst = count_args.load();
      const VertexId s = pick_source(inst, count_source);
      std::cout << "L,source,exact,bound_kind,bound,bound_exact,pass\n";
      bool ok = true;
      for (const auto& row : count_reports(std::string(to_string(inst.meta.kind)), inst.graph, s, count_max_L,
                                           inst.meta.declared_genus, count_budget)) {
        ok = ok && row.pass;
        std::cout << row.L << ',' << (row.source ? std::to_string(*row.source) : "all") << ',' << row.exact_count
                  << ',' << to_string(row.bound_kind) << ',' << row.bound.value << ','
                  << (row.bound.exact ? "true" : "false") << ',' << (row.pass ? "true" : "false") << '\n';
      }
      return ok ? 0 : kExitVerdict;
    }
    if (expt->parsed()) {
      auto spec = load_experiment_spec(expt_config);
      if (expt_seed) spec.master_seed = *expt_seed;
      if (expt_trials) spec.trials = *expt_trials;
      if (expt_workers) spec.workers = *expt_workers;
      validate_experiment_spec(spec);
      const auto result = run_experiment(spec);
      const std::filesystem::path dir = expt_out.empty() ? default_output_dir() : std::filesystem::path(expt_out);
      write_experiment_outputs(result, dir);
      std::cout << summary_csv(result.summary);
      if (!result.summary.verdicts.empty()) std::cout << verdicts_csv(result.summary);
      return result.summary.all_pass() ? 0 : kExitVerdict;
    }
    if (verify->parsed()) {
      AcceptanceOptions options;
      options.scale_down = verify_suite == "quick" ? 20 : 1;
      options.only.insert(verify_only.begin(), verify_only.end());
      options.on_result = [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; };
      bool ok = true;
      for (const auto& r : run_acceptance(options)) ok = ok && r.pass;
      return ok ? 0 : kExitVerdict;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
