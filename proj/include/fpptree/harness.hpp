#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fpptree/counting.hpp"
#include "fpptree/families.hpp"
#include "fpptree/growth.hpp"

namespace fpptree {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutDirEnv = "FPPTREE_OUT_DIR";

enum class SourcePolicy { family_default, first_vertex, group_v1, explicit_id };
enum class ProcessChoice { discrete, fpp, both };

std::string_view to_string(SourcePolicy p);
std::string_view to_string(ProcessChoice p);

// Known metric names: height, cover_time, hitting_times, bound_matrix, event_AB.
struct ExperimentSpec {
  std::string name = "experiment";
  FamilySpec family;
  SourcePolicy source_policy = SourcePolicy::family_default;
  VertexId source_vertex = 0;
  ProcessChoice process = ProcessChoice::fpp;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t experiment_id = 0;
  std::set<std::string> metrics = {"height"};
  unsigned workers = 1;

  bool wants(std::string_view metric) const { return metrics.contains(std::string(metric)); }
};

// Strict parsing: unknown keys, wrong types and invalid combinations throw ConfigError.
ExperimentSpec parse_experiment_spec(std::string_view json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
std::string experiment_spec_to_json(const ExperimentSpec& spec);
void validate_experiment_spec(const ExperimentSpec& spec);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::string seed_path;
  std::uint32_t height = 0;  // of the FPP tree when FPP runs, else of the discrete tree
  std::optional<std::uint32_t> height_discrete;  // only when both processes run
  std::optional<double> cover_time;
  std::optional<std::uint32_t> max_weight_path_length;
  std::vector<double> hitting_times;
  std::optional<bool> event_a;
  std::optional<bool> event_b;
  std::optional<bool> height_ok;
  std::optional<bool> implication_ok;  // not (A and B) or height_ok
};

// One sorted-key JSON object, no trailing newline.
std::string trial_record_json(const TrialRecord& r, std::string_view process);

struct MetricSummary {
  std::string metric;
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
  double min = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

// Nearest-rank quantile: the ceil(q N)-th smallest value.
double nearest_rank_quantile(std::vector<double> values, double q);
MetricSummary summarize_metric(const std::string& metric, const std::vector<double>& values);

struct Verdict {
  std::string check_id;
  std::string theorem_ref;
  double threshold = 0.0;
  double empirical = 0.0;  // exceedance fraction
  double allowed = 0.0;    // stated failure probability
  bool pass = false;
};

struct Summary {
  std::vector<MetricSummary> metrics;
  std::vector<Verdict> verdicts;
  std::optional<BoundMatrix> bounds;
  std::vector<std::string> notes;

  const MetricSummary* metric(const std::string& name) const;
  bool all_pass() const;
};

struct ExperimentResult {
  ExperimentSpec spec;
  VertexId source = 0;
  std::vector<TrialRecord> records;
  Summary summary;
};

VertexId resolve_source(const ExperimentSpec& spec, const FamilyInstance& instance);

// Records are indexed by trial, so the output does not depend on `workers`.
ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec, const FamilyInstance& instance);

// Verdict pass iff exceedance <= allowed failure + 3 binomial standard errors.
std::vector<Verdict> check_upper_bounds(const std::vector<TrialRecord>& records, const BoundMatrix& matrix);

// Forces FPP and the event_AB metric on a lower-bound family.
ExperimentResult run_lower_bound_experiment(ExperimentSpec spec);

// Minimum I-distance between two distinct leaves of the subdivided tree.
double min_leaf_pair_distance(const Graph& g, const ConstructionMeta& meta, const EdgeWeights& weights);

// Writes trials.jsonl, summary.csv, verdicts.csv and, if present, bounds.csv.
void write_experiment_outputs(const ExperimentResult& result, const std::filesystem::path& dir);
std::string summary_csv(const Summary& s);
std::string verdicts_csv(const Summary& s);
std::string bounds_csv(const BoundMatrix& m);

// $FPPTREE_OUT_DIR, else "results".
std::filesystem::path default_output_dir();

}  // namespace fpptree
