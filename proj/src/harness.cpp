#include "fpptree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "fpptree/analytics.hpp"
#include "fpptree/error.hpp"

namespace fpptree {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownMetrics = {"height", "cover_time", "hitting_times", "bound_matrix", "event_AB"};

constexpr std::uint64_t kFppStream = 0;
constexpr std::uint64_t kDiscreteStream = 1;

std::string number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

bool is_lower_bound_family(FamilyKind k) {
  return k == FamilyKind::glued_g || k == FamilyKind::planar_lower_g || k == FamilyKind::degenerate_lower_g;
}

void require_keys(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

std::uint64_t get_uint(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

SourcePolicy source_policy_from_string(const std::string& s) {
  if (s == "family_default") return SourcePolicy::family_default;
  if (s == "first_vertex") return SourcePolicy::first_vertex;
  if (s == "group_v1") return SourcePolicy::group_v1;
  if (s == "explicit") return SourcePolicy::explicit_id;
  throw ConfigError("unknown source policy '" + s + "'");
}

ProcessChoice process_choice_from_string(const std::string& s) {
  if (s == "discrete") return ProcessChoice::discrete;
  if (s == "fpp") return ProcessChoice::fpp;
  if (s == "both") return ProcessChoice::both;
  throw ConfigError("unknown process '" + s + "'");
}

}  // namespace

std::string_view to_string(SourcePolicy p) {
  switch (p) {
    case SourcePolicy::family_default:
      return "family_default";
    case SourcePolicy::first_vertex:
      return "first_vertex";
    case SourcePolicy::group_v1:
      return "group_v1";
    case SourcePolicy::explicit_id:
      return "explicit";
  }
  return "unknown";
}

std::string_view to_string(ProcessChoice p) {
  switch (p) {
    case ProcessChoice::discrete:
      return "discrete";
    case ProcessChoice::fpp:
      return "fpp";
    case ProcessChoice::both:
      return "both";
  }
  return "unknown";
}

void validate_experiment_spec(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  if (spec.workers < 1) throw ConfigError("workers must be >= 1");
  if (spec.metrics.empty()) throw ConfigError("metrics must not be empty");
  for (const auto& m : spec.metrics) {
    if (!kKnownMetrics.contains(m)) throw ConfigError("unknown metric '" + m + "'");
  }
  const bool fpp = spec.process != ProcessChoice::discrete;
  if (!fpp && (spec.wants("cover_time") || spec.wants("hitting_times") || spec.wants("event_AB"))) {
    throw ConfigError("cover_time, hitting_times and event_AB need the fpp process");
  }
  if (spec.wants("event_AB") && !is_lower_bound_family(spec.family.kind)) {
    throw ConfigError("event_AB is only valid for glued_G, planar_lower_G and degenerate_lower_G");
  }
}

ExperimentSpec parse_experiment_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(doc,
               {"schema_version", "name", "family", "source", "process", "trials", "master_seed", "experiment_id",
                "metrics", "workers"},
               "config");
  ExperimentSpec spec;
  try {
    if (!doc.contains("schema_version") || get_uint(doc, "schema_version") != kSchemaVersion) {
      throw ConfigError("schema_version must be " + std::to_string(kSchemaVersion));
    }
    for (const char* key : {"family", "process", "trials", "master_seed", "metrics"}) {
      if (!doc.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    }
    if (doc.contains("name")) spec.name = get_string(doc, "name");

    const auto& fam = doc.at("family");
    require_keys(fam, {"kind", "params"}, "family");
    spec.family.kind = family_kind_from_string(get_string(fam, "kind"));
    if (fam.contains("params")) {
      const auto& params = fam.at("params");
      if (!params.is_object()) throw ConfigError("family.params must be an object");
      for (const auto& [key, value] : params.items()) {
        if (!value.is_number()) throw ConfigError("family parameter '" + key + "' must be a number");
        spec.family.params[key] = value.get<double>();
      }
    }

    if (doc.contains("source")) {
      const auto& src = doc.at("source");
      require_keys(src, {"policy", "vertex"}, "source");
      spec.source_policy = source_policy_from_string(get_string(src, "policy"));
      if (spec.source_policy == SourcePolicy::explicit_id) {
        if (!src.contains("vertex")) throw ConfigError("explicit source needs 'vertex'");
        const auto v = get_uint(src, "vertex");
        if (v >= kNoVertex) throw ConfigError("source vertex out of range");
        spec.source_vertex = static_cast<VertexId>(v);
      } else if (src.contains("vertex")) {
        throw ConfigError("'vertex' is only valid with the explicit source policy");
      }
    }

    spec.process = process_choice_from_string(get_string(doc, "process"));
    spec.trials = get_uint(doc, "trials");
    spec.master_seed = get_uint(doc, "master_seed");
    if (doc.contains("experiment_id")) spec.experiment_id = get_uint(doc, "experiment_id");
    if (doc.contains("workers")) {
      const auto w = get_uint(doc, "workers");
      if (w > 1024) throw ConfigError("workers must be <= 1024");
      spec.workers = static_cast<unsigned>(w);
    }

    const auto& metrics = doc.at("metrics");
    if (!metrics.is_array()) throw ConfigError("metrics must be an array of names");
    spec.metrics.clear();
    for (const auto& m : metrics) {
      if (!m.is_string()) throw ConfigError("metrics must be an array of names");
      spec.metrics.insert(m.get<std::string>());
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  validate_experiment_spec(spec);
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str());
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = spec.name;
  doc["family"]["kind"] = std::string(to_string(spec.family.kind));
  doc["family"]["params"] = json::object();
  for (const auto& [k, v] : spec.family.params) doc["family"]["params"][k] = v;
  doc["source"]["policy"] = std::string(to_string(spec.source_policy));
  if (spec.source_policy == SourcePolicy::explicit_id) doc["source"]["vertex"] = spec.source_vertex;
  doc["process"] = std::string(to_string(spec.process));
  doc["trials"] = spec.trials;
  doc["master_seed"] = spec.master_seed;
  doc["experiment_id"] = spec.experiment_id;
  doc["metrics"] = json(std::vector<std::string>(spec.metrics.begin(), spec.metrics.end()));
  doc["workers"] = spec.workers;
  return doc.dump(2);
}

std::string trial_record_json(const TrialRecord& r, std::string_view process) {
  json j;
  j["trial"] = r.trial;
  j["seed_path"] = r.seed_path;
  j["process"] = std::string(process);
  j["height"] = r.height;
  if (r.height_discrete) j["height_discrete"] = *r.height_discrete;
  if (r.cover_time) j["cover_time"] = *r.cover_time;
  if (r.max_weight_path_length) j["max_weight_path_length"] = *r.max_weight_path_length;
  if (!r.hitting_times.empty()) j["hitting_times"] = r.hitting_times;
  if (r.event_a) j["event_A"] = *r.event_a;
  if (r.event_b) j["event_B"] = *r.event_b;
  if (r.height_ok) j["height_ok"] = *r.height_ok;
  if (r.implication_ok) j["implication_ok"] = *r.implication_ok;
  return j.dump();
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidParameter("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return values[rank - 1];
}

MetricSummary summarize_metric(const std::string& metric, const std::vector<double>& values) {
  if (values.empty()) throw InvalidParameter("cannot summarize an empty metric");
  MetricSummary s;
  s.metric = metric;
  s.count = values.size();
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double x : sorted) sum += x;
  const double n = static_cast<double>(sorted.size());
  s.mean = sum / n;
  if (sorted.size() > 1) {
    double sq = 0.0;
    for (double x : sorted) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / (n - 1));
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.p50 = nearest_rank_quantile(sorted, 0.5);
  s.p90 = nearest_rank_quantile(sorted, 0.9);
  s.p99 = nearest_rank_quantile(sorted, 0.99);
  return s;
}

const MetricSummary* Summary::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.metric == name) return &m;
  }
  return nullptr;
}

bool Summary::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

VertexId resolve_source(const ExperimentSpec& spec, const FamilyInstance& instance) {
  const std::size_t n = instance.graph.num_vertices();
  switch (spec.source_policy) {
    case SourcePolicy::family_default:
      return instance.meta.source;
    case SourcePolicy::first_vertex:
      return 0;
    case SourcePolicy::group_v1:
      if (instance.meta.groups.empty() || instance.meta.groups.front().empty()) {
        throw ConfigError("source policy group_v1 needs a family with groups");
      }
      return instance.meta.groups.front().front();
    case SourcePolicy::explicit_id:
      if (spec.source_vertex >= n) throw ConfigError("explicit source vertex out of range");
      return spec.source_vertex;
  }
  return 0;
}

double min_leaf_pair_distance(const Graph& g, const ConstructionMeta& meta, const EdgeWeights& weights) {
  if (!meta.has_tree()) throw InvalidParameter("family has no subdivided tree");
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = g.num_vertices();
  // near[v]: lightest path from v down to a leaf of its subtree.
  std::vector<double> near(n, inf);
  for (VertexId leaf : meta.tree_leaves) near[leaf] = 0.0;
  double best = inf;
  for (auto it = meta.tree_order.rbegin(); it != meta.tree_order.rend(); ++it) {
    const VertexId v = *it;
    const VertexId p = meta.tree_parent[v];
    if (p == kNoVertex) continue;
    const auto e = g.find_edge(v, p);
    if (!e) throw InvalidGraph("tree link is not a graph edge");
    const double through = near[v] + weights[*e];
    best = std::min(best, near[p] + through);
    near[p] = std::min(near[p], through);
  }
  return best;
}

std::vector<Verdict> check_upper_bounds(const std::vector<TrialRecord>& records, const BoundMatrix& matrix) {
  std::vector<Verdict> out;
  for (const auto& entry : matrix.entries) {
    if (!entry.applicable) continue;
    const bool cover = entry.metric == "cover_time";
    std::uint64_t seen = 0;
    std::uint64_t exceed = 0;
    for (const auto& r : records) {
      double x;
      if (cover) {
        if (!r.cover_time) continue;
        x = *r.cover_time;
      } else {
        x = r.height;
      }
      ++seen;
      exceed += entry.inclusive ? x >= entry.value : x > entry.value;
    }
    if (seen == 0) continue;
    Verdict v;
    v.check_id = entry.id;
    v.theorem_ref = entry.theorem_ref;
    v.threshold = entry.value;
    v.empirical = static_cast<double>(exceed) / static_cast<double>(seen);
    v.allowed = entry.allowed_failure;
    v.pass = frequency_within_bound(v.empirical, v.allowed, seen);
    out.push_back(v);
  }
  return out;
}

namespace {

struct TrialContext {
  const ExperimentSpec& spec;
  const FamilyInstance& instance;
  VertexId source;
  std::uint32_t eccentricity;
  std::vector<bool> h_mask;  // non-tree edges
};

TrialRecord run_trial(const TrialContext& ctx, std::uint64_t trial) {
  const Graph& g = ctx.instance.graph;
  const auto& spec = ctx.spec;
  const SeedPath base{spec.master_seed, {spec.experiment_id, trial}};
  TrialRecord r;
  r.trial = trial;
  r.seed_path = base.to_string();

  std::optional<std::uint32_t> discrete_height;
  if (spec.process != ProcessChoice::fpp) {
    Stream stream(base.child(kDiscreteStream));
    const auto tree = grow_discrete(g, ctx.source, stream);
    discrete_height = height(tree);
  }
  if (spec.process == ProcessChoice::discrete) {
    r.height = *discrete_height;
  } else {
    Stream stream(base.child(kFppStream));
    const auto weights = sample_edge_weights(g, stream);
    const auto result = grow_fpp(g, ctx.source, weights);
    const auto problems = check_fpp_certificate(g, weights, result);
    if (!problems.empty()) throw Error("FPP certificate failed on trial " + std::to_string(trial) + ": " + problems.front());
    r.height = height(result.tree);
    if (spec.process == ProcessChoice::both) r.height_discrete = discrete_height;
    if (spec.wants("cover_time")) {
      r.cover_time = result.cover_time;
      r.max_weight_path_length = max_weight_path_length(result);
    }
    if (spec.wants("hitting_times")) r.hitting_times = result.hitting_time;
    if (spec.wants("event_AB")) {
      const auto& meta = ctx.instance.meta;
      const double threshold = *meta.event_threshold;
      const auto tau_h = restricted_hitting_times(g, meta.source, weights, ctx.h_mask, *meta.target);
      r.event_a = tau_h[*meta.target] <= threshold;
      r.event_b = min_leaf_pair_distance(g, meta, weights) > threshold;
      r.height_ok = r.height >= *meta.height_target;
      r.implication_ok = !(*r.event_a && *r.event_b) || *r.height_ok;
    }
  }
  // A spanning tree rooted at s reaches the farthest vertex from s.
  if (r.height < ctx.eccentricity || (discrete_height && *discrete_height < ctx.eccentricity)) {
    throw Error("tree height below the source eccentricity on trial " + std::to_string(trial));
  }
  return r;
}

BoundInputs bound_inputs(const FamilyInstance& instance) {
  const Graph& g = instance.graph;
  BoundInputs in;
  in.n = g.num_vertices();
  in.diameter = diameter(g);
  in.max_degree = max_degree(g);
  in.degeneracy = degeneracy_ordering(g).degeneracy;
  if (instance.meta.declared_genus) in.genus = *instance.meta.declared_genus;
  if (g.num_vertices() >= 2 && g.num_vertices() <= kDefaultExpansionBudget) {
    in.inverse_perimeter = expansion_profile(g).inverse_perimeter;
  }
  return in;
}

Summary summarize(const ExperimentSpec& spec, const FamilyInstance& instance, const std::vector<TrialRecord>& records) {
  Summary s;
  auto collect = [&](const std::string& name, auto getter) {
    std::vector<double> values;
    for (const auto& r : records) {
      if (auto v = getter(r)) values.push_back(*v);
    }
    if (!values.empty()) s.metrics.push_back(summarize_metric(name, values));
  };
  using Opt = std::optional<double>;
  collect("height", [](const TrialRecord& r) -> Opt { return r.height; });
  collect("height_discrete", [](const TrialRecord& r) -> Opt {
    return r.height_discrete ? Opt(*r.height_discrete) : std::nullopt;
  });
  collect("cover_time", [](const TrialRecord& r) -> Opt { return r.cover_time; });
  collect("max_weight_path_length", [](const TrialRecord& r) -> Opt {
    return r.max_weight_path_length ? Opt(*r.max_weight_path_length) : std::nullopt;
  });
  auto flag = [](const std::optional<bool>& b) -> Opt { return b ? Opt(*b ? 1.0 : 0.0) : std::nullopt; };
  collect("event_A", [&](const TrialRecord& r) { return flag(r.event_a); });
  collect("event_B", [&](const TrialRecord& r) { return flag(r.event_b); });
  collect("event_AB", [&](const TrialRecord& r) -> Opt {
    if (!r.event_a || !r.event_b) return std::nullopt;
    return *r.event_a && *r.event_b ? 1.0 : 0.0;
  });
  collect("height_ok", [&](const TrialRecord& r) { return flag(r.height_ok); });
  collect("implication_ok", [&](const TrialRecord& r) { return flag(r.implication_ok); });

  if (spec.wants("bound_matrix")) {
    s.bounds = bound_matrix(bound_inputs(instance));
    s.verdicts = check_upper_bounds(records, *s.bounds);
  }
  if (spec.wants("event_AB")) {
    const auto* m = s.metric("implication_ok");
    Verdict v;
    v.check_id = "implication_AB";
    v.theorem_ref = "events A and B force the height target";
    v.threshold = static_cast<double>(*instance.meta.height_target);
    v.empirical = m ? 1.0 - m->mean : 0.0;
    v.allowed = 0.0;
    v.pass = m && m->min == 1.0;
    s.verdicts.push_back(v);
    s.notes.push_back("lower-bound construction probed at override scale; the theorems' constants are out of reach");
  }
  return s;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate_experiment_spec(spec);
  const auto instance = generate(spec.family);
  return run_experiment(spec, instance);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const FamilyInstance& instance) {
  validate_experiment_spec(spec);
  if (spec.family.kind != instance.meta.kind) throw ConfigError("instance does not match the spec family");
  const VertexId source = resolve_source(spec, instance);
  TrialContext ctx{spec, instance, source, eccentricity(instance.graph, source), {}};
  if (spec.wants("event_AB")) {
    const auto& meta = instance.meta;
    if (!meta.target || !meta.event_threshold || !meta.height_target || !meta.has_tree()) {
      throw ConfigError("family meta lacks the event thresholds");
    }
    if (source != meta.source) throw ConfigError("event_AB needs the family's distinguished source");
    ctx.h_mask.resize(instance.graph.num_edges());
    for (EdgeId e = 0; e < instance.graph.num_edges(); ++e) ctx.h_mask[e] = !meta.is_tree_edge(instance.graph.edge(e));
  }

  std::vector<TrialRecord> records(spec.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= spec.trials) return;
      try {
        records[i] = run_trial(ctx, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(spec.trials);
        return;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(spec.workers, spec.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.spec = spec;
  result.source = source;
  result.summary = summarize(spec, instance, records);
  result.records = std::move(records);
  return result;
}

ExperimentResult run_lower_bound_experiment(ExperimentSpec spec) {
  if (!is_lower_bound_family(spec.family.kind)) {
    throw ConfigError("lower-bound experiments need glued_G, planar_lower_G or degenerate_lower_G");
  }
  if (spec.process == ProcessChoice::discrete) spec.process = ProcessChoice::fpp;
  spec.source_policy = SourcePolicy::family_default;
  spec.metrics.insert("event_AB");
  spec.metrics.insert("height");
  return run_experiment(spec);
}

std::string summary_csv(const Summary& s) {
  std::string out = "metric,mean,std,min,p50,p90,p99,max\n";
  for (const auto& m : s.metrics) {
    out += m.metric + "," + number(m.mean) + "," + number(m.stddev) + "," + number(m.min) + "," + number(m.p50) + "," +
           number(m.p90) + "," + number(m.p99) + "," + number(m.max) + "\n";
  }
  return out;
}

std::string verdicts_csv(const Summary& s) {
  std::string out = "check_id,theorem_ref,threshold,empirical,allowed,pass\n";
  for (const auto& v : s.verdicts) {
    out += v.check_id + "," + v.theorem_ref + "," + number(v.threshold) + "," + number(v.empirical) + "," +
           number(v.allowed) + "," + (v.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string bounds_csv(const BoundMatrix& m) {
  std::string out = "bound_id,theorem_ref,metric,value,allowed_failure,applicable,note\n";
  for (const auto& e : m.entries) {
    out += e.id + "," + e.theorem_ref + "," + e.metric + "," + number(e.value) + "," + number(e.allowed_failure) + "," +
           (e.applicable ? "true" : "false") + ",\"" + e.note + "\"\n";
  }
  return out;
}

void write_experiment_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << text;
  };
  std::string lines;
  for (const auto& r : result.records) lines += trial_record_json(r, to_string(result.spec.process)) + "\n";
  write("trials.jsonl", lines);
  write("summary.csv", summary_csv(result.summary));
  write("verdicts.csv", verdicts_csv(result.summary));
  if (result.summary.bounds) write("bounds.csv", bounds_csv(*result.summary.bounds));
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "results";
}

}  // namespace fpptree
