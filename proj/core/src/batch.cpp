#include "graphforge/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "graphforge/error.hpp"
#include "graphforge/generators.hpp"
#include "graphforge/layout.hpp"

namespace graphforge {

namespace detail {
extern const std::string_view kPresetCatalog;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename T>
T param(const json& params, const char* key) {
  if (!params.contains(key)) throw InvalidArgument(std::string("missing parameter '") + key + "'");
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("parameter '") + key + "' has the wrong type");
  }
}

template <typename T>
T param_or(const json& params, const char* key, T fallback) {
  return params.contains(key) ? param<T>(params, key) : fallback;
}

OutDegreeSpec parse_out_degree(const json& value, int n) {
  if (value.is_number_integer()) {
    const int d = value.get<int>();
    if (d < 1) throw InvalidArgument("out_degree must be >= 1");
    return OutDegreeSpec::constant(d);
  }
  if (value.is_string()) {
    const auto name = value.get<std::string>();
    if (name == "laplace") return OutDegreeSpec::laplace();
    if (name == "hubs0") return OutDegreeSpec::hub_preset(n, 0);
    if (name == "hubs1") return OutDegreeSpec::hub_preset(n, 1);
  }
  throw InvalidArgument("out_degree must be an integer, \"laplace\", \"hubs0\" or \"hubs1\"");
}

bool is_undirected_family(std::string_view family) {
  return family == "er" || family == "ba" || family == "ws" || family == "fmri";
}

Eigen::MatrixXd connectome_for(const json& params, const Eigen::MatrixXd* fmri_matrix) {
  const auto source = param_or<std::string>(params, "source", fmri_matrix ? "file" : "synthetic");
  if (source == "file") {
    if (!fmri_matrix) throw InvalidArgument("fmri entry needs a connectivity matrix file");
    return *fmri_matrix;
  }
  if (source != "synthetic") throw InvalidArgument("fmri source must be \"synthetic\" or \"file\"");
  return synthetic_connectome(param<int>(params, "connectome_dim"), param<std::uint64_t>(params, "connectome_seed"));
}

std::string format_value(const ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void append_grid(std::vector<ordered_json>& points, const ordered_json& grid) {
  points.assign(1, ordered_json::object());
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array() || values.empty()) {
      throw DataError("preset grid key '" + key + "' must be a non-empty list");
    }
    std::vector<ordered_json> next;
    for (const auto& point : points) {
      for (const auto& value : values) {
        ordered_json extended = point;
        extended[key] = value;
        next.push_back(std::move(extended));
      }
    }
    points = std::move(next);
  }
}

std::string entry_name(std::string_view family, std::string_view base, const ordered_json& point, int version) {
  std::string name(family);
  if (!base.empty()) {
    name += '_';
    name += base;
  }
  for (const auto& [key, value] : point.items()) {
    name += '_';
    name += key;
    name += format_value(value);
  }
  name += "_v" + std::to_string(version);
  return name;
}

}  // namespace

const std::vector<std::string>& graph_families() {
  static const std::vector<std::string> families{"er", "ba", "ws", "rdag", "composite", "fmri", "bottleneck"};
  return families;
}

UndirectedGraph build_undirected(std::string_view family, const json& params, std::uint64_t seed,
                                 const Eigen::MatrixXd* fmri_matrix) {
  const RngSpec rng{seed, std::string(family)};
  const int n = param<int>(params, "n");
  if (family == "er") return gen_er(n, param<double>(params, "p"), rng);
  if (family == "ba") return gen_ba(n, param<int>(params, "m"), rng);
  if (family == "ws") return gen_ws(n, param<int>(params, "k"), param<double>(params, "p"), rng);
  if (family == "fmri") {
    FmriParams fp{connectome_for(params, fmri_matrix), param<double>(params, "threshold"), n};
    return gen_fmri(fp, rng);
  }
  throw InvalidArgument("'" + std::string(family) + "' is not an undirected graph family");
}

GraphDocument build_graph(std::string_view family, const json& params, std::uint64_t seed,
                          const Eigen::MatrixXd* fmri_matrix) {
  if (!params.is_object()) throw InvalidArgument("graph parameters must be a JSON object");
  GraphMeta meta{std::string(family), params, seed};
  const RngSpec rng{seed, std::string(family)};

  if (family == "bottleneck") {
    const auto base = param<std::string>(params, "base");
    if (base == "bottleneck") throw InvalidArgument("bottleneck base cannot itself be a bottleneck");
    json base_params = params;
    base_params.erase("base");
    const GraphDocument base_doc = build_graph(base, base_params, seed, fmri_matrix);
    for (const auto& [key, value] : base_doc.meta.params.items()) {
      if (!params.contains(key)) meta.params[key] = value;
    }
    return GraphDocument::from_dag(bottleneck_ablation(base_doc.to_dag()), std::move(meta));
  }

  const int n = param<int>(params, "n");
  Dag dag;
  if (is_undirected_family(family)) {
    const UndirectedGraph raw = build_undirected(family, params, seed, fmri_matrix);
    const UndirectedGraph kept = largest_component(raw);
    if (kept.size() != n) meta.params["kept_nodes"] = kept.size();
    dag = dagify(kept, OrderingMethod::x);
  } else if (family == "rdag") {
    RdagParams rp;
    rp.n = n;
    rp.out_degree = parse_out_degree(params.contains("out_degree") ? params.at("out_degree") : json(2), n);
    rp.f = LocalityFunction::parse(param_or<std::string>(params, "f", "constant"));
    rp.B = param_or<int>(params, "B", 5);
    rp.alpha = param_or<double>(params, "alpha", 0.5);
    rp.forced_edge_counts = param_or<bool>(params, "forced_edge_counts", true);
    dag = gen_rdag(rp, rng);
  } else if (family == "composite") {
    dag = gen_composite(n, param<double>(params, "p_init"), param_or<int>(params, "budget", kDefaultCompositeBudget),
                        rng);
    if (dag.size() != n) meta.params["kept_nodes"] = dag.size();
  } else {
    throw InvalidArgument("unknown graph family '" + std::string(family) + "'");
  }
  return GraphDocument::from_dag(assign_stages(dag), std::move(meta));
}

const ordered_json& preset_catalog() {
  static const ordered_json catalog = ordered_json::parse(detail::kPresetCatalog);
  return catalog;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : preset_catalog().items()) names.push_back(name);
  return names;
}

std::uint64_t entry_seed(std::uint64_t root_seed, std::string_view family, const json& params, int version) {
  std::string label(family);
  label += '|';
  label += params.dump();
  label += "|v" + std::to_string(version);
  return derive_seed(root_seed, label);
}

BatchManifest expand_preset(std::string_view name, std::uint64_t root_seed, bool fmri_from_file) {
  return expand_preset(preset_catalog(), name, root_seed, fmri_from_file);
}

BatchManifest expand_preset(const ordered_json& catalog, std::string_view name, std::uint64_t root_seed,
                            bool fmri_from_file) {
  const std::string key(name);
  if (!catalog.contains(key)) throw InvalidArgument("unknown preset '" + key + "'");
  BatchManifest manifest{key, root_seed, {}};
  const std::uint64_t connectome_seed = derive_seed(root_seed, "connectome");
  try {
    const auto& preset = catalog.at(key);
    const int versions = preset.value("versions", 1);
    for (const auto& group : preset.at("groups")) {
      const auto family = group.at("family").get<std::string>();
      const auto base = group.value("base", std::string());
      const std::string generator = family == "bottleneck" ? base : family;
      std::vector<ordered_json> points;
      append_grid(points, group.at("grid"));
      for (const auto& point : points) {
        json params = json::parse(point.dump());
        if (generator == "fmri") {
          if (fmri_from_file) {
            params.erase("connectome_dim");
            params["source"] = "file";
          } else {
            params["source"] = "synthetic";
            params["connectome_seed"] = connectome_seed;
          }
        }
        for (int v = 0; v < versions; ++v) {
          BatchEntry entry;
          entry.name = entry_name(family, base, point, v);
          entry.family = family;
          // Bottleneck entries share the seed of their base graph.
          entry.seed = entry_seed(root_seed, generator, params, v);
          entry.params = params;
          if (family == "bottleneck") entry.params["base"] = base;
          entry.output = std::filesystem::path("graphs") / (entry.name + ".json");
          manifest.entries.push_back(std::move(entry));
        }
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("malformed preset '" + key + "': " + ex.what());
  }
  validate_manifest(manifest);
  return manifest;
}

void validate_manifest(const BatchManifest& manifest) {
  std::set<std::string> names;
  std::set<std::tuple<std::string, std::string, std::uint64_t>> keys;
  for (const auto& entry : manifest.entries) {
    if (!names.insert(entry.name).second) throw InvalidArgument("duplicate manifest entry name '" + entry.name + "'");
    if (!keys.insert({entry.family, entry.params.dump(), entry.seed}).second) {
      throw InvalidArgument("duplicate manifest entry (family, params, seed) at '" + entry.name + "'");
    }
  }
}

ordered_json manifest_to_json(const BatchManifest& manifest) {
  ordered_json j;
  j["preset"] = manifest.preset;
  j["root_seed"] = manifest.root_seed;
  auto& entries = j["entries"] = ordered_json::array();
  for (const auto& entry : manifest.entries) {
    ordered_json item;
    item["name"] = entry.name;
    item["family"] = entry.family;
    item["params"] = entry.params;
    item["seed"] = entry.seed;
    item["output"] = entry.output.generic_string();
    entries.push_back(std::move(item));
  }
  return j;
}

std::string feature_record_header() {
  const std::string base = feature_csv_header();
  return "graph,family,seed" + base.substr(base.find(','));
}

std::string feature_record_row(std::string_view name, const GraphMeta& meta, const FeatureVector& fv) {
  const std::string row = feature_csv_row(name, fv);
  return std::string(name) + "," + meta.family + "," + std::to_string(meta.seed) + row.substr(name.size());
}

EntryResult process_graph(const GraphDocument& graph, std::int64_t target_params) {
  const Dag dag = graph.to_dag();
  EntryResult result{graph, analyze_dag(dag), {}};
  result.spec = export_archspec(dag, solve_channels(dag, target_params), graph.meta);
  return result;
}

EntryResult process_entry(const BatchEntry& entry, const Eigen::MatrixXd* fmri_matrix, std::int64_t target_params) {
  return process_graph(build_graph(entry.family, entry.params, entry.seed, fmri_matrix), target_params);
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("GRAPHFORGE_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BatchSummary run_batch(const BatchManifest& manifest, const std::filesystem::path& out_dir,
                       const BatchOptions& options) {
  validate_manifest(manifest);
  namespace fs = std::filesystem;
  for (const char* sub : {"graphs", "features", "specs"}) fs::create_directories(out_dir / sub);

  const std::size_t total = manifest.entries.size();
  std::vector<std::optional<std::string>> rows(total);
  std::vector<std::optional<std::string>> errors(total);
  std::vector<char> q1d(total, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const BatchEntry& entry = manifest.entries[i];
      bool ok = true;
      try {
        const EntryResult result = process_entry(entry, options.fmri_matrix, options.target_params);
        const std::string row = feature_record_row(entry.name, result.graph.meta, result.features);
        write_file_atomic(out_dir / entry.output, write_graph_json(result.graph));
        write_file_atomic(out_dir / "features" / (entry.name + ".csv"), feature_record_header() + "\n" + row + "\n");
        write_file_atomic(out_dir / "specs" / (entry.name + ".json"), write_archspec_json(result.spec));
        rows[i] = row;
        q1d[i] = result.features.is_q1d ? 1 : 0;
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
        ok = false;
      }
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(finished, total, entry, ok);
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(options.threads ? options.threads : default_thread_count(),
                                                  std::max<std::size_t>(total, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BatchSummary summary;
  summary.total = total;
  std::string summary_csv = feature_record_header() + "\n";
  std::string failures_csv = "graph,family,seed,error\n";
  for (std::size_t i = 0; i < total; ++i) {
    const BatchEntry& entry = manifest.entries[i];
    if (rows[i]) {
      ++summary.succeeded;
      summary.q1d += static_cast<std::size_t>(q1d[i]);
      summary_csv += *rows[i] + "\n";
    } else {
      summary.failures.push_back({entry.name, *errors[i]});
      std::string message = *errors[i];
      std::replace(message.begin(), message.end(), '"', '\'');
      failures_csv += entry.name + "," + entry.family + "," + std::to_string(entry.seed) + ",\"" + message + "\"\n";
    }
  }
  write_file_atomic(out_dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  write_file_atomic(out_dir / "summary.csv", summary_csv);
  write_file_atomic(out_dir / "failures.csv", failures_csv);
  write_file_atomic(out_dir / "features.schema.json", feature_schema_json());
  return summary;
}

}  // namespace graphforge
