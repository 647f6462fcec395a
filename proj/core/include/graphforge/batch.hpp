#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "graphforge/arch.hpp"
#include "graphforge/features.hpp"
#include "graphforge/graph.hpp"
#include "graphforge/graph_io.hpp"

namespace graphforge {

/// Families accepted by build_graph.
const std::vector<std::string>& graph_families();

/// Generates the raw graph for an undirected family (er, ba, ws, fmri).
/// Params are the keys written to graph metadata; see build_graph.
UndirectedGraph build_undirected(std::string_view family, const nlohmann::json& params, std::uint64_t seed,
                                 const Eigen::MatrixXd* fmri_matrix = nullptr);

/// Generates a staged DAG ready for analysis and export.
///
/// Undirected families are reduced to their largest component and oriented by
/// the x ordering; "kept_nodes" is added to the metadata when nodes were
/// dropped. "bottleneck" builds its base family from the same seed and
/// ablates it, so it pairs one-to-one with the base graph.
///
/// Per-family params:
///   er {n, p}  ba {n, m}  ws {n, k, p}
///   rdag {n, f, out_degree (int | "laplace" | "hubs0" | "hubs1"), B, alpha}
///   composite {n, p_init, budget}
///   fmri {n, threshold, source ("synthetic" | "file"), connectome_dim, connectome_seed}
///   bottleneck {base, ...base params}
GraphDocument build_graph(std::string_view family, const nlohmann::json& params, std::uint64_t seed,
                          const Eigen::MatrixXd* fmri_matrix = nullptr);

struct BatchEntry {
  std::string name;
  std::string family;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::filesystem::path output;  // graph file, relative to the batch directory
};

struct BatchManifest {
  std::string preset;
  std::uint64_t root_seed = 0;
  std::vector<BatchEntry> entries;
};

/// Names of the built-in presets, in catalog order.
std::vector<std::string> preset_names();
const nlohmann::ordered_json& preset_catalog();

/// Entry seed for version v of a (family, params) grid point.
std::uint64_t entry_seed(std::uint64_t root_seed, std::string_view family, const nlohmann::json& params, int version);

/// Expands a preset into entries. fmri entries use the synthetic connectome
/// unless fmri_from_file is set.
BatchManifest expand_preset(std::string_view name, std::uint64_t root_seed, bool fmri_from_file = false);
BatchManifest expand_preset(const nlohmann::ordered_json& catalog, std::string_view name, std::uint64_t root_seed,
                            bool fmri_from_file = false);

/// Throws InvalidArgument on duplicate (family, params, seed) or names.
void validate_manifest(const BatchManifest& manifest);

nlohmann::ordered_json manifest_to_json(const BatchManifest& manifest);

/// "graph,family,seed," followed by the feature CSV columns.
std::string feature_record_header();
std::string feature_record_row(std::string_view name, const GraphMeta& meta, const FeatureVector& fv);

struct EntryResult {
  GraphDocument graph;
  FeatureVector features;
  ArchSpec spec;
};

EntryResult process_graph(const GraphDocument& graph, std::int64_t target_params = kResNet56Params);
EntryResult process_entry(const BatchEntry& entry, const Eigen::MatrixXd* fmri_matrix = nullptr,
                          std::int64_t target_params = kResNet56Params);

struct BatchOptions {
  unsigned threads = 0;  // 0: GRAPHFORGE_THREADS, else hardware concurrency
  const Eigen::MatrixXd* fmri_matrix = nullptr;
  std::int64_t target_params = kResNet56Params;
  std::function<void(std::size_t done, std::size_t total, const BatchEntry&, bool ok)> progress;
};

struct BatchFailure {
  std::string name;
  std::string error;
};

struct BatchSummary {
  std::size_t total = 0;
  std::size_t succeeded = 0;
  std::size_t q1d = 0;
  std::vector<BatchFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Worker count from GRAPHFORGE_THREADS, falling back to the hardware.
unsigned default_thread_count();

/// Writes graphs/, features/, specs/ per entry plus manifest.json,
/// summary.csv, failures.csv and features.schema.json under out_dir.
/// Entry failures are recorded and do not stop the batch.
BatchSummary run_batch(const BatchManifest& manifest, const std::filesystem::path& out_dir,
                       const BatchOptions& options = {});

}  // namespace graphforge
