// graphforge: generate, orient, analyze, ablate and export wiring graphs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "graphforge/arch.hpp"
#include "graphforge/batch.hpp"
#include "graphforge/error.hpp"
#include "graphforge/features.hpp"
#include "graphforge/generators.hpp"
#include "graphforge/graph_io.hpp"
#include "graphforge/layout.hpp"

namespace gf = graphforge;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kPartial = 3 };

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    gf::write_file_atomic(path, content);
  }
}

struct GenOptions {
  std::string family;
  int nodes = 0;
  std::uint64_t seed = 0;
  std::optional<double> p;
  std::optional<int> m;
  std::optional<int> k;
  std::string f = "constant";
  std::string out_degree = "2";
  int B = 5;
  double alpha = 0.5;
  std::optional<double> p_init;
  int budget = gf::kDefaultCompositeBudget;
  std::optional<double> threshold;
  std::string fmri_matrix;
  std::optional<int> connectome_dim;
  std::uint64_t connectome_seed = 0;
  bool raw = false;
  std::string out;
};

template <typename T>
T require(const std::optional<T>& value, const char* flag, const std::string& family) {
  if (!value) throw gf::InvalidArgument(std::string(flag) + " is required for --family " + family);
  return *value;
}

// Builds the same parameter object that batch presets produce for the entry.
json gen_params(const GenOptions& o) {
  json params;
  params["n"] = o.nodes;
  const std::string& fam = o.family;
  if (fam == "er") {
    params["p"] = require(o.p, "--p", fam);
  } else if (fam == "ba") {
    params["m"] = require(o.m, "--m", fam);
  } else if (fam == "ws") {
    params["k"] = require(o.k, "--k", fam);
    params["p"] = require(o.p, "--p", fam);
  } else if (fam == "rdag") {
    params["f"] = o.f;
    const bool numeric = !o.out_degree.empty() && o.out_degree.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      params["out_degree"] = std::stoi(o.out_degree);
    } else {
      params["out_degree"] = o.out_degree;
    }
    params["B"] = o.B;
    params["alpha"] = o.alpha;
  } else if (fam == "composite") {
    params["p_init"] = require(o.p_init, "--p-init", fam);
    params["budget"] = o.budget;
  } else if (fam == "fmri") {
    params["threshold"] = require(o.threshold, "--threshold", fam);
    if (o.fmri_matrix.empty()) {
      params["source"] = "synthetic";
      params["connectome_dim"] = o.connectome_dim.value_or(o.nodes <= 30 ? 50 : 100);
      params["connectome_seed"] = o.connectome_seed;
    } else {
      params["source"] = "file";
    }
  } else {
    throw gf::InvalidArgument("unknown family '" + fam + "'");
  }
  return params;
}

int run_gen(const GenOptions& o) {
  const json params = gen_params(o);
  std::optional<Eigen::MatrixXd> matrix;
  if (!o.fmri_matrix.empty()) matrix = gf::read_matrix_csv(o.fmri_matrix);
  const Eigen::MatrixXd* mp = matrix ? &*matrix : nullptr;
  gf::GraphDocument doc;
  if (o.raw) {
    doc = gf::GraphDocument::from_undirected(gf::build_undirected(o.family, params, o.seed, mp),
                                             gf::GraphMeta{o.family, params, o.seed});
  } else {
    doc = gf::build_graph(o.family, params, o.seed, mp);
  }
  emit(o.out, gf::write_graph_json(doc));
  return kOk;
}

int run_dagify(const std::string& graph, const std::string& ordering, const std::string& out,
               const std::string& embedding_out) {
  gf::GraphDocument doc = gf::read_graph_file(graph);
  const auto method = gf::parse_ordering_method(ordering);
  const gf::UndirectedGraph raw = doc.to_undirected();
  const gf::UndirectedGraph kept = gf::largest_component(raw);
  if (kept.size() != raw.size()) doc.meta.params["kept_nodes"] = kept.size();
  if (method != gf::OrderingMethod::x) doc.meta.params["ordering"] = std::string(gf::to_string(method));
  const gf::DagifyResult result = gf::dagify_detailed(kept, method);
  std::cerr << "orphan nodes: " << result.orphan_nodes << ", repair edges: " << result.repairs << "\n";
  if (!embedding_out.empty()) gf::write_file_atomic(embedding_out, gf::embedding_csv(result.embedding));
  emit(out, gf::write_graph_json(gf::GraphDocument::from_dag(gf::assign_stages(result.dag), doc.meta)));
  return kOk;
}

gf::Dag staged_dag(const gf::GraphDocument& doc) {
  gf::Dag dag = doc.to_dag();
  return dag.has_stages() ? dag : gf::assign_stages(dag);
}

int run_analyze(const std::string& graph, const std::string& features_out) {
  const gf::GraphDocument doc = gf::read_graph_file(graph);
  const gf::FeatureVector fv = gf::analyze_dag(staged_dag(doc));
  const std::string name = fs::path(graph).stem().string();
  emit(features_out, gf::feature_record_header() + "\n" + gf::feature_record_row(name, doc.meta, fv) + "\n");
  return kOk;
}

int run_ablate(const std::string& graph, const std::string& out) {
  const gf::GraphDocument doc = gf::read_graph_file(graph);
  gf::GraphMeta meta = doc.meta;
  meta.family = "bottleneck";
  meta.params["base"] = doc.meta.family;
  emit(out, gf::write_graph_json(gf::GraphDocument::from_dag(gf::bottleneck_ablation(staged_dag(doc)), meta)));
  return kOk;
}

int run_export(const std::string& graph, std::int64_t target, int num_classes, int input_channels,
               const std::string& out) {
  const gf::GraphDocument doc = gf::read_graph_file(graph);
  const gf::Dag dag = staged_dag(doc);
  const gf::ChannelPlan plan = gf::solve_channels(dag, target, num_classes, input_channels);
  emit(out, gf::write_archspec_json(gf::export_archspec(dag, plan, doc.meta)));
  return kOk;
}

int run_batch(const std::string& preset, const std::string& out_dir, std::uint64_t root_seed, unsigned threads,
              const std::string& fmri_matrix, bool quiet) {
  std::optional<Eigen::MatrixXd> matrix;
  if (!fmri_matrix.empty()) matrix = gf::read_matrix_csv(fmri_matrix);
  const gf::BatchManifest manifest = gf::expand_preset(preset, root_seed, matrix.has_value());
  gf::BatchOptions options;
  options.threads = threads;
  options.fmri_matrix = matrix ? &*matrix : nullptr;
  if (!quiet) {
    options.progress = [](std::size_t done, std::size_t total, const gf::BatchEntry& entry, bool ok) {
      std::cerr << "[" << done << "/" << total << "] " << entry.name << (ok ? "" : " FAILED") << "\n";
    };
  }
  const gf::BatchSummary summary = gf::run_batch(manifest, out_dir, options);
  std::cerr << summary.succeeded << "/" << summary.total << " graphs built, " << summary.q1d << " Q1D, "
            << summary.failures.size() << " failed\n";
  for (const auto& failure : summary.failures) std::cerr << "  " << failure.name << ": " << failure.error << "\n";
  return summary.ok() ? kOk : kPartial;
}

int run_presets() {
  for (const auto& name : gf::preset_names()) {
    const auto manifest = gf::expand_preset(name, 0);
    std::cout << name << "\t" << manifest.entries.size() << "\t"
              << gf::preset_catalog().at(name).value("description", "") << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphforge: random wiring graphs for residual networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "graphforge 0.3.0");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph and orient it into a staged DAG");
  gen_cmd->add_option("--family", gen.family, "er | ba | ws | rdag | composite | fmri")
      ->required()
      ->check(CLI::IsMember({"er", "ba", "ws", "rdag", "composite", "fmri"}));
  gen_cmd->add_option("--nodes,-n", gen.nodes, "Number of nodes")->required()->check(CLI::Range(2, 1 << 20));
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--p", gen.p, "Edge or rewiring probability (er, ws)");
  gen_cmd->add_option("--m", gen.m, "Attachment count (ba)");
  gen_cmd->add_option("--k", gen.k, "Ring neighbours (ws)");
  gen_cmd->add_option("--f", gen.f, "Locality function: exp<C>, power, constant (rdag)");
  gen_cmd->add_option("--out-degree", gen.out_degree, "Integer, laplace, hubs0 or hubs1 (rdag)");
  gen_cmd->add_option("--B", gen.B, "Locality block size (rdag)");
  gen_cmd->add_option("--alpha", gen.alpha, "Target-degree exponent (rdag)");
  gen_cmd->add_option("--p-init", gen.p_init, "Initial er probability (composite)");
  gen_cmd->add_option("--budget", gen.budget, "Hill-climb moves (composite)");
  gen_cmd->add_option("--threshold", gen.threshold, "Connectivity threshold (fmri)");
  gen_cmd->add_option("--fmri-matrix", gen.fmri_matrix, "Partial-correlation matrix CSV (fmri)")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--connectome-dim", gen.connectome_dim, "Synthetic connectome size when no matrix is given");
  gen_cmd->add_option("--connectome-seed", gen.connectome_seed, "Synthetic connectome seed");
  gen_cmd->add_flag("--raw", gen.raw, "Write the undirected graph before orientation (er, ba, ws, fmri)");
  gen_cmd->add_option("--out,-o", gen.out, "Output graph file (default stdout)");

  std::string graph, out, ordering = "x", embedding_out, features_out;
  auto* dagify_cmd = app.add_subcommand("dagify", "Orient an undirected graph by a layout ordering");
  dagify_cmd->add_option("--graph", graph, "Undirected graph file")->required()->check(CLI::ExistingFile);
  dagify_cmd->add_option("--ordering", ordering, "x | radial | reversed_radial | bifocal");
  dagify_cmd->add_option("--embedding-out", embedding_out, "Write the canonical layout as CSV");
  dagify_cmd->add_option("--out,-o", out, "Output DAG file (default stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute the feature row of a DAG");
  analyze_cmd->add_option("--graph", graph, "DAG file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--features-out", features_out, "Output CSV (default stdout)");

  auto* ablate_cmd = app.add_subcommand("ablate", "Replace stage-crossing edges by single bottleneck edges");
  ablate_cmd->add_option("--graph", graph, "DAG file")->required()->check(CLI::ExistingFile);
  ablate_cmd->add_option("--out,-o", out, "Output DAG file (default stdout)");

  std::int64_t target = gf::kResNet56Params;
  int num_classes = 10, input_channels = 3;
  auto* export_cmd = app.add_subcommand("export", "Solve channels and write an architecture spec");
  export_cmd->add_option("--graph", graph, "DAG file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--target-params", target, "Parameter budget")->check(CLI::PositiveNumber);
  export_cmd->add_option("--num-classes", num_classes, "Classifier outputs")->check(CLI::PositiveNumber);
  export_cmd->add_option("--input-channels", input_channels, "Image channels")->check(CLI::PositiveNumber);
  export_cmd->add_option("--out,-o", out, "Output spec file (default stdout)");

  std::string preset, out_dir, fmri_matrix;
  std::uint64_t root_seed = 0;
  unsigned threads = 0;
  bool quiet = false;
  auto* batch_cmd = app.add_subcommand("batch", "Build, analyze and export every graph of a preset");
  batch_cmd->add_option("--preset", preset, "Preset name (see `presets`)")->required();
  batch_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  batch_cmd->add_option("--root-seed", root_seed, "Root seed for all entries");
  batch_cmd->add_option("--threads", threads, "Worker count (default GRAPHFORGE_THREADS or all cores)");
  batch_cmd->add_option("--fmri-matrix", fmri_matrix, "Partial-correlation matrix CSV for fmri entries")
      ->check(CLI::ExistingFile);
  batch_cmd->add_flag("--quiet,-q", quiet, "No per-entry progress");

  auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*dagify_cmd) return run_dagify(graph, ordering, out, embedding_out);
    if (*analyze_cmd) return run_analyze(graph, features_out);
    if (*ablate_cmd) return run_ablate(graph, out);
    if (*export_cmd) return run_export(graph, target, num_classes, input_channels, out);
    if (*batch_cmd) return run_batch(preset, out_dir, root_seed, threads, fmri_matrix, quiet);
    if (*presets_cmd) return run_presets();
  } catch (const gf::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
