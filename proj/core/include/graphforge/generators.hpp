#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "graphforge/graph.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

/// Erdos-Renyi G(n, p).
UndirectedGraph gen_er(int n, double p, const RngSpec& rng);

/// Barabasi-Albert preferential attachment. Nodes 0..m-1 are the seed set,
/// node m joins all of them (a star on m+1 nodes), every later node attaches
/// m distinct targets with probability proportional to current degree.
/// Always m * (n - m) edges.
UndirectedGraph gen_ba(int n, int m, const RngSpec& rng);

/// Watts-Strogatz ring lattice (k nearest neighbours, k even) with each
/// lattice edge rewired with probability p. Edge count stays n * k / 2.
UndirectedGraph gen_ws(int n, int k, double p, const RngSpec& rng);

/// The locality weighting f applied to floor((j - i) / B).
struct LocalityFunction {
  enum class Kind { exponential, power, constant };

  Kind kind = Kind::constant;
  double rate = 0.0;  // C in exp(-C x)

  static LocalityFunction exponential(double rate) { return {Kind::exponential, rate}; }
  static LocalityFunction power() { return {Kind::power, 0.0}; }
  static LocalityFunction constant() { return {Kind::constant, 0.0}; }

  /// exp(-C x), 1/x (taken as 1 at x = 0), or 1.
  double operator()(int x) const;

  /// "exp2", "exp3", "exp0.5", "power", "constant".
  std::string name() const;
  static LocalityFunction parse(std::string_view name);

  friend bool operator==(const LocalityFunction&, const LocalityFunction&) = default;
};

/// Per-node outgoing-edge targets n_i^out.
struct OutDegreeSpec {
  enum class Kind { constant, laplace, hubs };

  Kind kind = Kind::constant;
  int value = 2;                 // constant target, or the hub background
  double location = 3.0;         // Laplace location
  double scale = 3.0;            // Laplace scale
  std::vector<NodeId> hubs;      // explicit hub nodes
  int hub_degree = 0;            // target of each hub

  static OutDegreeSpec constant(int value) { return {Kind::constant, value, 3.0, 3.0, {}, 0}; }
  static OutDegreeSpec laplace(double location = 3.0, double scale = 3.0) {
    return {Kind::laplace, 0, location, scale, {}, 0};
  }
  static OutDegreeSpec with_hubs(std::vector<NodeId> hubs, int hub_degree, int background = 2) {
    return {Kind::hubs, background, 3.0, 3.0, std::move(hubs), hub_degree};
  }
  /// Two-hub presets: variant 0 puts hubs at {0, n/3}, variant 1 at {n/6, n/2};
  /// each hub targets n/3 outputs against a background of 2.
  static OutDegreeSpec hub_preset(int n, int variant);

  /// Nominal targets for all n nodes (uncapped, each >= 1). Laplace draws are
  /// rounded and clamped to >= 1.
  std::vector<int> resolve(int n, Rng& rng) const;
};

struct RdagParams {
  int n = 30;
  OutDegreeSpec out_degree = OutDegreeSpec::constant(2);
  LocalityFunction f = LocalityFunction::constant();
  int B = 5;
  double alpha = 0.5;
  /// When true the forced edge i -> i+1 counts toward node i's quota.
  bool forced_edge_counts = true;
};

/// w_ij = (n_j^out)^alpha * f(floor((j - i) / B)).
double rdag_weight(NodeId i, NodeId j, int target_out_j, const RdagParams& params);

/// Random DAG built forward over nodes 0..n-1. Node i first receives the
/// forced edge i -> i+1 when i+1 has no input yet, then samples distinct
/// forward targets with probability proportional to w_ij until its
/// effective quota min(n_i^out, n-1-i) is met. No stages are assigned.
Dag gen_rdag(const RdagParams& params, const RngSpec& rng);

/// sqrt(ln(#input->output paths) / n) - 2 * global_reaching_centrality
/// - average clustering of the underlying graph.
double composite_objective(const Dag& dag);

struct CompositeResult {
  Dag dag;
  double objective = 0.0;
  std::vector<double> objective_history;  // initial value then every accepted move
  int accepted_moves = 0;
};

inline constexpr int kDefaultCompositeBudget = 2000;

/// Greedy hill climb on composite_objective starting from dagify(er(n, p_init)).
/// Each step toggles one uniformly chosen forward pair, repairs orphans, and
/// keeps the result only if the objective strictly increases.
CompositeResult gen_composite_detailed(int n, double p_init, int budget, const RngSpec& rng);
Dag gen_composite(int n, double p_init, int budget, const RngSpec& rng);

struct FmriParams {
  Eigen::MatrixXd matrix;  // z-scored partial correlations
  double threshold = 2.0;
  int target_n = 30;
};

/// Thresholds |matrix| >= t, keeps the largest connected component, and when
/// it is larger than target_n samples target_n nodes by an induced-subgraph
/// random walk (uniform neighbour steps, restart at a random visited node
/// after 10 * target_n steps without a new node). Nodes keep their relative
/// order. Throws DataError when the component has fewer than
/// min(3, target_n) nodes.
UndirectedGraph gen_fmri(const FmriParams& params, const RngSpec& rng);

/// Header-less CSV of reals, row-major, square.
Eigen::MatrixXd parse_matrix_csv(std::string_view text);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// Symmetric, zero-diagonal matrix of spatially structured z-scores used when
/// no connectome file is supplied. Deterministic in (dim, seed).
Eigen::MatrixXd synthetic_connectome(int dim, std::uint64_t seed);

}  // namespace graphforge
