#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphforge/graph.hpp"
#include "graphforge/layout.hpp"

namespace graphforge {

using BigInt = boost::multiprecision::cpp_int;

/// Statistics of the input -> output path-length distribution.
struct PathStats {
  BigInt count = 0;
  std::vector<BigInt> length_counts;  // index = length in edges
  double log_count = 0.0;             // natural log
  double mean_len = 0.0;
  double std_len = 0.0;  // population standard deviation
  int min_len = 0;
  int max_len = 0;
  double span = 0.0;  // max_len / min_len
};

/// Exact path-length polynomial DP over index order from node 0 to n-1.
/// Throws InvalidArgument on backward edges and DataError when no path exists.
PathStats count_paths(const Dag& dag);

/// Number of input -> output paths only (no length distribution).
BigInt count_paths_total(const Dag& dag);

/// Bridges of an undirected graph (iterative Tarjan low-link), sorted.
std::vector<Edge> bridges(const UndirectedGraph& g);

/// Bridges of the underlying undirected graph.
int n_bottlenecks(const Dag& dag);

/// 2 * (variance_ratio - 0.5), variance_ratio being the major-axis share of
/// the coordinate variance. Throws DataError if all points coincide.
double pca_elongation(const Embedding& e);

inline constexpr double kQ1dElongationCutoff = 0.25;

struct Q1dVerdict {
  double pca_elongation = 0.0;
  int n_bottlenecks = 0;
  bool is_q1d = false;
};

Q1dVerdict q1d(const Dag& dag, const Embedding& e);

/// Longest input -> output path in edges.
int depth(const Dag& dag);

/// max over cut points k in 1..n-1 of |{u < k : u has a successor >= k}|.
int width(const Dag& dag);

inline constexpr std::size_t kNumFeatures = 54;

struct FeatureInfo {
  std::string_view name;
  double power;  // exponent applied after min-max scaling (1, 1/2 or 1/4)
};

/// The 54 features in their fixed column order.
const std::array<FeatureInfo, kNumFeatures>& feature_schema();

/// Index of a named feature; throws InvalidArgument when unknown.
std::size_t feature_index(std::string_view name);

/// Names of the trailing characteristic columns.
inline constexpr std::array<std::string_view, 5> kCharacteristicColumns = {
    "pca_elongation", "n_bottlenecks", "depth", "width", "is_q1d"};

/// Raw feature values plus the elongation/bottleneck characteristics.
/// Undefined features hold NaN and a reason in `undefined`.
struct FeatureVector {
  std::array<double, kNumFeatures> values{};
  std::map<std::string, std::string> undefined;
  double pca_elongation = 0.0;
  int n_bottlenecks = 0;
  int depth = 0;
  int width = 0;
  bool is_q1d = false;

  double operator[](std::string_view name) const { return values[feature_index(name)]; }
};

/// Directed measures use the Dag, undirected-only measures (clustering,
/// transitivity, efficiencies, shortest paths, radius, diameter, vitality,
/// Wiener index, current-flow, spectral and structural-hole measures) use its
/// underlying graph. Requires a valid Dag with stages.
FeatureVector compute_features(const Dag& dag, const Embedding& e);

/// Kamada-Kawai embedding of the underlying graph followed by compute_features.
FeatureVector analyze_dag(const Dag& dag);

using ScaledRow = std::array<double, kNumFeatures>;

/// Column-wise min-max to [0, 1] followed by the per-feature power. NaN
/// entries are skipped when finding the range and stay NaN; zero-range
/// columns map to 0.
std::vector<ScaledRow> scale_features(const std::vector<FeatureVector>& dataset);

/// CSV header: `graph,` + 54 feature names + characteristic columns.
std::string feature_csv_header();
/// One CSV row (no trailing newline). NaN is written as `nan`.
std::string feature_csv_row(std::string_view graph_name, const FeatureVector& fv);

/// JSON listing column names and power transforms.
std::string feature_schema_json();

}  // namespace graphforge
