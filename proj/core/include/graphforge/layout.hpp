#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

using DistanceMatrix = std::vector<std::vector<int>>;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Node coordinates in the plane plus the stress they attain.
struct Embedding {
  std::vector<Point> coords;
  double stress = 0.0;

  int size() const { return static_cast<int>(coords.size()); }
};

/// Population covariance of a point cloud and its principal decomposition.
struct PrincipalAxes {
  Point centroid;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  double major = 0.0, minor = 0.0;  // eigenvalues, major >= minor >= 0
  Point major_axis{1.0, 0.0};       // unit eigenvector of `major`
};

PrincipalAxes principal_axes(const std::vector<Point>& coords);

/// Kamada-Kawai stress sum_{u<v} (|x_u - x_v| - d_uv)^2 / d_uv^2.
double layout_stress(const std::vector<Point>& coords, const DistanceMatrix& dist);

struct KamadaKawaiOptions {
  double gradient_tolerance = 1e-6;
  long max_iterations = 0;  // 0 selects 10 * n^2
  int history = 10;         // L-BFGS memory
};

struct KamadaKawaiTrace {
  Embedding embedding;
  std::vector<double> stress_history;  // one entry per accepted iterate, starting with the initial layout
  long iterations = 0;
  double gradient_norm = 0.0;  // max-norm at the returned coordinates
  bool converged = false;
};

/// Stress-minimizing layout from the circular start (node i at angle
/// 2*pi*i/n, single-precision angles and coordinates, centered and scaled to
/// unit extent), optimized by L-BFGS with a strong Wolfe line search. Throws
/// DataError for disconnected input.
Embedding kamada_kawai(const UndirectedGraph& g, const KamadaKawaiOptions& options = {});
KamadaKawaiTrace kamada_kawai_trace(const UndirectedGraph& g, const KamadaKawaiOptions& options = {});

/// Centers on the centroid, rotates the major principal axis onto x, then
/// reflects so node 0 has non-negative coordinates.
Embedding canonicalize(const Embedding& e);

enum class OrderingMethod { x, radial, reversed_radial, bifocal };

std::string_view to_string(OrderingMethod method);
OrderingMethod parse_ordering_method(std::string_view name);

/// A bijection node -> rank.
class Ordering {
 public:
  explicit Ordering(std::vector<int> rank);
  static Ordering from_sequence(const std::vector<NodeId>& sequence);
  static Ordering identity(int n);

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(NodeId v) const { return rank_[v]; }
  const std::vector<int>& ranks() const { return rank_; }
  /// Nodes listed from rank 0 upwards.
  std::vector<NodeId> sequence() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<int> rank_;
};

/// Ties are broken by node index. The bifocal method needs graph distances.
Ordering order_nodes(const Embedding& e, OrderingMethod method);
Ordering order_nodes(const Embedding& e, OrderingMethod method, const DistanceMatrix& dist);

Ordering random_ordering(int n, Rng& rng);

/// Relabels nodes by rank and points every edge from lower to higher rank.
Dag orient_edges(const UndirectedGraph& g, const Ordering& order);

/// Nodes that are not the input and lack an input, or are not the output and
/// lack an output.
int count_orphans(const Dag& dag);

struct OrphanRepair {
  Dag dag;
  int repairs = 0;       // edges added
  int orphan_nodes = 0;  // orphans present before the sweep
};

/// One ascending sweep: node i > 0 without input gets (i-1, i), node i < n-1
/// without output gets (i, i+1).
OrphanRepair repair_orphans(const Dag& dag);
Dag fix_orphans(const Dag& dag);

struct DagifyResult {
  Dag dag;
  Embedding embedding;  // canonicalized
  Ordering ordering;
  int repairs = 0;
  int orphan_nodes = 0;
};

/// kamada_kawai -> canonicalize -> order_nodes -> orient_edges -> fix_orphans.
Dag dagify(const UndirectedGraph& g, OrderingMethod method = OrderingMethod::x);
DagifyResult dagify_detailed(const UndirectedGraph& g, OrderingMethod method = OrderingMethod::x);

/// Largest connected component relabeled in ascending node order (ties go
/// to the component with the smallest member).
UndirectedGraph largest_component(const UndirectedGraph& g);

/// CSV `node,x,y,stress` with a header row.
std::string embedding_csv(const Embedding& e);

}  // namespace graphforge
