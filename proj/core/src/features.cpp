#include "graphforge/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphforge/error.hpp"
#include "graphforge/measures.hpp"

namespace graphforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_forward(const Dag& dag) {
  for (const Edge& e : dag.edges()) {
    if (e.src > e.dst) throw InvalidArgument("expected an index-ordered DAG (forward edges only)");
  }
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double to_double(const BigInt& value) { return value.convert_to<double>(); }

}  // namespace

PathStats count_paths(const Dag& dag) {
  require_forward(dag);
  const int n = dag.size();
  const auto succ = dag.successors();
  std::vector<std::vector<BigInt>> poly(static_cast<std::size_t>(n));
  poly[0] = {BigInt(1)};
  for (NodeId v = 0; v < n; ++v) {
    if (poly[v].empty()) continue;
    for (NodeId w : succ[v]) {
      auto& target = poly[w];
      if (target.size() < poly[v].size() + 1) target.resize(poly[v].size() + 1);
      for (std::size_t k = 0; k < poly[v].size(); ++k) {
        if (!poly[v][k].is_zero()) target[k + 1] += poly[v][k];
      }
    }
  }
  PathStats stats;
  stats.length_counts = std::move(poly[n - 1]);
  for (const BigInt& c : stats.length_counts) stats.count += c;
  if (stats.count.is_zero()) throw DataError("no path from the input node to the output node");

  const double total = to_double(stats.count);
  stats.log_count = std::log(total);
  stats.min_len = -1;
  double mean = 0.0;
  for (std::size_t k = 0; k < stats.length_counts.size(); ++k) {
    if (stats.length_counts[k].is_zero()) continue;
    if (stats.min_len < 0) stats.min_len = static_cast<int>(k);
    stats.max_len = static_cast<int>(k);
    mean += static_cast<double>(k) * (to_double(stats.length_counts[k]) / total);
  }
  double var = 0.0;
  for (std::size_t k = 0; k < stats.length_counts.size(); ++k) {
    if (stats.length_counts[k].is_zero()) continue;
    const double dk = static_cast<double>(k) - mean;
    var += dk * dk * (to_double(stats.length_counts[k]) / total);
  }
  stats.mean_len = mean;
  stats.std_len = std::sqrt(var);
  stats.span = static_cast<double>(stats.max_len) / static_cast<double>(stats.min_len);
  return stats;
}

BigInt count_paths_total(const Dag& dag) {
  require_forward(dag);
  const int n = dag.size();
  const auto succ = dag.successors();
  std::vector<BigInt> ways(static_cast<std::size_t>(n));
  ways[0] = 1;
  for (NodeId v = 0; v < n; ++v) {
    if (ways[v].is_zero()) continue;
    for (NodeId w : succ[v]) ways[w] += ways[v];
  }
  return ways[n - 1];
}

std::vector<Edge> bridges(const UndirectedGraph& g) {
  const int n = g.size();
  const auto adj = g.adjacency();
  std::vector<int> order(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<Edge> found;
  int clock = 0;
  struct Frame {
    NodeId node;
    NodeId parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    order[root] = low[root] = clock++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next < adj[top.node].size()) {
        const NodeId w = adj[top.node][top.next++];
        if (w == top.parent) continue;  // simple graph: exactly one parent edge
        if (order[w] < 0) {
          order[w] = low[w] = clock++;
          stack.push_back({w, top.node, 0});
        } else {
          low[top.node] = std::min(low[top.node], order[w]);
        }
      } else {
        const NodeId v = top.node;
        const NodeId parent = top.parent;
        stack.pop_back();
        if (parent >= 0) {
          low[parent] = std::min(low[parent], low[v]);
          if (low[v] > order[parent]) found.push_back({std::min(parent, v), std::max(parent, v)});
        }
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

int n_bottlenecks(const Dag& dag) { return static_cast<int>(bridges(underlying_undirected(dag)).size()); }

double pca_elongation(const Embedding& e) {
  const PrincipalAxes axes = principal_axes(e.coords);
  const double total = axes.major + axes.minor;
  if (!(total > 0.0)) throw DataError("elongation is undefined for coincident points");
  const double ratio = axes.major / total;
  return std::clamp(2.0 * (ratio - 0.5), 0.0, 1.0);
}

Q1dVerdict q1d(const Dag& dag, const Embedding& e) {
  Q1dVerdict verdict;
  verdict.pca_elongation = pca_elongation(e);
  verdict.n_bottlenecks = n_bottlenecks(dag);
  verdict.is_q1d = verdict.pca_elongation > kQ1dElongationCutoff && verdict.n_bottlenecks == 0;
  return verdict;
}

int depth(const Dag& dag) {
  require_forward(dag);
  const int n = dag.size();
  const auto succ = dag.successors();
  std::vector<int> longest(static_cast<std::size_t>(n), -1);
  longest[0] = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (longest[v] < 0) continue;
    for (NodeId w : succ[v]) longest[w] = std::max(longest[w], longest[v] + 1);
  }
  if (longest[n - 1] < 0) throw DataError("no path from the input node to the output node");
  return longest[n - 1];
}

int width(const Dag& dag) {
  require_forward(dag);
  const int n = dag.size();
  // reach[u] = furthest successor of u; u is live at cut k iff u < k <= reach[u].
  std::vector<int> reach(static_cast<std::size_t>(n), -1);
  for (const Edge& e : dag.edges()) reach[e.src] = std::max(reach[e.src], e.dst);
  int best = 0;
  for (int k = 1; k < n; ++k) {
    int live = 0;
    for (int u = 0; u < k; ++u) live += reach[u] >= k;
    best = std::max(best, live);
  }
  return best;
}

const std::array<FeatureInfo, kNumFeatures>& feature_schema() {
  static const std::array<FeatureInfo, kNumFeatures> schema = {{
      {"degree_assortativity", 1.0},
      {"max_degree", 0.5},
      {"mean_in_degree", 0.25},
      {"mean_out_degree", 0.5},
      {"min_degree", 0.25},
      {"outer_edges", 1.0},
      {"num_nodes", 1.0},
      {"num_edges", 0.5},
      {"reduce_frac", 1.0},
      {"edges_per_node", 0.5},
      {"density", 0.5},
      {"transitivity", 0.5},
      {"average_clustering", 0.5},
      {"average_node_connectivity", 0.25},
      {"average_shortest_path_length", 0.25},
      {"s_metric_norm", 0.5},
      {"global_reaching_centrality", 0.5},
      {"edge_connectivity", 0.25},
      {"modularity_trace", 0.5},
      {"intrastage", 1.0},
      {"interstage", 1.0},
      {"hops_per_node", 0.25},
      {"mean_degree", 0.25},
      {"std_degree", 0.5},
      {"span_degree", 0.25},
      {"triad_021D", 0.5},
      {"triad_021U", 0.5},
      {"triad_021C", 0.5},
      {"triad_030T", 0.25},
      {"log_paths", 0.5},
      {"mean_path", 0.5},
      {"std_paths", 1.0},
      {"min_path", 0.25},
      {"max_path", 0.5},
      {"span_path", 0.25},
      {"closeness_centrality", 0.5},
      {"closeness_centrality_mean", 0.5},
      {"betweenness_centrality_mean", 0.25},
      {"current_flow_closeness_centrality_mean", 1.0},
      {"current_flow_betweenness_centrality_mean", 0.25},
      {"second_order_centrality_mean", 0.5},
      {"communicability_betweenness_centrality_mean", 0.5},
      {"communicability_start_mean", 0.5},
      {"communicability_end_mean", 0.5},
      {"radius", 0.5},
      {"diameter", 0.25},
      {"local_efficiency", 0.5},
      {"global_efficiency", 1.0},
      {"efficiency", 0.5},
      {"page_rank", 1.0},
      {"constraint_mean", 0.5},
      {"effective_size_mean", 0.5},
      {"closeness_vitality_mean", 1.0},
      {"wiener_index", 0.5},
  }};
  return schema;
}

std::size_t feature_index(std::string_view name) {
  const auto& schema = feature_schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  throw InvalidArgument("unknown feature '" + std::string(name) + "'");
}

FeatureVector compute_features(const Dag& dag, const Embedding& e) {
  require_forward(dag);
  if (!dag.has_stages()) throw InvalidArgument("features need a DAG with stages assigned");
  if (!validate_dag(dag).ok()) throw InvalidArgument("features need a valid DAG");
  if (e.size() != dag.size()) throw InvalidArgument("embedding does not match the DAG");

  const int n = dag.size();
  const double nd = n;
  const double m = static_cast<double>(dag.num_edges());
  const UndirectedGraph und = underlying_undirected(dag);
  const Adjacency adj = und.adjacency();
  const Adjacency succ = dag.successors();
  const Adjacency pred = dag.predecessors();
  const auto& stages = dag.stages();

  FeatureVector fv;
  fv.values.fill(kNaN);
  auto set = [&](std::string_view name, double value) { fv.values[feature_index(name)] = value; };
  auto mark_undefined = [&](std::string_view name, std::string reason) {
    fv.values[feature_index(name)] = kNaN;
    fv.undefined[std::string(name)] = std::move(reason);
  };

  const double assortativity = measures::degree_assortativity(dag);
  if (std::isnan(assortativity)) {
    mark_undefined("degree_assortativity", "zero variance in source out-degree or target in-degree");
  } else {
    set("degree_assortativity", assortativity);
  }

  const std::vector<int> deg = und.degrees();
  const auto [min_deg, max_deg] = std::minmax_element(deg.begin(), deg.end());
  double deg_mean = 0.0;
  for (int d : deg) deg_mean += d;
  deg_mean /= nd;
  double deg_var = 0.0;
  for (int d : deg) deg_var += (d - deg_mean) * (d - deg_mean);
  deg_var /= nd;
  set("max_degree", *max_deg);
  set("mean_in_degree", m / nd);
  set("mean_out_degree", m / nd);
  set("min_degree", *min_deg);
  set("mean_degree", deg_mean);
  set("std_degree", std::sqrt(deg_var));
  if (*min_deg > 0) {
    set("span_degree", static_cast<double>(*max_deg) / *min_deg);
  } else {
    mark_undefined("span_degree", "isolated node");
  }

  int intra = 0, one_hop = 0, multi_hop = 0;
  for (const Edge& edge : dag.edges()) {
    const int delta = stages[edge.dst] - stages[edge.src];
    if (delta == 0) {
      ++intra;
    } else if (delta == 1) {
      ++one_hop;
    } else {
      ++multi_hop;
    }
  }
  set("outer_edges", (one_hop + multi_hop) / m);
  set("num_nodes", nd);
  set("num_edges", m);
  set("reduce_frac", (one_hop + multi_hop) / nd);
  set("edges_per_node", m / nd);
  set("density", m / (nd * (nd - 1.0)));
  set("intrastage", intra / m);
  set("interstage", one_hop / m);
  set("hops_per_node", multi_hop / nd);

  set("transitivity", measures::transitivity(adj));
  set("average_clustering", measures::average_clustering(adj));
  set("average_node_connectivity", measures::average_node_connectivity(succ));
  set("average_shortest_path_length", measures::average_shortest_path_length(adj));

  double cube_sum = 0.0;
  for (int d : deg) cube_sum += static_cast<double>(d) * d * d;
  set("s_metric_norm", measures::s_metric(und) / (cube_sum / 2.0));

  set("global_reaching_centrality", measures::global_reaching_centrality(succ));
  set("edge_connectivity", measures::local_edge_connectivity(succ, 0, n - 1));
  const auto spectrum = measures::modularity_spectrum(und);
  set("modularity_trace", std::accumulate(spectrum.begin(), spectrum.end(), 0.0));

  const auto census = measures::triadic_census(dag);
  set("triad_021D", static_cast<double>(census.t021D));
  set("triad_021U", static_cast<double>(census.t021U));
  set("triad_021C", static_cast<double>(census.t021C));
  set("triad_030T", static_cast<double>(census.t030T));

  const PathStats paths = count_paths(dag);
  set("log_paths", paths.log_count);
  set("mean_path", paths.mean_len);
  set("std_paths", paths.std_len);
  set("min_path", paths.min_len);
  set("max_path", paths.max_len);
  set("span_path", paths.span);

  const auto directed_closeness = measures::closeness(pred);
  set("closeness_centrality", directed_closeness[n - 1]);
  set("closeness_centrality_mean", mean_of(directed_closeness));
  set("betweenness_centrality_mean", mean_of(measures::betweenness(succ, true)));
  set("current_flow_closeness_centrality_mean", mean_of(measures::current_flow_closeness(und)));
  set("current_flow_betweenness_centrality_mean", mean_of(measures::current_flow_betweenness(und)));
  set("second_order_centrality_mean", mean_of(measures::second_order_centrality(und)));
  set("communicability_betweenness_centrality_mean", mean_of(measures::communicability_betweenness(und)));
  const auto comm = measures::communicability(und);
  set("communicability_start_mean", mean_of(comm[0]));
  set("communicability_end_mean", mean_of(comm[n - 1]));

  const auto ecc = measures::eccentricities(adj);
  set("radius", *std::min_element(ecc.begin(), ecc.end()));
  set("diameter", *std::max_element(ecc.begin(), ecc.end()));
  set("local_efficiency", measures::local_efficiency(adj));
  set("global_efficiency", measures::global_efficiency(adj));
  const auto dist = all_pairs_distances(adj);
  set("efficiency", 1.0 / dist[0][n - 1]);
  set("page_rank", measures::pagerank(succ)[n - 1]);
  set("constraint_mean", mean_of(measures::constraint(adj)));
  set("effective_size_mean", mean_of(measures::effective_size(adj)));
  set("closeness_vitality_mean", mean_of(measures::closeness_vitality(adj)));
  // Normalized by the Wiener index of the path on n nodes, the largest over
  // connected graphs of that order.
  set("wiener_index", measures::wiener_index(adj) / (nd * (nd * nd - 1.0) / 6.0));

  const Q1dVerdict verdict = q1d(dag, e);
  fv.pca_elongation = verdict.pca_elongation;
  fv.n_bottlenecks = verdict.n_bottlenecks;
  fv.is_q1d = verdict.is_q1d;
  fv.depth = paths.max_len;
  fv.width = width(dag);
  return fv;
}

FeatureVector analyze_dag(const Dag& dag) {
  return compute_features(dag, canonicalize(kamada_kawai(underlying_undirected(dag))));
}

std::vector<ScaledRow> scale_features(const std::vector<FeatureVector>& dataset) {
  if (dataset.size() < 2) throw InvalidArgument("scaling needs at least two feature vectors");
  const auto& schema = feature_schema();
  std::vector<ScaledRow> scaled(dataset.size());
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : dataset) {
      const double v = row.values[f];
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double range = hi - lo;
    for (std::size_t r = 0; r < dataset.size(); ++r) {
      const double v = dataset[r].values[f];
      double out;
      if (std::isnan(v)) {
        out = kNaN;
      } else if (!(range > 0.0)) {
        out = 0.0;
      } else {
        out = std::clamp((v - lo) / range, 0.0, 1.0);
        if (schema[f].power != 1.0) out = std::pow(out, schema[f].power);
      }
      scaled[r][f] = out;
    }
  }
  return scaled;
}

namespace {

void write_number(std::ostringstream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
  } else {
    out << v;
  }
}

}  // namespace

std::string feature_csv_header() {
  std::string header = "graph";
  for (const auto& info : feature_schema()) {
    header += ',';
    header += info.name;
  }
  for (auto name : kCharacteristicColumns) {
    header += ',';
    header += name;
  }
  return header;
}

std::string feature_csv_row(std::string_view graph_name, const FeatureVector& fv) {
  std::ostringstream out;
  out.precision(17);
  out << graph_name;
  for (double v : fv.values) {
    out << ',';
    write_number(out, v);
  }
  out << ',';
  write_number(out, fv.pca_elongation);
  out << ',' << fv.n_bottlenecks << ',' << fv.depth << ',' << fv.width << ',' << (fv.is_q1d ? 1 : 0);
  return out.str();
}

std::string feature_schema_json() {
  nlohmann::ordered_json j;
  auto& columns = j["columns"] = nlohmann::ordered_json::array();
  for (const auto& info : feature_schema()) {
    columns.push_back({{"name", info.name}, {"power", info.power}, {"scaled", true}});
  }
  for (auto name : kCharacteristicColumns) {
    columns.push_back({{"name", name}, {"power", 1.0}, {"scaled", false}});
  }
  j["log_base"] = "e";
  j["missing"] = "nan";
  return j.dump(2) + "\n";
}

}  // namespace graphforge
