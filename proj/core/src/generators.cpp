#include "graphforge/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "graphforge/error.hpp"
#include "graphforge/features.hpp"
#include "graphforge/graph_io.hpp"
#include "graphforge/layout.hpp"
#include "graphforge/measures.hpp"

namespace graphforge {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
}

void require_nodes(int n, int minimum) {
  if (n < minimum) throw InvalidArgument("need at least " + std::to_string(minimum) + " nodes");
}

}  // namespace

UndirectedGraph gen_er(int n, double p, const RngSpec& spec) {
  require_nodes(n, 2);
  require_probability(p, "edge probability");
  Rng rng(spec);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph gen_ba(int n, int m, const RngSpec& spec) {
  if (m < 1 || m >= n) throw InvalidArgument("attachment count m must satisfy 1 <= m < n");
  Rng rng(spec);
  std::vector<Edge> edges;
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  for (NodeId s = 0; s < m; ++s) {
    edges.push_back({s, m});
    degree[s] += 1.0;
    degree[m] += 1.0;
  }
  std::vector<double> weights;
  for (NodeId v = m + 1; v < n; ++v) {
    weights.assign(degree.begin(), degree.begin() + v);
    std::vector<NodeId> targets;
    while (static_cast<int>(targets.size()) < m) {
      const std::size_t pick = rng.weighted_index(weights);
      targets.push_back(static_cast<NodeId>(pick));
      weights[pick] = 0.0;
    }
    for (NodeId t : targets) {
      edges.push_back({t, v});
      degree[t] += 1.0;
      degree[v] += 1.0;
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph gen_ws(int n, int k, double p, const RngSpec& spec) {
  if (k % 2 != 0) throw InvalidArgument("ring degree k must be even");
  if (k < 2 || k >= n) throw InvalidArgument("ring degree k must satisfy 2 <= k < n");
  require_probability(p, "rewiring probability");
  Rng rng(spec);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> degree(static_cast<std::size_t>(n), k);
  for (NodeId u = 0; u < n; ++u) {
    for (int j = 1; j <= k / 2; ++j) {
      const NodeId v = (u + j) % n;
      adj[u][v] = adj[v][u] = 1;
    }
  }
  // Rewire lattice edges (u, u+j) one offset at a time, keeping u.
  for (int j = 1; j <= k / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      const NodeId v = (u + j) % n;
      if (!adj[u][v] || !rng.bernoulli(p)) continue;
      if (degree[u] >= n - 1) continue;
      std::vector<NodeId> candidates;
      for (NodeId w = 0; w < n; ++w) {
        if (w != u && !adj[u][w]) candidates.push_back(w);
      }
      const NodeId w = candidates[rng.below(candidates.size())];
      adj[u][v] = adj[v][u] = 0;
      adj[u][w] = adj[w][u] = 1;
      --degree[v];
      ++degree[w];
    }
  }
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (adj[u][v]) edges.push_back({u, v});
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

double LocalityFunction::operator()(int x) const {
  switch (kind) {
    case Kind::exponential: return std::exp(-rate * x);
    case Kind::power: return x <= 0 ? 1.0 : 1.0 / x;
    case Kind::constant: return 1.0;
  }
  return 1.0;
}

std::string LocalityFunction::name() const {
  switch (kind) {
    case Kind::exponential: {
      std::ostringstream out;
      out << "exp" << rate;
      return out.str();
    }
    case Kind::power: return "power";
    case Kind::constant: return "constant";
  }
  return "constant";
}

LocalityFunction LocalityFunction::parse(std::string_view name) {
  if (name == "power" || name == "1/x") return power();
  if (name == "constant" || name == "1") return constant();
  if (name.substr(0, 3) == "exp") {
    const std::string rate_text(name.substr(3));
    try {
      std::size_t used = 0;
      const double rate = std::stod(rate_text, &used);
      if (used == rate_text.size() && rate >= 0.0) return exponential(rate);
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("unknown locality function '" + std::string(name) + "'");
}

OutDegreeSpec OutDegreeSpec::hub_preset(int n, int variant) {
  const int hub_degree = std::max(1, n / 3);
  if (variant == 0) return with_hubs({0, n / 3}, hub_degree);
  if (variant == 1) return with_hubs({n / 6, n / 2}, hub_degree);
  throw InvalidArgument("hub preset variant must be 0 or 1");
}

std::vector<int> OutDegreeSpec::resolve(int n, Rng& rng) const {
  std::vector<int> targets(static_cast<std::size_t>(n), 1);
  switch (kind) {
    case Kind::constant:
      if (value < 1) throw InvalidArgument("constant out-degree must be >= 1");
      std::fill(targets.begin(), targets.end(), value);
      break;
    case Kind::laplace:
      if (!(scale > 0.0)) throw InvalidArgument("Laplace scale must be positive");
      for (int& t : targets) {
        const double draw = std::round(rng.laplace(location, scale));
        t = static_cast<int>(std::clamp(draw, 1.0, static_cast<double>(n)));
      }
      break;
    case Kind::hubs:
      if (value < 1 || hub_degree < 1) throw InvalidArgument("hub out-degrees must be >= 1");
      std::fill(targets.begin(), targets.end(), value);
      for (NodeId h : hubs) {
        if (h < 0 || h >= n) throw InvalidArgument("hub node outside the graph");
        targets[h] = hub_degree;
      }
      break;
  }
  return targets;
}

double rdag_weight(NodeId i, NodeId j, int target_out_j, const RdagParams& params) {
  return std::pow(static_cast<double>(target_out_j), params.alpha) * params.f((j - i) / params.B);
}

Dag gen_rdag(const RdagParams& params, const RngSpec& spec) {
  const int n = params.n;
  require_nodes(n, 2);
  if (params.B < 1) throw InvalidArgument("neighbourhood size B must be >= 1");
  Rng rng(spec);
  const std::vector<int> target = params.out_degree.resolve(n, rng);

  std::vector<Edge> edges;
  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  std::vector<double> weights;
  for (NodeId i = 0; i + 1 < n; ++i) {
    std::fill(chosen.begin(), chosen.end(), 0);
    int out = 0;
    int quota = std::min(target[i], n - 1 - i);
    if (in_degree[i + 1] == 0) {
      edges.push_back({i, i + 1});
      chosen[i + 1] = 1;
      ++in_degree[i + 1];
      ++out;
      if (!params.forced_edge_counts) quota = std::min(target[i] + 1, n - 1 - i);
    }
    weights.assign(static_cast<std::size_t>(n - i - 1), 0.0);
    for (NodeId j = i + 1; j < n; ++j) weights[j - i - 1] = rdag_weight(i, j, target[j], params);
    if (chosen[i + 1]) weights[0] = 0.0;
    while (out < quota) {
      const std::size_t pick = rng.weighted_index(weights);
      if (pick >= weights.size()) break;  // every remaining weight is zero
      const NodeId j = i + 1 + static_cast<NodeId>(pick);
      edges.push_back({i, j});
      ++in_degree[j];
      weights[pick] = 0.0;
      ++out;
    }
  }
  return fix_orphans(Dag(n, std::move(edges)));
}

double composite_objective(const Dag& dag) {
  const double log_paths = std::log(count_paths_total(dag).convert_to<double>());
  const double grc = measures::global_reaching_centrality(dag.successors());
  const double clustering = measures::average_clustering(underlying_undirected(dag).adjacency());
  return std::sqrt(std::max(0.0, log_paths) / dag.size()) - 2.0 * grc - clustering;
}

CompositeResult gen_composite_detailed(int n, double p_init, int budget, const RngSpec& spec) {
  require_nodes(n, 3);
  if (budget < 0) throw InvalidArgument("iteration budget must be >= 0");
  const UndirectedGraph start = largest_component(gen_er(n, p_init, spec.child("er")));
  if (start.size() < 3) throw DataError("initial graph has fewer than 3 connected nodes");
  CompositeResult result{dagify(start), 0.0, {}, 0};
  result.objective = composite_objective(result.dag);
  result.objective_history.push_back(result.objective);

  Rng rng(spec.child("moves"));
  const int size = result.dag.size();
  for (int step = 0; step < budget; ++step) {
    NodeId i = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(size)));
    NodeId j = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(size - 1)));
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    std::vector<Edge> edges = result.dag.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), Edge{i, j});
    if (it != edges.end() && *it == Edge{i, j}) {
      edges.erase(it);
    } else {
      edges.insert(it, Edge{i, j});
    }
    Dag candidate = fix_orphans(result.dag.with_edges(std::move(edges)));
    const double value = composite_objective(candidate);
    if (value > result.objective) {
      result.dag = std::move(candidate);
      result.objective = value;
      result.objective_history.push_back(value);
      ++result.accepted_moves;
    }
  }
  return result;
}

Dag gen_composite(int n, double p_init, int budget, const RngSpec& spec) {
  return gen_composite_detailed(n, p_init, budget, spec).dag;
}

UndirectedGraph gen_fmri(const FmriParams& params, const RngSpec& spec) {
  const Eigen::Index dim = params.matrix.rows();
  if (dim != params.matrix.cols()) throw InvalidArgument("connectivity matrix must be square");
  if (!(params.threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  if (params.target_n < 2 || params.target_n > dim) {
    throw InvalidArgument("target node count must lie in 2..matrix dimension");
  }
  const Eigen::MatrixXd sym = 0.5 * (params.matrix + params.matrix.transpose());
  std::vector<Edge> edges;
  for (Eigen::Index u = 0; u < dim; ++u) {
    for (Eigen::Index v = u + 1; v < dim; ++v) {
      if (std::abs(sym(u, v)) >= params.threshold) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  const UndirectedGraph full(static_cast<int>(dim), std::move(edges));
  const auto components = connected_components(full);
  const auto largest = std::max_element(components.begin(), components.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const int size = static_cast<int>(largest->size());
  if (size < std::min(3, params.target_n)) {
    throw DataError("no connected component large enough after thresholding at " + std::to_string(params.threshold));
  }
  const UndirectedGraph component = induced_subgraph(full, *largest);
  if (size <= params.target_n) return component;

  Rng rng(spec);
  const auto adj = component.adjacency();
  std::vector<char> visited(static_cast<std::size_t>(size), 0);
  std::vector<NodeId> sample;
  NodeId current = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(size)));
  visited[current] = 1;
  sample.push_back(current);
  long idle = 0;
  const long patience = 10L * params.target_n;
  while (static_cast<int>(sample.size()) < params.target_n) {
    const auto& nbrs = adj[current];
    current = nbrs[rng.below(nbrs.size())];
    if (!visited[current]) {
      visited[current] = 1;
      sample.push_back(current);
      idle = 0;
    } else if (++idle >= patience) {
      current = sample[rng.below(sample.size())];
      idle = 0;
    }
  }
  std::sort(sample.begin(), sample.end());
  return induced_subgraph(component, sample);
}

Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      std::string cell(line.substr(start, comma - start));
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && cell[used] == ' ') ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DataError("matrix CSV has a non-numeric cell '" + cell + "'");
      }
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  const std::size_t dim = rows.size();
  if (dim == 0) throw DataError("matrix CSV is empty");
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    if (rows[r].size() != dim) throw DataError("matrix CSV is not square");
    for (std::size_t c = 0; c < dim; ++c) matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return matrix;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) { return parse_matrix_csv(read_text_file(path)); }

Eigen::MatrixXd synthetic_connectome(int dim, std::uint64_t seed) {
  if (dim < 2) throw InvalidArgument("connectome dimension must be >= 2");
  Rng rng(RngSpec{seed, "synthetic-connectome/" + std::to_string(dim)});
  // Components scattered in the unit square; coupling decays with distance
  // plus a sparse set of strong long-range links.
  std::vector<Point> position(static_cast<std::size_t>(dim));
  for (auto& p : position) p = {rng.uniform(), rng.uniform()};
  const double length = 1.5 / std::sqrt(static_cast<double>(dim));
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
  for (int u = 0; u < dim; ++u) {
    for (int v = u + 1; v < dim; ++v) {
      const double d = std::hypot(position[u].x - position[v].x, position[u].y - position[v].y);
      double value = 14.0 * std::exp(-d / length) + 1.5 * (rng.uniform() - 0.5);
      if (rng.bernoulli(0.01)) value += 3.0 + 3.0 * rng.uniform();
      if (rng.bernoulli(0.3)) value = -value;
      z(u, v) = z(v, u) = value;
    }
  }
  return z;
}

}  // namespace graphforge
