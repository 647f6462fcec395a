#include "graphforge/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "graphforge/error.hpp"

namespace graphforge::measures {

namespace {

using Matrix = Eigen::MatrixXd;

std::vector<std::vector<char>> adjacency_matrix(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId w : adj[u]) m[u][w] = 1;
  }
  return m;
}

int edges_among(const std::vector<NodeId>& nodes, const std::vector<std::vector<char>>& m) {
  int count = 0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) count += m[nodes[a]][nodes[b]];
  }
  return count;
}

Matrix dense_adjacency(const UndirectedGraph& g) {
  Matrix a = Matrix::Zero(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    a(e.src, e.dst) = 1.0;
    a(e.dst, e.src) = 1.0;
  }
  return a;
}

Matrix laplacian_pseudoinverse(const UndirectedGraph& g) {
  const int n = g.size();
  Matrix lap = -dense_adjacency(g);
  for (int v = 0; v < n; ++v) lap(v, v) = -lap.row(v).sum();
  const Matrix shift = Matrix::Constant(n, n, 1.0 / n);
  return (lap + shift).partialPivLu().inverse() - shift;
}

Matrix symmetric_expm(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  const Eigen::VectorXd exp_values = solver.eigenvalues().array().exp();
  return solver.eigenvectors() * exp_values.asDiagonal() * solver.eigenvectors().transpose();
}

void require_connected(const UndirectedGraph& g, const char* what) {
  if (!is_connected(g)) throw DataError(std::string(what) + " needs a connected graph");
}

// Unit-capacity max flow by BFS augmentation on an explicit arc list.
class UnitFlow {
 public:
  explicit UnitFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  void add_arc(int from, int to) {
    arcs_.push_back({to, head_[from], 1});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int source, int sink) {
    for (std::size_t i = 0; i < arcs_.size(); ++i) arcs_[i].cap = (i % 2 == 0) ? 1 : 0;
    int flow = 0;
    std::vector<int> via(head_.size());
    std::vector<int> queue;
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      via[source] = -2;
      queue.assign(1, source);
      for (std::size_t q = 0; q < queue.size() && via[sink] == -1; ++q) {
        const int u = queue[q];
        for (int a = head_[u]; a >= 0; a = arcs_[a].next) {
          if (arcs_[a].cap > 0 && via[arcs_[a].to] == -1) {
            via[arcs_[a].to] = a;
            queue.push_back(arcs_[a].to);
          }
        }
      }
      if (via[sink] == -1) return flow;
      for (int v = sink; v != source;) {
        const int a = via[v];
        --arcs_[a].cap;
        ++arcs_[a ^ 1].cap;
        v = arcs_[a ^ 1].to;
      }
      ++flow;
    }
  }

 private:
  struct Arc {
    int to;
    int next;
    int cap;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

UnitFlow split_node_network(const Adjacency& out) {
  const int n = static_cast<int>(out.size());
  UnitFlow net(2 * n);
  for (int v = 0; v < n; ++v) net.add_arc(2 * v, 2 * v + 1);
  for (int u = 0; u < n; ++u) {
    for (NodeId w : out[u]) net.add_arc(2 * u + 1, 2 * w);
  }
  return net;
}

}  // namespace

std::vector<double> clustering(const Adjacency& adj) {
  const auto m = adjacency_matrix(adj);
  std::vector<double> c(adj.size(), 0.0);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const double d = static_cast<double>(adj[v].size());
    if (d < 2) continue;
    c[v] = 2.0 * edges_among(adj[v], m) / (d * (d - 1.0));
  }
  return c;
}

double average_clustering(const Adjacency& adj) {
  const auto c = clustering(adj);
  return c.empty() ? 0.0 : std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

double transitivity(const Adjacency& adj) {
  const auto m = adjacency_matrix(adj);
  double closed = 0.0, triads = 0.0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const double d = static_cast<double>(adj[v].size());
    closed += edges_among(adj[v], m);
    triads += d * (d - 1.0) / 2.0;
  }
  return closed == 0.0 ? 0.0 : closed / triads;
}

double global_efficiency(const Adjacency& adj) {
  const std::size_t n = adj.size();
  if (n < 2) return 0.0;
  const auto dist = all_pairs_distances(adj);
  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && dist[u][v] > 0) total += 1.0 / dist[u][v];
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double local_efficiency(const Adjacency& adj) {
  if (adj.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const auto& nbrs = adj[v];
    std::vector<int> position(adj.size(), -1);
    for (std::size_t i = 0; i < nbrs.size(); ++i) position[nbrs[i]] = static_cast<int>(i);
    Adjacency sub(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (NodeId w : adj[nbrs[i]]) {
        if (position[w] >= 0) sub[i].push_back(position[w]);
      }
    }
    total += global_efficiency(sub);
  }
  return total / static_cast<double>(adj.size());
}

double average_shortest_path_length(const Adjacency& adj) {
  const auto dist = all_pairs_distances(adj);
  double total = 0.0, pairs = 0.0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (u != v && dist[u][v] > 0) {
        total += dist[u][v];
        pairs += 1.0;
      }
    }
  }
  return pairs == 0.0 ? 0.0 : total / pairs;
}

double wiener_index(const Adjacency& adj) {
  const auto dist = all_pairs_distances(adj);
  double total = 0.0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = u + 1; v < adj.size(); ++v) {
      if (dist[u][v] > 0) total += dist[u][v];
    }
  }
  return total;
}

std::vector<int> eccentricities(const Adjacency& adj) {
  const auto dist = all_pairs_distances(adj);
  std::vector<int> ecc(adj.size(), 0);
  for (std::size_t v = 0; v < adj.size(); ++v) ecc[v] = *std::max_element(dist[v].begin(), dist[v].end());
  return ecc;
}

std::vector<double> betweenness(const Adjacency& out, bool directed) {
  // Undirected input counts every unordered pair twice, which is exactly the
  // networkx normalization, so both cases share the same scale.
  (void)directed;
  const std::size_t n = out.size();
  std::vector<double> bc(n, 0.0);
  std::vector<NodeId> order;
  std::vector<int> dist(n);
  std::vector<double> sigma(n), delta(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.assign(1, static_cast<NodeId>(s));
    dist[s] = 0;
    sigma[s] = 1.0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (NodeId w : out[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      const NodeId u = order[k];
      for (NodeId w : out[u]) {
        if (dist[w] == dist[u] + 1) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      }
      if (u != static_cast<NodeId>(s)) bc[u] += delta[u];
    }
  }
  if (n > 2) {
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& b : bc) b *= scale;
  }
  return bc;
}

std::vector<double> closeness(const Adjacency& in) {
  const std::size_t n = in.size();
  const auto dist = all_pairs_distances(in);
  std::vector<double> c(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double total = 0.0;
    double reached = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && dist[v][u] > 0) {
        total += dist[v][u];
        reached += 1.0;
      }
    }
    if (total > 0.0 && n > 1) c[v] = (reached / total) * (reached / static_cast<double>(n - 1));
  }
  return c;
}

std::vector<double> local_reaching_centrality(const Adjacency& out) {
  const std::size_t n = out.size();
  const auto dist = all_pairs_distances(out);
  std::vector<double> lrc(n, 0.0);
  if (n < 2) return lrc;
  for (std::size_t v = 0; v < n; ++v) {
    const auto reached = std::count_if(dist[v].begin(), dist[v].end(), [](int d) { return d > 0; });
    lrc[v] = static_cast<double>(reached) / static_cast<double>(n - 1);
  }
  return lrc;
}

double global_reaching_centrality(const Adjacency& out) {
  const auto lrc = local_reaching_centrality(out);
  if (lrc.size() < 2) return 0.0;
  const double top = *std::max_element(lrc.begin(), lrc.end());
  double total = 0.0;
  for (double c : lrc) total += top - c;
  return total / static_cast<double>(lrc.size() - 1);
}

int local_node_connectivity(const Adjacency& out, NodeId s, NodeId t) {
  UnitFlow net = split_node_network(out);
  return net.max_flow(2 * s + 1, 2 * t);
}

double average_node_connectivity(const Adjacency& out) {
  const int n = static_cast<int>(out.size());
  if (n < 2) return 0.0;
  UnitFlow net = split_node_network(out);
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s != t) total += net.max_flow(2 * s + 1, 2 * t);
    }
  }
  return total / (static_cast<double>(n) * (n - 1));
}

int local_edge_connectivity(const Adjacency& out, NodeId s, NodeId t) {
  UnitFlow net(static_cast<int>(out.size()));
  for (std::size_t u = 0; u < out.size(); ++u) {
    for (NodeId w : out[u]) net.add_arc(static_cast<int>(u), w);
  }
  return net.max_flow(s, t);
}

AcyclicTriadCensus triadic_census(const Dag& dag) {
  const int n = dag.size();
  std::vector<std::vector<char>> m(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : dag.edges()) m[e.src][e.dst] = 1;
  AcyclicTriadCensus census;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const int ab = m[a][b] | m[b][a];
        const int ac = m[a][c] | m[c][a];
        const int bc = m[b][c] | m[c][b];
        switch (ab + ac + bc) {
          case 0: ++census.t003; break;
          case 1: ++census.t012; break;
          case 3: ++census.t030T; break;
          default: {
            // The shared node of the two edges decides the type.
            int shared = ab && ac ? a : (ab && bc ? b : c);
            int others[2];
            int k = 0;
            for (int v : {a, b, c}) {
              if (v != shared) others[k++] = v;
            }
            const bool out0 = m[shared][others[0]], out1 = m[shared][others[1]];
            if (out0 && out1) {
              ++census.t021D;
            } else if (!out0 && !out1) {
              ++census.t021U;
            } else {
              ++census.t021C;
            }
          }
        }
      }
    }
  }
  return census;
}

double degree_assortativity(const Dag& dag) {
  const auto in = dag.in_degrees();
  const auto out = dag.out_degrees();
  const double m = static_cast<double>(dag.num_edges());
  if (m == 0.0) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (const Edge& e : dag.edges()) {
    const double x = out[e.src], y = in[e.dst];
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double vx = sxx / m - (sx / m) * (sx / m);
  const double vy = syy / m - (sy / m) * (sy / m);
  const double cov = sxy / m - (sx / m) * (sy / m);
  if (vx <= 1e-15 || vy <= 1e-15) return std::numeric_limits<double>::quiet_NaN();
  return cov / std::sqrt(vx * vy);
}

double s_metric(const UndirectedGraph& g) {
  const auto deg = g.degrees();
  double total = 0.0;
  for (const Edge& e : g.edges()) total += static_cast<double>(deg[e.src]) * deg[e.dst];
  return total;
}

std::vector<double> pagerank(const Adjacency& out, double damping) {
  const int n = static_cast<int>(out.size());
  // x = d * (P^T x + (dangling . x) / n) + (1 - d) / n
  Matrix system = Matrix::Identity(n, n);
  for (int u = 0; u < n; ++u) {
    if (out[u].empty()) {
      for (int v = 0; v < n; ++v) system(v, u) -= damping / n;
    } else {
      const double share = damping / static_cast<double>(out[u].size());
      for (NodeId w : out[u]) system(w, u) -= share;
    }
  }
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - damping) / n);
  Eigen::VectorXd x = system.partialPivLu().solve(rhs);
  x /= x.sum();
  return {x.data(), x.data() + n};
}

std::vector<double> constraint(const Adjacency& adj) {
  const std::size_t n = adj.size();
  const auto m = adjacency_matrix(adj);
  std::vector<double> result(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t u = 0; u < n; ++u) {
    if (adj[u].empty()) continue;
    const double pu = 1.0 / static_cast<double>(adj[u].size());
    double total = 0.0;
    for (NodeId v : adj[u]) {
      double indirect = 0.0;
      for (NodeId w : adj[u]) {
        if (w != v && m[w][v]) indirect += pu / static_cast<double>(adj[w].size());
      }
      const double local = pu + indirect;
      total += local * local;
    }
    result[u] = total;
  }
  return result;
}

std::vector<double> effective_size(const Adjacency& adj) {
  const auto m = adjacency_matrix(adj);
  std::vector<double> result(adj.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t u = 0; u < adj.size(); ++u) {
    const double d = static_cast<double>(adj[u].size());
    if (d == 0.0) continue;
    result[u] = d - 2.0 * edges_among(adj[u], m) / d;
  }
  return result;
}

std::vector<double> closeness_vitality(const Adjacency& adj) {
  const std::size_t n = adj.size();
  const double full = wiener_index(adj);
  std::vector<double> result(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    Adjacency reduced(n);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      for (NodeId w : adj[u]) {
        if (w != static_cast<NodeId>(v)) reduced[u].push_back(w);
      }
    }
    result[v] = full - wiener_index(reduced);
  }
  return result;
}

std::vector<double> modularity_spectrum(const UndirectedGraph& g) {
  const Matrix a = dense_adjacency(g);
  const Eigen::VectorXd k = a.rowwise().sum();
  const double two_m = k.sum();
  if (two_m == 0.0) throw DataError("modularity spectrum of an edgeless graph");
  const Matrix b = a - k * k.transpose() / two_m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(b, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> current_flow_closeness(const UndirectedGraph& g) {
  require_connected(g, "current-flow closeness");
  const int n = g.size();
  const Matrix pinv = laplacian_pseudoinverse(g);
  std::vector<double> result(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    double total = 0.0;
    for (int w = 0; w < n; ++w) total += pinv(v, v) + pinv(w, w) - 2.0 * pinv(v, w);
    result[v] = 1.0 / total;
  }
  return result;
}

std::vector<double> current_flow_betweenness(const UndirectedGraph& g) {
  require_connected(g, "current-flow betweenness");
  const int n = g.size();
  const Matrix pinv = laplacian_pseudoinverse(g);
  const auto adj = g.adjacency();
  std::vector<double> result(static_cast<std::size_t>(n), 0.0);
  if (n < 3) return result;
  Eigen::VectorXd potential(n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      potential = pinv.col(s) - pinv.col(t);
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        double through = 0.0;
        for (NodeId w : adj[v]) through += std::abs(potential(v) - potential(w));
        result[v] += 0.5 * through;
      }
    }
  }
  const double scale = 2.0 / (static_cast<double>(n - 1) * (n - 2));
  for (double& r : result) r *= scale;
  return result;
}

std::vector<double> second_order_centrality(const UndirectedGraph& g) {
  require_connected(g, "second-order centrality");
  const int n = g.size();
  Matrix p = dense_adjacency(g);
  const Eigen::VectorXd deg = p.rowwise().sum();
  const double top = deg.maxCoeff();
  for (int v = 0; v < n; ++v) p(v, v) = top - deg(v);
  for (int v = 0; v < n; ++v) p.row(v) /= p.row(v).sum();
  const Matrix identity = Matrix::Identity(n, n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  std::vector<double> result(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix q = p;
    q.col(i).setZero();
    const Eigen::VectorXd times = (identity - q).partialPivLu().solve(ones);
    result[i] = std::sqrt(std::max(0.0, 2.0 * times.sum() - static_cast<double>(n) * (n + 1)));
  }
  return result;
}

std::vector<std::vector<double>> communicability(const UndirectedGraph& g) {
  const Matrix e = symmetric_expm(dense_adjacency(g));
  std::vector<std::vector<double>> out(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    out[i].resize(static_cast<std::size_t>(g.size()));
    for (int j = 0; j < g.size(); ++j) out[i][j] = e(i, j);
  }
  return out;
}

std::vector<double> communicability_betweenness(const UndirectedGraph& g) {
  const int n = g.size();
  Matrix a = dense_adjacency(g);
  const Matrix full = symmetric_expm(a);
  std::vector<double> result(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v) {
    Matrix reduced = a;
    reduced.row(v).setZero();
    reduced.col(v).setZero();
    Matrix ratio = (full - symmetric_expm(reduced)).cwiseQuotient(full);
    ratio.row(v).setZero();
    ratio.col(v).setZero();
    ratio.diagonal().setZero();
    result[v] = ratio.sum();
  }
  if (n > 2) {
    const double scale = 1.0 / (static_cast<double>(n - 1) * (n - 1) - (n - 1));
    for (double& r : result) r *= scale;
  }
  return result;
}

}  // namespace graphforge::measures
