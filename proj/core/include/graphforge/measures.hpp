#pragma once

// Classical graph measures backing the feature vector. Conventions follow
// the networkx definitions of the same names; directed variants take the
// successor lists of a Dag.

#include <array>
#include <cstdint>
#include <vector>

#include "graphforge/graph.hpp"

namespace graphforge::measures {

std::vector<double> clustering(const Adjacency& adj);
double average_clustering(const Adjacency& adj);
double transitivity(const Adjacency& adj);

/// Mean over ordered pairs of 1/d, unreachable pairs contribute 0.
double global_efficiency(const Adjacency& adj);
double local_efficiency(const Adjacency& adj);

/// Mean shortest-path length over all ordered reachable pairs.
double average_shortest_path_length(const Adjacency& adj);

/// Sum of shortest-path lengths over unordered reachable pairs.
double wiener_index(const Adjacency& adj);

std::vector<int> eccentricities(const Adjacency& adj);

/// Brandes betweenness, normalized as networkx does for the given
/// directedness (1/((n-1)(n-2)) per ordered pair).
std::vector<double> betweenness(const Adjacency& out, bool directed);

/// Closeness from incoming distances with the Wasserman-Faust correction for
/// partially reachable nodes; `in` lists predecessors (pass the plain
/// adjacency for undirected graphs).
std::vector<double> closeness(const Adjacency& in);

/// Fraction of other nodes reachable from each node.
std::vector<double> local_reaching_centrality(const Adjacency& out);
double global_reaching_centrality(const Adjacency& out);

/// Maximum number of internally node-disjoint directed paths s -> t; a
/// direct edge counts as one path.
int local_node_connectivity(const Adjacency& out, NodeId s, NodeId t);
/// Mean of local_node_connectivity over all ordered pairs.
double average_node_connectivity(const Adjacency& out);
/// Maximum number of edge-disjoint directed paths s -> t.
int local_edge_connectivity(const Adjacency& out, NodeId s, NodeId t);

/// Counts of the triad types that occur in acyclic graphs.
struct AcyclicTriadCensus {
  std::int64_t t003 = 0, t012 = 0, t021D = 0, t021U = 0, t021C = 0, t030T = 0;
};
AcyclicTriadCensus triadic_census(const Dag& dag);

/// Pearson correlation of (out-degree of source, in-degree of target) over
/// edges. NaN when either side has zero variance.
double degree_assortativity(const Dag& dag);

/// Sum over edges of deg(u) * deg(v).
double s_metric(const UndirectedGraph& g);

/// PageRank with damping 0.85, dangling mass spread uniformly; solved exactly.
std::vector<double> pagerank(const Adjacency& out, double damping = 0.85);

/// Burt's constraint and effective size for undirected graphs.
std::vector<double> constraint(const Adjacency& adj);
std::vector<double> effective_size(const Adjacency& adj);

/// W(G) - W(G - v), where W sums distances over pairs that stay connected.
std::vector<double> closeness_vitality(const Adjacency& adj);

/// Eigenvalues of the modularity matrix A - k k^T / 2m, ascending.
std::vector<double> modularity_spectrum(const UndirectedGraph& g);

/// Information (current-flow closeness) centrality: 1 / sum_w R_vw.
std::vector<double> current_flow_closeness(const UndirectedGraph& g);

/// Random-walk betweenness normalized by (n-1)(n-2)/2 over unordered pairs,
/// endpoints excluded.
std::vector<double> current_flow_betweenness(const UndirectedGraph& g);

/// Standard deviation of return times of the degree-balanced random walk.
std::vector<double> second_order_centrality(const UndirectedGraph& g);

/// expm(A) of the adjacency matrix, row-major n x n.
std::vector<std::vector<double>> communicability(const UndirectedGraph& g);

std::vector<double> communicability_betweenness(const UndirectedGraph& g);

}  // namespace graphforge::measures
