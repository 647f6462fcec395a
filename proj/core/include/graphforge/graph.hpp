#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace graphforge {

using NodeId = int;

/// An ordered node pair. For undirected graphs src < dst always holds.
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Adjacency = std::vector<std::vector<NodeId>>;

/// Simple undirected graph on nodes 0..n-1. Edges are stored normalized
/// (src < dst), sorted and unique.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeId u, NodeId v) const;
  Adjacency adjacency() const;
  std::vector<int> degrees() const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Directed graph over positional node ids with an optional stage label per
/// node. A well-formed Dag has only forward edges (src < dst), a single source
/// 0 and a single sink n-1; validate_dag reports departures from that shape.
/// The constructor only enforces range, self-loop freedom and uniqueness, so
/// malformed inputs stay representable for diagnostics.
class Dag {
 public:
  Dag() = default;
  Dag(int n, std::vector<Edge> edges, std::vector<int> stages = {});

  int size() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& stages() const { return stages_; }
  bool has_stages() const { return !stages_.empty(); }

  bool has_edge(NodeId u, NodeId v) const;
  Adjacency successors() const;
  Adjacency predecessors() const;
  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;

  Dag with_stages(std::vector<int> stages) const;
  Dag with_edges(std::vector<Edge> edges) const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> stages_;
};

enum class ViolationKind {
  extra_source,   // node other than 0 with no ingoing edge
  extra_sink,     // node other than n-1 with no outgoing edge
  backward_edge,  // edge (i, j) with i > j
  stage_out_of_range,
  stage_decreasing,
  empty_stage,
};

struct Violation {
  ViolationKind kind;
  NodeId node = -1;   // offending node, or the stage index for empty_stage
  Edge edge{-1, -1};  // offending edge for backward_edge
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  bool flags(ViolationKind kind, NodeId node) const;
};

inline constexpr int kNumStages = 3;

ValidationReport validate_dag(const Dag& dag);

UndirectedGraph underlying_undirected(const Dag& dag);

/// Connected components as node lists, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const UndirectedGraph& g);

bool is_connected(const UndirectedGraph& g);

/// Subgraph induced by `nodes`, relabeled by position in `nodes`.
UndirectedGraph induced_subgraph(const UndirectedGraph& g, const std::vector<NodeId>& nodes);

/// Unweighted all-pairs shortest-path lengths by BFS; -1 marks unreachable.
std::vector<std::vector<int>> all_pairs_distances(const Adjacency& adjacency);

}  // namespace graphforge
