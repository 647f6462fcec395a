#include "graphforge/graph.hpp"

#include <algorithm>
#include <queue>

#include "graphforge/error.hpp"

namespace graphforge {

namespace {

void check_node(int n, NodeId v) {
  if (v < 0 || v >= n) {
    throw InvalidArgument("node id " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
  }
}

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

UndirectedGraph::UndirectedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 2) throw InvalidArgument("graph needs at least 2 nodes");
  for (Edge& e : edges_) {
    check_node(n, e.src);
    check_node(n, e.dst);
    if (e.src == e.dst) throw InvalidArgument("self-loop on node " + std::to_string(e.src));
    if (e.src > e.dst) std::swap(e.src, e.dst);
  }
  sort_unique(edges_);
}

bool UndirectedGraph::has_edge(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Adjacency UndirectedGraph::adjacency() const {
  Adjacency adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<int> UndirectedGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) {
    ++deg[e.src];
    ++deg[e.dst];
  }
  return deg;
}

Dag::Dag(int n, std::vector<Edge> edges, std::vector<int> stages)
    : n_(n), edges_(std::move(edges)), stages_(std::move(stages)) {
  if (n < 2) throw InvalidArgument("DAG needs at least 2 nodes");
  for (const Edge& e : edges_) {
    check_node(n, e.src);
    check_node(n, e.dst);
    if (e.src == e.dst) throw InvalidArgument("self-loop on node " + std::to_string(e.src));
  }
  sort_unique(edges_);
  if (!stages_.empty() && static_cast<int>(stages_.size()) != n) {
    throw InvalidArgument("stage vector has " + std::to_string(stages_.size()) + " entries for " +
                          std::to_string(n) + " nodes");
  }
}

bool Dag::has_edge(NodeId u, NodeId v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Adjacency Dag::successors() const {
  Adjacency adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) adj[e.src].push_back(e.dst);
  return adj;
}

Adjacency Dag::predecessors() const {
  Adjacency adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) adj[e.dst].push_back(e.src);
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<int> Dag::in_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) ++deg[e.dst];
  return deg;
}

std::vector<int> Dag::out_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) ++deg[e.src];
  return deg;
}

Dag Dag::with_stages(std::vector<int> stages) const { return Dag(n_, edges_, std::move(stages)); }

Dag Dag::with_edges(std::vector<Edge> edges) const { return Dag(n_, std::move(edges), stages_); }

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [&](const Violation& v) { return v.kind == kind; }));
}

bool ValidationReport::flags(ViolationKind kind, NodeId node) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind && v.node == node; });
}

ValidationReport validate_dag(const Dag& dag) {
  ValidationReport report;
  const int n = dag.size();
  for (const Edge& e : dag.edges()) {
    if (e.src > e.dst) {
      report.violations.push_back({ViolationKind::backward_edge, e.src, e,
                                   "edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                                       " points backwards"});
    }
  }
  const auto in = dag.in_degrees();
  const auto out = dag.out_degrees();
  for (NodeId v = 1; v < n; ++v) {
    if (in[v] == 0) {
      report.violations.push_back(
          {ViolationKind::extra_source, v, {}, "node " + std::to_string(v) + " has no input"});
    }
  }
  for (NodeId v = 0; v + 1 < n; ++v) {
    if (out[v] == 0) {
      report.violations.push_back(
          {ViolationKind::extra_sink, v, {}, "node " + std::to_string(v) + " has no output"});
    }
  }
  if (dag.has_stages()) {
    const auto& stages = dag.stages();
    std::vector<int> population(kNumStages, 0);
    for (NodeId v = 0; v < n; ++v) {
      const int s = stages[v];
      if (s < 0 || s >= kNumStages) {
        report.violations.push_back({ViolationKind::stage_out_of_range, v, {},
                                     "node " + std::to_string(v) + " has stage " + std::to_string(s)});
        continue;
      }
      ++population[s];
      if (v > 0 && s < stages[v - 1]) {
        report.violations.push_back({ViolationKind::stage_decreasing, v, {},
                                     "stage decreases at node " + std::to_string(v)});
      }
    }
    if (n >= kNumStages) {
      for (int s = 0; s < kNumStages; ++s) {
        if (population[s] == 0) {
          report.violations.push_back(
              {ViolationKind::empty_stage, s, {}, "stage " + std::to_string(s) + " is empty"});
        }
      }
    }
  }
  return report;
}

UndirectedGraph underlying_undirected(const Dag& dag) { return UndirectedGraph(dag.size(), dag.edges()); }

std::vector<std::vector<NodeId>> connected_components(const UndirectedGraph& g) {
  const auto adj = g.adjacency();
  std::vector<int> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<std::vector<NodeId>> components;
  for (NodeId start = 0; start < g.size(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> members{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (NodeId w : adj[members[head]]) {
        if (!seen[w]) {
          seen[w] = 1;
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

bool is_connected(const UndirectedGraph& g) { return connected_components(g).size() == 1; }

UndirectedGraph induced_subgraph(const UndirectedGraph& g, const std::vector<NodeId>& nodes) {
  std::vector<int> position(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) position[nodes[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (position[e.src] >= 0 && position[e.dst] >= 0) edges.push_back({position[e.src], position[e.dst]});
  }
  return UndirectedGraph(static_cast<int>(nodes.size()), std::move(edges));
}

std::vector<std::vector<int>> all_pairs_distances(const Adjacency& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto& row = dist[s];
    row[s] = 0;
    queue.assign(1, static_cast<NodeId>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      for (NodeId w : adjacency[u]) {
        if (row[w] < 0) {
          row[w] = row[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

}  // namespace graphforge
