#pragma once

#include <vector>

#include "graphforge/graph.hpp"

namespace fixture {

using graphforge::Dag;
using graphforge::Edge;
using graphforge::UndirectedGraph;

inline Dag chain(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Dag(n, edges);
}

inline Dag full_dag(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Dag(n, edges);
}

inline Dag diamond() { return Dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

inline UndirectedGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return UndirectedGraph(n, edges);
}

inline UndirectedGraph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return UndirectedGraph(n, edges);
}

inline UndirectedGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return UndirectedGraph(n, edges);
}

/// Two parallel chains 0..rungs-1 and rungs..2*rungs-1 with rungs between
/// them, laid out as a DAG from one end of the ladder to the other.
inline Dag ladder(int rungs) {
  std::vector<Edge> edges;
  // node 2i is on the top rail, 2i+1 on the bottom rail
  for (int i = 0; i < rungs; ++i) {
    edges.push_back({2 * i, 2 * i + 1});
    if (i + 1 < rungs) {
      edges.push_back({2 * i, 2 * i + 2});
      edges.push_back({2 * i + 1, 2 * i + 3});
    }
  }
  return Dag(2 * rungs, edges);
}

}  // namespace fixture
