#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "graphforge/graph.hpp"

namespace graphforge {

/// Provenance carried by every graph file.
struct GraphMeta {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;

  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

/// In-memory form of the graph file:
///   {"n": int, "edges": [[i,j],...], "stages": [...], "meta": {...}}
/// An undirected graph is stored with i < j and an empty stage list.
struct GraphDocument {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> stages;
  GraphMeta meta;

  static GraphDocument from_dag(const Dag& dag, GraphMeta meta);
  static GraphDocument from_undirected(const UndirectedGraph& g, GraphMeta meta);

  Dag to_dag() const;
  UndirectedGraph to_undirected() const;

  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

nlohmann::ordered_json graph_to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const nlohmann::json& j);

/// Compact single-line serialization with lexicographically sorted edges,
/// terminated by a newline.
std::string write_graph_json(const GraphDocument& doc);
GraphDocument parse_graph_json(std::string_view text);

GraphDocument read_graph_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace graphforge
