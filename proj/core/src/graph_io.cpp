#include "graphforge/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "graphforge/error.hpp"

namespace graphforge {

GraphDocument GraphDocument::from_dag(const Dag& dag, GraphMeta meta) {
  return GraphDocument{dag.size(), dag.edges(), dag.stages(), std::move(meta)};
}

GraphDocument GraphDocument::from_undirected(const UndirectedGraph& g, GraphMeta meta) {
  return GraphDocument{g.size(), g.edges(), {}, std::move(meta)};
}

Dag GraphDocument::to_dag() const { return Dag(n, edges, stages); }

UndirectedGraph GraphDocument::to_undirected() const { return UndirectedGraph(n, edges); }

nlohmann::ordered_json graph_to_json(const GraphDocument& doc) {
  std::vector<Edge> edges = doc.edges;
  std::sort(edges.begin(), edges.end());
  nlohmann::ordered_json j;
  j["n"] = doc.n;
  auto& out_edges = j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : edges) out_edges.push_back({e.src, e.dst});
  j["stages"] = doc.stages;
  nlohmann::ordered_json meta;
  meta["family"] = doc.meta.family;
  meta["params"] = doc.meta.params;
  meta["seed"] = doc.meta.seed;
  j["meta"] = std::move(meta);
  return j;
}

GraphDocument graph_from_json(const nlohmann::json& j) {
  try {
    GraphDocument doc;
    doc.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw DataError("edge entries must be [src, dst] pairs");
      doc.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::sort(doc.edges.begin(), doc.edges.end());
    if (j.contains("stages")) doc.stages = j.at("stages").get<std::vector<int>>();
    if (j.contains("meta")) {
      const auto& meta = j.at("meta");
      if (meta.contains("family")) doc.meta.family = meta.at("family").get<std::string>();
      if (meta.contains("params")) doc.meta.params = meta.at("params");
      if (meta.contains("seed")) doc.meta.seed = meta.at("seed").get<std::uint64_t>();
    }
    return doc;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed graph document: ") + ex.what());
  }
}

std::string write_graph_json(const GraphDocument& doc) { return graph_to_json(doc).dump() + "\n"; }

GraphDocument parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw DataError(std::string("graph file is not valid JSON: ") + ex.what());
  }
  return graph_from_json(j);
}

GraphDocument read_graph_file(const std::filesystem::path& path) { return parse_graph_json(read_text_file(path)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace graphforge
