#include "graphforge/arch.hpp"

#include <algorithm>

#include "graphforge/error.hpp"
#include "graphforge/layout.hpp"

namespace graphforge {

namespace {

void require_stages(const Dag& dag) {
  if (!dag.has_stages()) throw InvalidArgument("operation needs a DAG with stages assigned");
}

int stride_for(int stage_gap) { return 1 << stage_gap; }

}  // namespace

std::array<std::int64_t, kNumStages> ChannelPlan::stages() const {
  std::array<std::int64_t, kNumStages> out{};
  for (int s = 0; s < kNumStages; ++s) out[s] = stage_channels(s);
  return out;
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::stem: return "stem";
    case NodeKind::standard: return "standard";
    case NodeKind::head: return "head";
  }
  return "standard";
}

NodeKind parse_node_kind(std::string_view name) {
  if (name == "stem") return NodeKind::stem;
  if (name == "standard") return NodeKind::standard;
  if (name == "head") return NodeKind::head;
  throw DataError("unknown node kind '" + std::string(name) + "'");
}

std::array<int, kNumStages> stage_sizes(int n) {
  if (n < kNumStages) throw InvalidArgument("stage assignment needs at least 3 nodes");
  std::array<int, kNumStages> sizes{};
  for (int s = 0; s < kNumStages; ++s) sizes[s] = n / kNumStages + (s < n % kNumStages ? 1 : 0);
  return sizes;
}

Dag assign_stages(const Dag& dag) {
  const auto sizes = stage_sizes(dag.size());
  std::vector<int> stages;
  stages.reserve(static_cast<std::size_t>(dag.size()));
  for (int s = 0; s < kNumStages; ++s) stages.insert(stages.end(), static_cast<std::size_t>(sizes[s]), s);
  return dag.with_stages(std::move(stages));
}

std::int64_t param_count(const Dag& dag, const ChannelPlan& plan) {
  require_stages(dag);
  if (plan.C < 1) throw InvalidArgument("base channel count C must be >= 1");
  const int n = dag.size();
  const auto& stage = dag.stages();
  const auto in = dag.in_degrees();
  const std::int64_t c0 = plan.C;
  std::int64_t total = 9 * plan.input_channels * c0 + 2 * c0;
  for (NodeId v = 1; v + 1 < n; ++v) {
    const std::int64_t c = plan.stage_channels(stage[v]);
    total += in[v] + 9 * c * c + 2 * c + c * c;
  }
  const std::int64_t c_head = plan.stage_channels(stage[n - 1]);
  total += in[n - 1] + c_head * plan.num_classes + plan.num_classes;
  for (const Edge& e : dag.edges()) {
    if (stage[e.src] == stage[e.dst]) continue;
    const std::int64_t cs = plan.stage_channels(stage[e.src]);
    const std::int64_t ct = plan.stage_channels(stage[e.dst]);
    total += 9 * cs * ct + 2 * ct;
  }
  return total;
}

ChannelPlan solve_channels(const Dag& dag, std::int64_t target, int num_classes, int input_channels) {
  ChannelPlan plan{1, num_classes, input_channels};
  const std::int64_t smallest = param_count(dag, plan);
  if (target < smallest) {
    throw DataError("target of " + std::to_string(target) + " parameters is below the C = 1 count of " +
                    std::to_string(smallest));
  }
  auto count_at = [&](int c) { return param_count(dag, ChannelPlan{c, num_classes, input_channels}); };
  // Smallest C whose count reaches the target; strict monotonicity in C
  // makes the answer this C or the one before it.
  int lo = 1, hi = 2;
  while (count_at(hi) < target) {
    lo = hi;
    hi *= 2;
  }
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (count_at(mid) < target) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  int best = lo;
  if (lo > 1 && target - count_at(lo - 1) <= count_at(lo) - target) best = lo - 1;
  plan.C = best;
  return plan;
}

Dag bottleneck_ablation(const Dag& dag) {
  require_stages(dag);
  const auto& stage = dag.stages();
  std::vector<Edge> edges;
  for (const Edge& e : dag.edges()) {
    if (stage[e.src] == stage[e.dst]) edges.push_back(e);
  }
  for (NodeId v = 0; v + 1 < dag.size(); ++v) {
    if (stage[v] != stage[v + 1]) edges.push_back({v, v + 1});
  }
  return fix_orphans(dag.with_edges(std::move(edges)));
}

ArchSpec export_archspec(const Dag& dag, const ChannelPlan& plan, GraphMeta meta) {
  require_stages(dag);
  if (plan.C < 1) throw InvalidArgument("channel plan is not solved (C < 1)");
  ArchSpec spec;
  spec.graph = GraphDocument::from_dag(dag, std::move(meta));
  spec.channels = plan;
  const int n = dag.size();
  const auto& stage = dag.stages();
  for (NodeId v = 0; v < n; ++v) {
    const NodeKind kind = v == 0 ? NodeKind::stem : (v == n - 1 ? NodeKind::head : NodeKind::standard);
    spec.nodes.push_back({v, kind, stage[v]});
  }
  for (const Edge& e : dag.edges()) spec.edges.push_back({e.src, e.dst, stride_for(stage[e.dst] - stage[e.src])});
  spec.predicted_params = param_count(dag, plan);
  return spec;
}

nlohmann::ordered_json archspec_to_json(const ArchSpec& spec) {
  nlohmann::ordered_json j;
  j["graph"] = graph_to_json(spec.graph);
  nlohmann::ordered_json channels;
  channels["C"] = spec.channels.C;
  channels["stages"] = spec.channels.stages();
  channels["num_classes"] = spec.channels.num_classes;
  channels["input_channels"] = spec.channels.input_channels;
  j["channels"] = std::move(channels);
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const NodeSpec& node : spec.nodes) {
    nlohmann::ordered_json item;
    item["id"] = node.id;
    item["kind"] = to_string(node.kind);
    item["stage"] = node.stage;
    nodes.push_back(std::move(item));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const EdgeSpec& edge : spec.edges) {
    nlohmann::ordered_json item;
    item["src"] = edge.src;
    item["dst"] = edge.dst;
    item["stride"] = edge.stride;
    edges.push_back(std::move(item));
  }
  j["predicted_params"] = spec.predicted_params;
  nlohmann::ordered_json train;
  train["epochs"] = spec.train.epochs;
  train["batch"] = spec.train.batch;
  train["lr"] = spec.train.lr;
  train["momentum"] = spec.train.momentum;
  train["weight_decay"] = spec.train.weight_decay;
  train["lr_drops"] = spec.train.lr_drops;
  j["train"] = std::move(train);
  return j;
}

ArchSpec archspec_from_json(const nlohmann::json& j) {
  try {
    ArchSpec spec;
    spec.graph = graph_from_json(j.at("graph"));
    const auto& channels = j.at("channels");
    spec.channels.C = channels.at("C").get<int>();
    spec.channels.num_classes = channels.value("num_classes", 10);
    spec.channels.input_channels = channels.value("input_channels", 3);
    const auto expected = spec.channels.stages();
    if (channels.contains("stages") &&
        channels.at("stages").get<std::vector<std::int64_t>>() !=
            std::vector<std::int64_t>(expected.begin(), expected.end())) {
      throw DataError("stage channels do not double from C");
    }
    for (const auto& node : j.at("nodes")) {
      spec.nodes.push_back({node.at("id").get<NodeId>(), parse_node_kind(node.at("kind").get<std::string>()),
                            node.at("stage").get<int>()});
    }
    for (const auto& edge : j.at("edges")) {
      spec.edges.push_back({edge.at("src").get<NodeId>(), edge.at("dst").get<NodeId>(), edge.at("stride").get<int>()});
    }
    spec.predicted_params = j.at("predicted_params").get<std::int64_t>();
    const auto& train = j.at("train");
    spec.train.epochs = train.at("epochs").get<int>();
    spec.train.batch = train.at("batch").get<int>();
    spec.train.lr = train.at("lr").get<double>();
    spec.train.momentum = train.at("momentum").get<double>();
    spec.train.weight_decay = train.at("weight_decay").get<double>();
    spec.train.lr_drops = train.at("lr_drops").get<std::vector<int>>();
    return spec;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed architecture spec: ") + ex.what());
  }
}

std::string write_archspec_json(const ArchSpec& spec) { return archspec_to_json(spec).dump(2) + "\n"; }

ArchSpec parse_archspec_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw DataError(std::string("architecture spec is not valid JSON: ") + ex.what());
  }
  return archspec_from_json(j);
}

}  // namespace graphforge
