#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphforge/graph.hpp"
#include "graphforge/graph_io.hpp"

namespace graphforge {

/// Base width C; stage s runs at C * 2^s channels.
struct ChannelPlan {
  int C = 0;
  int num_classes = 10;
  int input_channels = 3;

  std::int64_t stage_channels(int stage) const { return static_cast<std::int64_t>(C) << stage; }
  std::array<std::int64_t, kNumStages> stages() const;

  friend bool operator==(const ChannelPlan&, const ChannelPlan&) = default;
};

enum class NodeKind { stem, standard, head };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view name);

struct NodeSpec {
  NodeId id = 0;
  NodeKind kind = NodeKind::standard;
  int stage = 0;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// stride 1 is an identity edge; stride 2^k downsamples across k stages.
struct EdgeSpec {
  NodeId src = 0;
  NodeId dst = 0;
  int stride = 1;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// SGD regime recorded with every exported architecture.
struct TrainingRegime {
  int epochs = 100;
  int batch = 128;
  double lr = 0.1;
  double momentum = 0.9;
  double weight_decay = 1e-4;
  std::vector<int> lr_drops{80, 90};

  friend bool operator==(const TrainingRegime&, const TrainingRegime&) = default;
};

struct ArchSpec {
  GraphDocument graph;
  ChannelPlan channels;
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  std::int64_t predicted_params = 0;
  TrainingRegime train;

  friend bool operator==(const ArchSpec&, const ArchSpec&) = default;
};

inline constexpr std::int64_t kResNet56Params = 853000;

/// Contiguous near-equal thirds; the remainder goes to the earliest stages.
std::array<int, kNumStages> stage_sizes(int n);
Dag assign_stages(const Dag& dag);

/// Parameter model:
///   stem                 9 * in_ch * C + 2C
///   standard node (c_s)  in_degree + 9 c_s^2 + 2 c_s + c_s^2
///   crossing edge s->t   9 c_s c_t + 2 c_t
///   output head          in_degree + c_s * classes + classes
std::int64_t param_count(const Dag& dag, const ChannelPlan& plan);

/// The C minimizing |param_count - target| (ties to the smaller C).
/// Throws DataError when the target is below the C = 1 count.
ChannelPlan solve_channels(const Dag& dag, std::int64_t target, int num_classes = 10, int input_channels = 3);

/// Drops every stage-crossing edge, links the last node of each stage to the
/// first node of the next, then repairs orphans.
Dag bottleneck_ablation(const Dag& dag);

ArchSpec export_archspec(const Dag& dag, const ChannelPlan& plan, GraphMeta meta = {});

nlohmann::ordered_json archspec_to_json(const ArchSpec& spec);
ArchSpec archspec_from_json(const nlohmann::json& j);
std::string write_archspec_json(const ArchSpec& spec);
ArchSpec parse_archspec_json(std::string_view text);

}  // namespace graphforge
