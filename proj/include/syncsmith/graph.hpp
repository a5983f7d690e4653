#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace syncsmith {

using NodeId = std::int64_t;
using Arc = std::pair<NodeId, NodeId>;

struct DirectedGraph {
  NodeId n = 0;
  std::vector<Arc> arcs;  // sorted, no duplicates

  // Sorts and rejects duplicates / out-of-range endpoints.
  static DirectedGraph from_arcs(NodeId n, std::vector<Arc> arcs);

  bool has_arc(NodeId i, NodeId j) const;
  bool operator==(const DirectedGraph&) const = default;
};

// G1 ∘ G2: (i,j) is an arc iff some k has (i,k) in G1 and (k,j) in G2.
DirectedGraph compose(const DirectedGraph& g1, const DirectedGraph& g2);

struct ActivationSchedule {
  std::vector<std::int64_t> starts;  // start round per node, each >= 1

  static ActivationSchedule synchronous(NodeId n) {
    return ActivationSchedule{std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)};
  }

  std::int64_t max_start() const;
  bool active(NodeId node, std::int64_t round) const {
    return round >= starts[static_cast<std::size_t>(node)];
  }
};

// A dynamic graph in eventually-periodic form: explicit rounds 1..prefix_length,
// then the period list repeated forever. Construction enforces the round
// invariants (active nodes carry self-loops, passive nodes are isolated) and
// that every node is active once the periodic part begins.
class DynamicGraph {
 public:
  DynamicGraph(NodeId n, std::vector<DirectedGraph> prefix,
               std::vector<DirectedGraph> period, ActivationSchedule schedule);

  NodeId node_count() const { return n_; }
  std::int64_t prefix_length() const { return static_cast<std::int64_t>(prefix_.size()); }
  std::int64_t period_length() const { return static_cast<std::int64_t>(period_.size()); }
  const std::vector<DirectedGraph>& prefix() const { return prefix_; }
  const std::vector<DirectedGraph>& period() const { return period_; }
  const ActivationSchedule& schedule() const { return schedule_; }

  const DirectedGraph& at(std::int64_t round) const;  // round >= 1

 private:
  NodeId n_;
  std::vector<DirectedGraph> prefix_;
  std::vector<DirectedGraph> period_;
  ActivationSchedule schedule_;
};

// G(t : t2), the left-to-right fold of compose over rounds t..t2.
DirectedGraph interval_product(const DynamicGraph& g, std::int64_t t, std::int64_t t2);

// Smallest d <= d_max such that every window G(t+1 : t+d) with t >= from_round
// connects every ordered pair. Eventual periodicity makes the check over the
// prefix plus one period exhaustive.
std::optional<std::int64_t> dynamic_diameter(const DynamicGraph& g,
                                             std::int64_t from_round,
                                             std::int64_t d_max);

// True iff no node has an incoming arc from another node before its own start
// round, scanning the prefix and one period.
bool diffusive_start_valid(const DynamicGraph& g);

// Builders.
DynamicGraph build_directed_ring(NodeId length);           // L >= 2, synchronous starts
DynamicGraph build_bidirectional_ring(NodeId length);      // m >= 3, synchronous starts
DynamicGraph build_thm4_schedule(NodeId half_size);        // L >= 2, 2L nodes, diffusive

// Static base graph gated by an activation schedule: an arc appears once both
// endpoints are active; self-loops are added for active nodes.
DynamicGraph schedule_static(const DirectedGraph& base, ActivationSchedule schedule);

// JSON graph file format:
//   {"n": int, "prefix": [[[i,j],...] per round], "period": [...], "starts": [...]}
nlohmann::json graph_to_json(const DynamicGraph& g);
DynamicGraph graph_from_json(const nlohmann::json& doc);

// CLI shorthand: "ring:directed:L", "ring:bidir:m", "thm4:L". Returns nullopt
// if the spec is not a shorthand (callers then treat it as a file path).
// A starts override re-gates the ring builders; thm4 carries its own schedule.
std::optional<DynamicGraph> parse_graph_shorthand(
    std::string_view spec, const std::optional<std::vector<std::int64_t>>& starts);

}  // namespace syncsmith
