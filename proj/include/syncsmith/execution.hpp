#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "syncsmith/algorithm.hpp"
#include "syncsmith/graph.hpp"

namespace syncsmith {

// Execution matrix: column 0 holds initial states, column t the states at the
// end of round t.
struct Trace {
  NodeId n = 0;
  std::int64_t horizon = 0;
  int period = 2;
  std::vector<std::vector<State>> states;  // [t][node]
  std::vector<std::vector<int>> clocks;    // [t][node]

  State state(NodeId node, std::int64_t t) const {
    return states[static_cast<std::size_t>(t)][static_cast<std::size_t>(node)];
  }
  int clock(NodeId node, std::int64_t t) const {
    return clocks[static_cast<std::size_t>(t)][static_cast<std::size_t>(node)];
  }
};

struct SyncViolation {
  NodeId node = 0;
  std::int64_t round = 0;
  int expected = 0;
  int actual = 0;
};

struct SyncVerdict {
  bool synchronized = false;
  std::int64_t t0 = -1;  // minimal round from which clocks track t + c
  int c = -1;
  std::optional<SyncViolation> violation;
};

// One synchronous round. Active nodes must carry their self-loop and passive
// nodes must be isolated in `arcs`; each active node receives the multiset of
// messages over its incoming arcs and transitions, passive nodes hold.
std::vector<State> apply_round(const FiniteAlgorithm& alg,
                               const std::vector<State>& states,
                               const DirectedGraph& arcs,
                               const std::vector<bool>& active);

struct ExecOptions {
  // Permits initial states outside Q0 (arbitrary initialization).
  bool self_stabilizing = false;
};

Trace execute(const FiniteAlgorithm& alg, const DynamicGraph& graph,
              const std::vector<State>& init, std::int64_t horizon,
              const ExecOptions& options = {});

// Finds the minimal t0 <= horizon - min_suffix such that all clocks satisfy
// C_i(t) ≡ t + c (mod P) on [t0, horizon] for one constant c. The reported
// violation sits just below the longest such suffix (or at the final round
// when none exists), so it is re-checkable against the trace.
SyncVerdict check_mod_p_sync(const Trace& trace, int period, std::int64_t min_suffix);

// One JSON record per round: {"clocks": [...], "states": [names...], "t": t}.
void write_trace_jsonl(const Trace& trace, const FiniteAlgorithm& alg, std::ostream& out);

}  // namespace syncsmith
