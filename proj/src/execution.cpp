#include "syncsmith/execution.hpp"

#include <ostream>

#include <json.hpp>

#include "syncsmith/errors.hpp"

namespace syncsmith {

std::vector<State> apply_round(const FiniteAlgorithm& alg,
                               const std::vector<State>& states,
                               const DirectedGraph& arcs,
                               const std::vector<bool>& active) {
  const NodeId n = arcs.n;
  if (static_cast<NodeId>(states.size()) != n ||
      static_cast<NodeId>(active.size()) != n)
    raise(ErrorCode::SizeMismatch, "state vector does not match node count");

  for (NodeId i = 0; i < n; ++i) {
    if (active[static_cast<std::size_t>(i)] && !arcs.has_arc(i, i))
      raise(ErrorCode::MalformedGraph,
            "active node " + std::to_string(i) + " lacks its self-loop");
  }
  for (const auto& [a, b] : arcs.arcs) {
    if (!active[static_cast<std::size_t>(a)] || !active[static_cast<std::size_t>(b)])
      raise(ErrorCode::MalformedGraph,
            "arc (" + std::to_string(a) + "," + std::to_string(b) +
                ") touches a passive node");
  }

  // Messages depend on the sender's state only; compute them once.
  std::vector<Message> outgoing(static_cast<std::size_t>(n), 0);
  for (NodeId i = 0; i < n; ++i)
    if (active[static_cast<std::size_t>(i)])
      outgoing[static_cast<std::size_t>(i)] = alg.message_of(states[static_cast<std::size_t>(i)]);

  std::vector<MessageBag> inbox(static_cast<std::size_t>(n));
  for (const auto& [a, b] : arcs.arcs)
    inbox[static_cast<std::size_t>(b)].insert(outgoing[static_cast<std::size_t>(a)]);

  std::vector<State> next(states);
  for (NodeId i = 0; i < n; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    next[static_cast<std::size_t>(i)] =
        alg.transition(states[static_cast<std::size_t>(i)], inbox[static_cast<std::size_t>(i)]);
  }
  return next;
}

Trace execute(const FiniteAlgorithm& alg, const DynamicGraph& graph,
              const std::vector<State>& init, std::int64_t horizon,
              const ExecOptions& options) {
  const NodeId n = graph.node_count();
  if (static_cast<NodeId>(init.size()) != n)
    raise(ErrorCode::SizeMismatch, "initial state vector does not match node count");
  if (horizon < 1) raise(ErrorCode::HorizonTooSmall, "horizon must be >= 1");
  if (horizon < graph.schedule().max_start())
    raise(ErrorCode::HorizonTooSmall,
          "horizon " + std::to_string(horizon) + " ends before the last start round " +
              std::to_string(graph.schedule().max_start()));
  for (State q : init) {
    alg.require_state(q);
    if (!options.self_stabilizing && !alg.is_initial(q))
      raise(ErrorCode::UnknownState,
            "state '" + alg.state_name(q) +
                "' is not in Q0; pass the self-stabilizing flag for arbitrary "
                "initialization");
  }

  Trace trace;
  trace.n = n;
  trace.horizon = horizon;
  trace.period = alg.period();
  trace.states.reserve(static_cast<std::size_t>(horizon) + 1);
  trace.states.push_back(init);

  std::vector<bool> active(static_cast<std::size_t>(n), false);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    for (NodeId i = 0; i < n; ++i)
      active[static_cast<std::size_t>(i)] = graph.schedule().active(i, t);
    trace.states.push_back(apply_round(alg, trace.states.back(), graph.at(t), active));
  }

  trace.clocks.reserve(trace.states.size());
  for (const auto& column : trace.states) {
    std::vector<int> clocks(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) clocks[i] = alg.clock_of(column[i]);
    trace.clocks.push_back(std::move(clocks));
  }
  return trace;
}

SyncVerdict check_mod_p_sync(const Trace& trace, int period, std::int64_t min_suffix) {
  if (period < 2) raise(ErrorCode::SchemaError, "period P must be > 1");
  if (min_suffix < 1) raise(ErrorCode::SchemaError, "min_suffix must be >= 1");
  const std::int64_t T = trace.horizon;
  if (T < min_suffix)
    raise(ErrorCode::HorizonTooSmall,
          "trace horizon " + std::to_string(T) + " is shorter than min_suffix " +
              std::to_string(min_suffix));

  // Offset d_i(t) = C_i(t) - t mod P; a column is coherent when all offsets
  // agree, and a synchronized suffix is a run of coherent columns with one
  // common offset.
  auto offset = [&](NodeId i, std::int64_t t) {
    std::int64_t d = (trace.clock(i, t) - t) % period;
    return static_cast<int>(d < 0 ? d + period : d);
  };
  auto column_offset = [&](std::int64_t t) -> std::optional<int> {
    int c = offset(0, t);
    for (NodeId i = 1; i < trace.n; ++i)
      if (offset(i, t) != c) return std::nullopt;
    return c;
  };

  std::optional<int> tail = column_offset(T);
  std::int64_t suffix_start = T + 1;
  if (tail) {
    suffix_start = T;
    while (suffix_start > 0 && column_offset(suffix_start - 1) == tail) --suffix_start;
  }

  SyncVerdict verdict;
  if (tail && suffix_start <= T - min_suffix) {
    verdict.synchronized = true;
    verdict.t0 = suffix_start;
    verdict.c = *tail;
    return verdict;
  }

  // The round below the longest coherent suffix breaks it; report the first
  // node whose offset differs there (relative to the suffix constant, or to
  // node 0 when even the last column is incoherent).
  std::int64_t bad_round = tail ? suffix_start - 1 : T;
  int want = tail ? *tail : offset(0, bad_round);
  SyncViolation v;
  v.round = bad_round;
  for (NodeId i = 0; i < trace.n; ++i) {
    if (offset(i, bad_round) != want) {
      v.node = i;
      break;
    }
  }
  v.expected = static_cast<int>(((bad_round + want) % period + period) % period);
  v.actual = trace.clock(v.node, bad_round);
  verdict.synchronized = false;
  verdict.violation = v;
  return verdict;
}

void write_trace_jsonl(const Trace& trace, const FiniteAlgorithm& alg, std::ostream& out) {
  for (std::int64_t t = 0; t <= trace.horizon; ++t) {
    nlohmann::json names = nlohmann::json::array();
    for (NodeId i = 0; i < trace.n; ++i) names.push_back(alg.state_name(trace.state(i, t)));
    nlohmann::json record{{"t", t},
                          {"states", std::move(names)},
                          {"clocks", trace.clocks[static_cast<std::size_t>(t)]}};
    out << record.dump() << '\n';
  }
}

}  // namespace syncsmith
