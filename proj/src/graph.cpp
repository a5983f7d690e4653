#include "syncsmith/graph.hpp"

#include <algorithm>
#include <charconv>

#include "syncsmith/errors.hpp"

namespace syncsmith {

namespace {

// Row-major bit adjacency used for graph algebra.
struct AdjBits {
  NodeId n = 0;
  std::size_t row_words = 0;
  std::vector<std::uint64_t> bits;

  explicit AdjBits(NodeId n_)
      : n(n_), row_words((static_cast<std::size_t>(n_) + 63) / 64),
        bits(static_cast<std::size_t>(n_) * row_words, 0) {}

  void set(NodeId i, NodeId j) {
    bits[static_cast<std::size_t>(i) * row_words + static_cast<std::size_t>(j) / 64] |=
        (1ull << (static_cast<std::size_t>(j) % 64));
  }
  bool get(NodeId i, NodeId j) const {
    return (bits[static_cast<std::size_t>(i) * row_words + static_cast<std::size_t>(j) / 64] >>
            (static_cast<std::size_t>(j) % 64)) & 1ull;
  }

  static AdjBits from_graph(const DirectedGraph& g) {
    AdjBits a(g.n);
    for (const auto& [i, j] : g.arcs) a.set(i, j);
    return a;
  }

  DirectedGraph to_graph() const {
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (get(i, j)) arcs.emplace_back(i, j);
    DirectedGraph g;
    g.n = n;
    g.arcs = std::move(arcs);  // emitted in sorted order already
    return g;
  }

  bool complete() const {
    // All pairs present, including the diagonal.
    for (NodeId i = 0; i < n; ++i) {
      const std::uint64_t* row = &bits[static_cast<std::size_t>(i) * row_words];
      for (std::size_t w = 0; w + 1 < row_words; ++w)
        if (row[w] != ~0ull) return false;
      std::size_t tail = static_cast<std::size_t>(n) - 64 * (row_words - 1);
      std::uint64_t mask = tail == 64 ? ~0ull : ((1ull << tail) - 1);
      if ((row[row_words - 1] & mask) != mask) return false;
    }
    return true;
  }
};

AdjBits compose_bits(const AdjBits& a, const AdjBits& b) {
  AdjBits out(a.n);
  for (NodeId i = 0; i < a.n; ++i) {
    std::uint64_t* dst = &out.bits[static_cast<std::size_t>(i) * out.row_words];
    for (NodeId k = 0; k < a.n; ++k) {
      if (!a.get(i, k)) continue;
      const std::uint64_t* src = &b.bits[static_cast<std::size_t>(k) * b.row_words];
      for (std::size_t w = 0; w < out.row_words; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

}  // namespace

DirectedGraph DirectedGraph::from_arcs(NodeId n, std::vector<Arc> arcs) {
  if (n < 1) raise(ErrorCode::MalformedGraph, "graph needs at least one node");
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto [a, b] = arcs[i];
    if (a < 0 || a >= n || b < 0 || b >= n)
      raise(ErrorCode::MalformedGraph,
            "arc (" + std::to_string(a) + "," + std::to_string(b) +
                ") outside node range [0," + std::to_string(n) + ")");
    if (i > 0 && arcs[i] == arcs[i - 1])
      raise(ErrorCode::MalformedGraph, "duplicate arc (" + std::to_string(a) +
                                           "," + std::to_string(b) + ")");
  }
  return DirectedGraph{n, std::move(arcs)};
}

bool DirectedGraph::has_arc(NodeId i, NodeId j) const {
  return std::binary_search(arcs.begin(), arcs.end(), Arc{i, j});
}

DirectedGraph compose(const DirectedGraph& g1, const DirectedGraph& g2) {
  if (g1.n != g2.n)
    raise(ErrorCode::SizeMismatch,
          "compose: node counts differ (" + std::to_string(g1.n) + " vs " +
              std::to_string(g2.n) + ")");
  return compose_bits(AdjBits::from_graph(g1), AdjBits::from_graph(g2)).to_graph();
}

std::int64_t ActivationSchedule::max_start() const {
  std::int64_t m = 1;
  for (std::int64_t s : starts) m = std::max(m, s);
  return m;
}

DynamicGraph::DynamicGraph(NodeId n, std::vector<DirectedGraph> prefix,
                           std::vector<DirectedGraph> period,
                           ActivationSchedule schedule)
    : n_(n), prefix_(std::move(prefix)), period_(std::move(period)),
      schedule_(std::move(schedule)) {
  if (n_ < 1) raise(ErrorCode::MalformedGraph, "graph needs at least one node");
  if (period_.empty())
    raise(ErrorCode::MalformedGraph, "period must contain at least one round");
  if (static_cast<NodeId>(schedule_.starts.size()) != n_)
    raise(ErrorCode::MalformedGraph, "schedule size does not match node count");
  for (std::int64_t s : schedule_.starts)
    if (s < 1) raise(ErrorCode::MalformedGraph, "start rounds must be >= 1");
  if (schedule_.max_start() > prefix_length() + 1)
    raise(ErrorCode::MalformedGraph,
          "every node must be active once the periodic part begins");

  auto check_round = [&](const DirectedGraph& g, std::int64_t t) {
    if (g.n != n_)
      raise(ErrorCode::MalformedGraph,
            "round " + std::to_string(t) + " has wrong node count");
    std::vector<bool> touched(static_cast<std::size_t>(n_), false);
    for (const auto& [a, b] : g.arcs) {
      touched[static_cast<std::size_t>(a)] = true;
      touched[static_cast<std::size_t>(b)] = true;
    }
    for (NodeId i = 0; i < n_; ++i) {
      if (schedule_.active(i, t)) {
        if (!g.has_arc(i, i))
          raise(ErrorCode::MalformedGraph,
                "active node " + std::to_string(i) + " lacks its self-loop at round " +
                    std::to_string(t));
      } else if (touched[static_cast<std::size_t>(i)]) {
        raise(ErrorCode::MalformedGraph,
              "passive node " + std::to_string(i) + " has an incident arc at round " +
                  std::to_string(t));
      }
    }
  };

  for (std::int64_t t = 1; t <= prefix_length(); ++t) check_round(prefix_[static_cast<std::size_t>(t - 1)], t);
  for (std::int64_t k = 0; k < period_length(); ++k)
    check_round(period_[static_cast<std::size_t>(k)], prefix_length() + 1 + k);
}

const DirectedGraph& DynamicGraph::at(std::int64_t round) const {
  if (round < 1) raise(ErrorCode::MalformedGraph, "rounds are numbered from 1");
  if (round <= prefix_length()) return prefix_[static_cast<std::size_t>(round - 1)];
  return period_[static_cast<std::size_t>((round - prefix_length() - 1) % period_length())];
}

DirectedGraph interval_product(const DynamicGraph& g, std::int64_t t, std::int64_t t2) {
  if (t < 1 || t2 < t)
    raise(ErrorCode::MalformedGraph, "interval_product needs 1 <= t <= t2");
  AdjBits acc = AdjBits::from_graph(g.at(t));
  for (std::int64_t r = t + 1; r <= t2; ++r)
    acc = compose_bits(acc, AdjBits::from_graph(g.at(r)));
  return acc.to_graph();
}

std::optional<std::int64_t> dynamic_diameter(const DynamicGraph& g,
                                             std::int64_t from_round,
                                             std::int64_t d_max) {
  if (from_round < 1 || d_max < 1)
    raise(ErrorCode::MalformedGraph, "dynamic_diameter needs from_round >= 1 and d_max >= 1");
  // Windows starting at t > prefix repeat with the period, so these t cover
  // every distinct window with t >= from_round.
  std::int64_t t_hi = std::max(from_round, g.prefix_length()) + g.period_length();
  std::vector<AdjBits> windows;
  windows.reserve(static_cast<std::size_t>(t_hi - from_round + 1));
  for (std::int64_t t = from_round; t <= t_hi; ++t)
    windows.push_back(AdjBits::from_graph(g.at(t + 1)));  // d = 1: G(t+1 : t+1)

  for (std::int64_t d = 1; d <= d_max; ++d) {
    bool all = true;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      if (!windows[w].complete()) all = false;
    }
    if (all) return d;
    if (d == d_max) break;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      std::int64_t t = from_round + static_cast<std::int64_t>(w);
      windows[w] = compose_bits(windows[w], AdjBits::from_graph(g.at(t + d + 1)));
    }
  }
  return std::nullopt;
}

bool diffusive_start_valid(const DynamicGraph& g) {
  std::int64_t t_hi = g.prefix_length() + g.period_length();
  for (std::int64_t t = 1; t <= t_hi; ++t) {
    for (const auto& [a, b] : g.at(t).arcs) {
      if (a != b && t < g.schedule().starts[static_cast<std::size_t>(b)]) return false;
    }
  }
  return true;
}

DynamicGraph schedule_static(const DirectedGraph& base, ActivationSchedule schedule) {
  NodeId n = base.n;
  if (static_cast<NodeId>(schedule.starts.size()) != n)
    raise(ErrorCode::MalformedGraph, "schedule size does not match node count");
  auto round_graph = [&](std::int64_t t) {
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
      if (schedule.active(i, t)) arcs.emplace_back(i, i);
    for (const auto& [a, b] : base.arcs)
      if (a != b && schedule.active(a, t) && schedule.active(b, t))
        arcs.emplace_back(a, b);
    return DirectedGraph::from_arcs(n, std::move(arcs));
  };
  std::int64_t settle = schedule.max_start();
  std::vector<DirectedGraph> prefix;
  for (std::int64_t t = 1; t < settle; ++t) prefix.push_back(round_graph(t));
  std::vector<DirectedGraph> period{round_graph(settle)};
  return DynamicGraph(n, std::move(prefix), std::move(period), std::move(schedule));
}

DynamicGraph build_directed_ring(NodeId length) {
  if (length < 2) raise(ErrorCode::MalformedGraph, "directed ring needs length >= 2");
  std::vector<Arc> arcs;
  for (NodeId i = 0; i < length; ++i) arcs.emplace_back(i, (i + 1) % length);
  return schedule_static(DirectedGraph::from_arcs(length, std::move(arcs)),
                         ActivationSchedule::synchronous(length));
}

DynamicGraph build_bidirectional_ring(NodeId length) {
  if (length < 3) raise(ErrorCode::MalformedGraph, "bidirectional ring needs length >= 3");
  std::vector<Arc> arcs;
  for (NodeId i = 0; i < length; ++i) {
    arcs.emplace_back(i, (i + 1) % length);
    arcs.emplace_back((i + 1) % length, i);
  }
  return schedule_static(DirectedGraph::from_arcs(length, std::move(arcs)),
                         ActivationSchedule::synchronous(length));
}

DynamicGraph build_thm4_schedule(NodeId half_size) {
  const NodeId L = half_size;
  if (L < 2) raise(ErrorCode::MalformedGraph, "schedule needs half size >= 2");
  const NodeId n = 2 * L;

  auto arc_present = [&](NodeId i, NodeId j, std::int64_t t) {
    if (t < 2 + std::max(i % L, j % L)) return false;
    if (i == j) return true;
    std::int64_t block = ((t - 1) / L) % 4;
    if (block == 0 && i <= L - 1 && j == L + (t - 1) % L) return true;
    if (block == 2 && i >= L && j == (t - 1) % L) return true;
    return false;
  };
  auto round_graph = [&](std::int64_t t) {
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (arc_present(i, j, t)) arcs.emplace_back(i, j);
    return DirectedGraph::from_arcs(n, std::move(arcs));
  };

  std::vector<DirectedGraph> prefix, period;
  for (std::int64_t t = 1; t <= 4 * L; ++t) prefix.push_back(round_graph(t));
  for (std::int64_t t = 4 * L + 1; t <= 8 * L; ++t) period.push_back(round_graph(t));

  ActivationSchedule schedule;
  for (NodeId i = 0; i < n; ++i) schedule.starts.push_back(i % L + 2);
  return DynamicGraph(n, std::move(prefix), std::move(period), std::move(schedule));
}

nlohmann::json graph_to_json(const DynamicGraph& g) {
  auto rounds_json = [](const std::vector<DirectedGraph>& rounds) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rounds) {
      nlohmann::json arcs = nlohmann::json::array();
      for (const auto& [a, b] : r.arcs) arcs.push_back({a, b});
      out.push_back(std::move(arcs));
    }
    return out;
  };
  return nlohmann::json{{"n", g.node_count()},
                        {"prefix", rounds_json(g.prefix())},
                        {"period", rounds_json(g.period())},
                        {"starts", g.schedule().starts}};
}

DynamicGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("period") ||
      !doc.contains("starts"))
    raise(ErrorCode::SchemaError, "graph file needs n, period and starts");
  NodeId n = doc.at("n").get<NodeId>();
  auto parse_rounds = [&](const nlohmann::json& arr) {
    if (!arr.is_array()) raise(ErrorCode::SchemaError, "round list must be an array");
    std::vector<DirectedGraph> rounds;
    for (const auto& round : arr) {
      std::vector<Arc> arcs;
      for (const auto& arc : round) {
        if (!arc.is_array() || arc.size() != 2)
          raise(ErrorCode::SchemaError, "arc must be a pair [i, j]");
        arcs.emplace_back(arc.at(0).get<NodeId>(), arc.at(1).get<NodeId>());
      }
      rounds.push_back(DirectedGraph::from_arcs(n, std::move(arcs)));
    }
    return rounds;
  };
  std::vector<DirectedGraph> prefix;
  if (doc.contains("prefix")) prefix = parse_rounds(doc.at("prefix"));
  std::vector<DirectedGraph> period = parse_rounds(doc.at("period"));
  ActivationSchedule schedule{doc.at("starts").get<std::vector<std::int64_t>>()};
  return DynamicGraph(n, std::move(prefix), std::move(period), std::move(schedule));
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<DynamicGraph> parse_graph_shorthand(
    std::string_view spec, const std::optional<std::vector<std::int64_t>>& starts) {
  auto build_ring = [&](std::string_view size_str, bool bidir) -> DynamicGraph {
    auto size = parse_int(size_str);
    if (!size || *size < (bidir ? 3 : 2))
      raise(ErrorCode::MalformedGraph, "bad ring size in graph spec");
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < *size; ++i) {
      arcs.emplace_back(i, (i + 1) % *size);
      if (bidir) arcs.emplace_back((i + 1) % *size, i);
    }
    auto base = DirectedGraph::from_arcs(*size, std::move(arcs));
    ActivationSchedule sched = ActivationSchedule::synchronous(*size);
    if (starts) {
      if (static_cast<NodeId>(starts->size()) != *size)
        raise(ErrorCode::MalformedGraph, "starts list does not match graph size");
      sched.starts = *starts;
    }
    return schedule_static(base, std::move(sched));
  };

  if (spec.rfind("ring:directed:", 0) == 0)
    return build_ring(spec.substr(14), false);
  if (spec.rfind("ring:bidir:", 0) == 0)
    return build_ring(spec.substr(11), true);
  if (spec.rfind("thm4:", 0) == 0) {
    auto size = parse_int(spec.substr(5));
    if (!size || *size < 2)
      raise(ErrorCode::MalformedGraph, "bad half size in thm4 graph spec");
    if (starts)
      raise(ErrorCode::MalformedGraph,
            "thm4 schedules carry their own activation times");
    return build_thm4_schedule(*size);
  }
  return std::nullopt;
}

}  // namespace syncsmith
