#include "syncsmith/sequence.hpp"

#include <numeric>
#include <unordered_map>

#include "syncsmith/errors.hpp"

namespace syncsmith {

SequenceTape second_order_tape(const FiniteAlgorithm& alg, State q0, State q1,
                               std::int64_t length) {
  alg.require_state(q0);
  alg.require_state(q1);
  if (length < 2) raise(ErrorCode::SchemaError, "tape length must be >= 2");
  SequenceTape tape;
  tape.generator = "second-order(" + alg.state_name(q0) + "," + alg.state_name(q1) + ")";
  tape.values.reserve(static_cast<std::size_t>(length));
  tape.values.push_back(q0);
  tape.values.push_back(q1);
  while (tape.length() < length) {
    State prev = tape.values[tape.values.size() - 2];
    State cur = tape.values.back();
    tape.values.push_back(
        alg.transition(cur, MessageBag{alg.message_of(cur), alg.message_of(prev)}));
  }
  return tape;
}

namespace {

// First repeat in the orbit of a deterministic step gives the minimal tail
// and cycle directly.
PeriodicityCertificate orbit_certificate(std::int64_t key_space,
                                         const std::function<std::int64_t()>& advance,
                                         std::int64_t first_key) {
  std::unordered_map<std::int64_t, std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(std::min<std::int64_t>(key_space, 1 << 20)));
  std::int64_t key = first_key;
  for (std::int64_t r = 0; r <= key_space + 1; ++r) {
    auto [it, inserted] = seen.emplace(key, r);
    if (!inserted) return PeriodicityCertificate{it->second + 1, r - it->second};
    key = advance();
  }
  raise(ErrorCode::Internal, "orbit walk exceeded the pigeonhole bound");
}

}  // namespace

PeriodicityCertificate find_period_first_order(std::int64_t state_space_size,
                                               const std::function<State(State)>& step,
                                               State x0) {
  if (state_space_size < 1)
    raise(ErrorCode::SchemaError, "state space must be nonempty");
  State x = x0;
  return orbit_certificate(
      state_space_size,
      [&]() {
        x = step(x);
        return x;
      },
      x0);
}

PeriodicityCertificate find_period_second_order(
    std::int64_t state_space_size, const std::function<State(State, State)>& step,
    State q0, State q1) {
  if (state_space_size < 1)
    raise(ErrorCode::SchemaError, "state space must be nonempty");
  State a = q0, b = q1;
  auto key = [&](State x, State y) { return x * state_space_size + y; };
  return orbit_certificate(
      state_space_size * state_space_size,
      [&]() {
        State next = step(a, b);
        a = b;
        b = next;
        return key(a, b);
      },
      key(a, b));
}

PeriodicityCertificate second_order_certificate(const FiniteAlgorithm& alg,
                                                State q0, State q1) {
  std::int64_t size = alg.state_count();
  alg.require_state(q0);
  alg.require_state(q1);
  return find_period_second_order(
      size,
      [&](State prev, State cur) {
        return alg.transition(cur,
                              MessageBag{alg.message_of(cur), alg.message_of(prev)});
      },
      q0, q1);
}

BigUint lcm_upto(std::int64_t a) {
  if (a < 1) raise(ErrorCode::SchemaError, "lcm_upto needs a >= 1");
  BigUint acc(1);
  for (std::int64_t k = 2; k <= a; ++k) {
    std::uint64_t g = std::gcd(acc.mod_word(static_cast<std::uint64_t>(k)),
                               static_cast<std::uint64_t>(k));
    acc.mul_word(static_cast<std::uint64_t>(k) / g);
  }
  return acc;
}

PairTapes pair_tape_thm2(const FiniteAlgorithm& alg, State p0, State q0, State q1,
                         std::int64_t length) {
  alg.require_state(p0);
  alg.require_state(q0);
  alg.require_state(q1);
  if (length < 2) raise(ErrorCode::SchemaError, "tape length must be >= 2");

  auto step_p = [&](State p, State q, State q_next) {
    return alg.transition(
        p, MessageBag{alg.message_of(q), alg.message_of(p), alg.message_of(q_next)});
  };
  auto step_q = [&](State q, State p_prev, State p) {
    return alg.transition(
        q, MessageBag{alg.message_of(p_prev), alg.message_of(q), alg.message_of(p)});
  };

  // The joint evolution is first-order on triples (p^{r-1}, p^r, q^r); the
  // q-recurrence applies from r = 1 only, since q^1 is a seed.
  std::vector<State> p{p0, step_p(p0, q0, q1)};
  std::vector<State> q{q0, q1};
  auto extend = [&]() {
    std::size_t r = q.size() - 1;  // have p^0..p^r and q^0..q^r
    q.push_back(step_q(q[r], p[r - 1], p[r]));
    p.push_back(step_p(p[r], q[r], q[r + 1]));
  };

  std::int64_t size = alg.state_count();
  std::int64_t triple_space = size * size * size;
  std::unordered_map<std::int64_t, std::int64_t> seen;
  std::int64_t tail = -1, cycle = -1;
  for (std::int64_t r = 1; r <= triple_space + 2; ++r) {
    while (static_cast<std::int64_t>(q.size()) <= r) extend();
    std::int64_t key = (p[static_cast<std::size_t>(r - 1)] * size +
                        p[static_cast<std::size_t>(r)]) * size +
                       q[static_cast<std::size_t>(r)];
    auto [it, inserted] = seen.emplace(key, r);
    if (!inserted) {
      tail = it->second;  // triples repeat from index `tail`
      cycle = r - it->second;
      break;
    }
  }
  if (tail < 0) raise(ErrorCode::Internal, "pair orbit walk exceeded the pigeonhole bound");

  // Project to the pair sequence (p^r, q^r): its minimal period divides the
  // triple cycle, and the periodic range may reach further left.
  std::int64_t need = tail + 2 * cycle + 2;
  while (static_cast<std::int64_t>(q.size()) < need) extend();
  auto pair_eq = [&](std::int64_t r1, std::int64_t r2) {
    return p[static_cast<std::size_t>(r1)] == p[static_cast<std::size_t>(r2)] &&
           q[static_cast<std::size_t>(r1)] == q[static_cast<std::size_t>(r2)];
  };
  std::int64_t L = cycle;
  for (std::int64_t d = 1; d < cycle; ++d) {
    if (cycle % d != 0) continue;
    bool ok = true;
    for (std::int64_t r = tail; r <= tail + cycle && ok; ++r) ok = pair_eq(r, r + d);
    if (ok) {
      L = d;
      break;
    }
  }
  std::int64_t from = tail;
  while (from > 0 && pair_eq(from - 1, from - 1 + L)) --from;

  while (static_cast<std::int64_t>(q.size()) < length) extend();
  PairTapes out;
  out.p.values.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(length));
  out.q.values.assign(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(length));
  out.p.generator = "thm2-p(" + alg.state_name(p0) + "," + alg.state_name(q0) + "," +
                    alg.state_name(q1) + ")";
  out.q.generator = "thm2-q(" + alg.state_name(p0) + "," + alg.state_name(q0) + "," +
                    alg.state_name(q1) + ")";
  out.certificate = PeriodicityCertificate{from + 1, L};
  return out;
}

CherryFamily::CherryFamily(std::int64_t L, std::vector<std::vector<State>> rows)
    : L_(L), rows_(std::move(rows)) {}

State CherryFamily::at(std::int64_t k, std::int64_t r) const {
  if (k < 0 || k >= row_count())
    raise(ErrorCode::SchemaError, "cherry row " + std::to_string(k) + " not materialized");
  if (r < 0) raise(ErrorCode::SchemaError, "cherry index must be >= 0");
  if (r >= 4 * L_) r = L_ - 1 + (r - (L_ - 1)) % L_;
  return rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
}

CherryFamily cherry_family(const FiniteAlgorithm& alg, State q00, std::int64_t k_max,
                           std::int64_t max_period) {
  if (!alg.enumerable())
    raise(ErrorCode::Unenumerable, "cherry families need an enumerable state set");
  if (!alg.is_initial(q00))
    raise(ErrorCode::UnknownState,
          "cherry seed '" + alg.state_name(q00) + "' must be an initial state");
  if (k_max < 1) raise(ErrorCode::SchemaError, "k_max must be >= 1");

  BigUint lcm = lcm_upto(alg.state_count());
  auto small = lcm.to_u64();
  if (!small || static_cast<std::int64_t>(*small) > max_period)
    raise(ErrorCode::SizeBudget,
          "normalized period lcm(1..|Q|) = " + lcm.to_string() + " exceeds the cap " +
              std::to_string(max_period));
  // The construction needs L >= 2; any multiple of lcm(1..|Q|) keeps every
  // row L-periodic from index L-1, so the one-state corner case doubles it.
  std::int64_t L = std::max<std::int64_t>(static_cast<std::int64_t>(*small), 2);

  auto solo_step = [&](State s) {
    return alg.transition(s, MessageBag{alg.message_of(s)});
  };

  std::vector<std::vector<State>> rows;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    State seed;
    if (k == 0) {
      seed = q00;
    } else if (k == 1) {
      rows.push_back(rows[0]);  // rule (a)
      continue;
    } else {
      const auto& two_back = rows[static_cast<std::size_t>(k - 2)];
      const auto& one_back = rows[static_cast<std::size_t>(k - 1)];
      State base = two_back[static_cast<std::size_t>(2 * L - 1)];
      MessageBag bag{alg.message_of(base)};
      for (std::int64_t r = L; r <= 2 * L - 1; ++r)
        bag.insert(alg.message_of(one_back[static_cast<std::size_t>(r)]));
      seed = alg.transition(base, bag);  // rule (b)
    }
    std::vector<State> row;
    row.reserve(static_cast<std::size_t>(4 * L));
    row.push_back(seed);
    for (std::int64_t r = 1; r < 4 * L; ++r) row.push_back(solo_step(row.back()));  // rule (c)
    rows.push_back(std::move(row));
  }
  return CherryFamily(L, std::move(rows));
}

}  // namespace syncsmith
