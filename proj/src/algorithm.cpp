#include "syncsmith/algorithm.hpp"

#include <set>

#include "syncsmith/errors.hpp"

namespace syncsmith {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::PartialTable: return "PartialTable";
    case ErrorCode::ClockRange: return "ClockRange";
    case ErrorCode::Unenumerable: return "Unenumerable";
    case ErrorCode::PredictionMismatch: return "PredictionMismatch";
    case ErrorCode::SizeBudget: return "SizeBudget";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

FiniteAlgorithm FiniteAlgorithm::make_enumerable(
    std::string name, std::vector<std::string> state_names,
    std::vector<State> initial_states, int period, MessageFn message,
    TransitionFn transition, ClockFn clock) {
  if (period < 2) raise(ErrorCode::SchemaError, "period P must be > 1");
  if (state_names.empty())
    raise(ErrorCode::SchemaError, "state set must be nonempty");
  if (initial_states.empty())
    raise(ErrorCode::SchemaError, "initial state set must be nonempty");
  FiniteAlgorithm alg;
  alg.name_ = std::move(name);
  alg.enumerable_ = true;
  alg.state_names_ = std::move(state_names);
  alg.initial_states_ = std::move(initial_states);
  alg.period_ = period;
  alg.message_ = std::move(message);
  alg.transition_ = std::move(transition);
  alg.clock_ = std::move(clock);
  for (State q : alg.initial_states_) alg.require_state(q);
  return alg;
}

FiniteAlgorithm FiniteAlgorithm::make_unbounded(
    std::string name, std::vector<State> initial_states, int period,
    MessageFn message, TransitionFn transition, ClockFn clock,
    NameFn state_name, ParseFn parse_state) {
  if (period < 2) raise(ErrorCode::SchemaError, "period P must be > 1");
  if (initial_states.empty())
    raise(ErrorCode::SchemaError, "initial state set must be nonempty");
  FiniteAlgorithm alg;
  alg.name_ = std::move(name);
  alg.enumerable_ = false;
  alg.initial_states_ = std::move(initial_states);
  alg.period_ = period;
  alg.message_ = std::move(message);
  alg.transition_ = std::move(transition);
  alg.clock_ = std::move(clock);
  alg.name_fn_ = std::move(state_name);
  alg.parse_fn_ = std::move(parse_state);
  return alg;
}

std::int64_t FiniteAlgorithm::state_count() const {
  if (!enumerable_)
    raise(ErrorCode::Unenumerable,
          "algorithm '" + name_ + "' has no enumerable state set");
  return static_cast<std::int64_t>(state_names_.size());
}

bool FiniteAlgorithm::is_initial(State q) const {
  for (State s : initial_states_)
    if (s == q) return true;
  return false;
}

bool FiniteAlgorithm::is_state(State q) const {
  if (!enumerable_) return q >= 0;
  return q >= 0 && q < static_cast<State>(state_names_.size());
}

void FiniteAlgorithm::require_state(State q) const {
  if (!is_state(q))
    raise(ErrorCode::UnknownState, "state token " + std::to_string(q) +
                                       " is outside the state set of '" +
                                       name_ + "'");
}

Message FiniteAlgorithm::message_of(State q) const {
  require_state(q);
  return message_(q);
}

State FiniteAlgorithm::transition(State q, const MessageBag& received) const {
  require_state(q);
  if (received.empty())
    raise(ErrorCode::MalformedGraph,
          "transition applied to an empty multiset; active nodes always hear "
          "their own message");
  State next = transition_(q, received);
  require_state(next);
  return next;
}

int FiniteAlgorithm::clock_of(State q) const {
  require_state(q);
  int c = clock_(q);
  if (c < 0 || c >= period_)
    raise(ErrorCode::ClockRange, "clock value " + std::to_string(c) +
                                     " outside [0, " +
                                     std::to_string(period_) + ")");
  return c;
}

std::string FiniteAlgorithm::state_name(State q) const {
  require_state(q);
  if (enumerable_) return state_names_[static_cast<std::size_t>(q)];
  return name_fn_(q);
}

std::optional<State> FiniteAlgorithm::find_state(std::string_view name) const {
  if (enumerable_) {
    for (std::size_t i = 0; i < state_names_.size(); ++i)
      if (state_names_[i] == name) return static_cast<State>(i);
    return std::nullopt;
  }
  return parse_fn_(name);
}

namespace {

std::int64_t walk_multisets(const FiniteAlgorithm& alg, State q,
                            const std::vector<Message>& alphabet,
                            MessageBag& bag, std::size_t from, int remaining) {
  std::int64_t visited = 0;
  if (!bag.empty()) {
    alg.transition(q, bag);  // throws UnknownState on escape from Q
    visited = 1;
  }
  if (remaining == 0) return visited;
  for (std::size_t i = from; i < alphabet.size(); ++i) {
    MessageBag extended = bag;
    extended.insert(alphabet[i]);
    visited += walk_multisets(alg, q, alphabet, extended, i, remaining - 1);
  }
  return visited;
}

}  // namespace

std::int64_t verify_closure(const FiniteAlgorithm& alg, int max_multiset_size) {
  std::int64_t n = alg.state_count();  // raises Unenumerable for flood-max
  std::set<Message> alphabet_set;
  for (State q = 0; q < n; ++q) alphabet_set.insert(alg.message_of(q));
  std::vector<Message> alphabet(alphabet_set.begin(), alphabet_set.end());

  std::int64_t visited = 0;
  for (State q = 0; q < n; ++q) {
    MessageBag empty;
    visited += walk_multisets(alg, q, alphabet, empty, 0, max_multiset_size);
  }
  return visited;
}

}  // namespace syncsmith
