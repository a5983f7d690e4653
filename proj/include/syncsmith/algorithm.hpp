#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncsmith/multiset.hpp"

namespace syncsmith {

// An agent program (Q, Q0, M, sigma, tau) plus the clock readout. States and
// messages are int64 tokens; enumerable algorithms use ids 0..|Q|-1 with a
// name table, while reference algorithms with unbounded state (flood-max) use
// the token value itself.
class FiniteAlgorithm {
 public:
  using MessageFn = std::function<Message(State)>;
  using TransitionFn = std::function<State(State, const MessageBag&)>;
  using ClockFn = std::function<int(State)>;
  using NameFn = std::function<std::string(State)>;
  using ParseFn = std::function<std::optional<State>(std::string_view)>;

  static FiniteAlgorithm make_enumerable(std::string name,
                                         std::vector<std::string> state_names,
                                         std::vector<State> initial_states,
                                         int period, MessageFn message,
                                         TransitionFn transition, ClockFn clock);

  static FiniteAlgorithm make_unbounded(std::string name,
                                        std::vector<State> initial_states,
                                        int period, MessageFn message,
                                        TransitionFn transition, ClockFn clock,
                                        NameFn state_name, ParseFn parse_state);

  const std::string& name() const { return name_; }
  bool enumerable() const { return enumerable_; }
  int period() const { return period_; }

  // Enumerable algorithms only.
  std::int64_t state_count() const;
  const std::vector<std::string>& state_names() const { return state_names_; }

  const std::vector<State>& initial_states() const { return initial_states_; }
  bool is_initial(State q) const;
  bool is_state(State q) const;
  void require_state(State q) const;  // throws UnknownState

  Message message_of(State q) const;
  // Bag must be nonempty; the result is checked against Q for enumerable
  // algorithms, so a non-closed table surfaces as UnknownState immediately.
  State transition(State q, const MessageBag& received) const;
  int clock_of(State q) const;

  std::string state_name(State q) const;
  std::optional<State> find_state(std::string_view name) const;

 private:
  FiniteAlgorithm() = default;

  std::string name_;
  bool enumerable_ = true;
  std::vector<std::string> state_names_;
  std::vector<State> initial_states_;
  int period_ = 2;
  MessageFn message_;
  TransitionFn transition_;
  ClockFn clock_;
  NameFn name_fn_;
  ParseFn parse_fn_;
};

// Exhaustively applies the transition to every state and every multiset over
// the sent-message alphabet up to the given size, checking closure in Q.
// Returns the number of (state, multiset) pairs visited.
std::int64_t verify_closure(const FiniteAlgorithm& alg, int max_multiset_size);

}  // namespace syncsmith
