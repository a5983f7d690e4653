#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "syncsmith/algorithm.hpp"
#include "syncsmith/bigint.hpp"

namespace syncsmith {

struct SequenceTape {
  std::vector<State> values;
  std::string generator;

  State at(std::int64_t r) const { return values[static_cast<std::size_t>(r)]; }
  std::int64_t length() const { return static_cast<std::int64_t>(values.size()); }
};

// Witness (ell, L) that a sequence satisfies values[r + L] = values[r] for all
// r >= ell - 1, with both components minimal.
struct PeriodicityCertificate {
  std::int64_t ell = 1;
  std::int64_t L = 1;
};

// q^{r+2} = tau(q^{r+1}, {{sigma(q^{r+1}), sigma(q^r)}}); seeds may be any
// states, not just Q0.
SequenceTape second_order_tape(const FiniteAlgorithm& alg, State q0, State q1,
                               std::int64_t length);

// Minimal certificate for x_{t+1} = step(x_t) over a state space of the given
// size; terminates within size + 1 steps.
PeriodicityCertificate find_period_first_order(std::int64_t state_space_size,
                                               const std::function<State(State)>& step,
                                               State x0);

// Minimal certificate for the second-order recurrence, via its consecutive
// pair orbit; terminates within size^2 + 1 steps.
PeriodicityCertificate find_period_second_order(
    std::int64_t state_space_size,
    const std::function<State(State, State)>& step, State q0, State q1);

// Certificate of the Eq.-style two-message recurrence for an algorithm.
PeriodicityCertificate second_order_certificate(const FiniteAlgorithm& alg,
                                                State q0, State q1);

// lcm(1, 2, ..., a) by iterated gcd folding; exact.
BigUint lcm_upto(std::int64_t a);

// The paired recurrences behind the bidirectional-ring construction:
//   p^{r+1} = tau(p^r, {{sigma(q^r), sigma(p^r), sigma(q^{r+1})}})
//   q^{r+1} = tau(q^r, {{sigma(p^{r-1}), sigma(q^r), sigma(p^r)}}), r >= 1.
// The certificate is the minimal joint period of (p^r, q^r).
struct PairTapes {
  SequenceTape p;
  SequenceTape q;
  PeriodicityCertificate certificate;
};

PairTapes pair_tape_thm2(const FiniteAlgorithm& alg, State p0, State q0, State q1,
                         std::int64_t length);

// Family of ultimately periodic state rows seeded at q00:
//   (a) row 1 equals row 0;
//   (b) q_k^0 (k > 1) = tau(q_{k-2}^{2L-1}, {{sigma(q_{k-2}^{2L-1}),
//       sigma(q_{k-1}^L), ..., sigma(q_{k-1}^{2L-1})}});
//   (c) q_k^r (r > 0) = tau(q_k^{r-1}, {{sigma(q_k^{r-1})}}).
// L is the normalized period lcm(1..|Q|); rows are materialized to index
// 4L - 1 and folded by L-periodicity beyond that.
class CherryFamily {
 public:
  CherryFamily(std::int64_t L, std::vector<std::vector<State>> rows);

  std::int64_t normalized_period() const { return L_; }
  std::int64_t row_count() const { return static_cast<std::int64_t>(rows_.size()); }
  std::int64_t materialized_length() const { return 4 * L_; }

  // Row k at index r; r beyond the materialized range is folded into the
  // periodic part (valid for r >= L - 1 by the normalization lemma).
  State at(std::int64_t k, std::int64_t r) const;

 private:
  std::int64_t L_;
  std::vector<std::vector<State>> rows_;
};

CherryFamily cherry_family(const FiniteAlgorithm& alg, State q00, std::int64_t k_max,
                           std::int64_t max_period = 1'000'000);

}  // namespace syncsmith
