#pragma once

#include <cstdint>

#include <json.hpp>

#include "syncsmith/bigint.hpp"

namespace syncsmith {

// Exact prime counting via a cached sieve.
std::int64_t prime_count(std::int64_t k);

// lcm(1..k) as the product over primes p <= k of p^max{e : p^e <= k}.
// Exponents come from integer powering, never floating logs. This is the
// second, independent route to the value of lcm_upto.
BigUint lcm_upto_factored(std::int64_t k);

// ln lcm(1..k) = sum over primes of floor(log k / log p) * ln p, again with
// integer-power exponents; k >= 2.
double log_lcm_upto(std::int64_t k);

// True iff pi(k) <= 1.11 k / ln k and ln lcm(1..k) <= 1.11 k; k >= 2.
bool chebyshev_check(std::int64_t k);

struct BoundReport {
  std::int64_t n = 0;
  std::int64_t self_stab_state_lb = 0;  // n + 1
  std::int64_t self_stab_time_lb = 0;   // n - 2
  std::int64_t dynamic_state_lb = 0;    // 1 + floor(ln(n/2) / 1.11)
  std::int64_t pi_n = 0;
  double log_lcm = 0.0;                  // ln lcm(1..n)
};

// Lower bounds for networks of at most n nodes; n >= 4.
BoundReport lower_bounds(std::int64_t n);

nlohmann::json bound_report_to_json(const BoundReport& report);

}  // namespace syncsmith
