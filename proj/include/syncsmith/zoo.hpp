#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "syncsmith/algorithm.hpp"

namespace syncsmith {

// Canonical bounded non-solution: Q = M = [P], sigma = identity,
// tau(q, S) = (max S + 1) mod P, clock = identity. Every state is initial.
FiniteAlgorithm make_mod_p_max(int period);

// Unbounded-memory positive control: state is a nonnegative counter h,
// sigma(h) = h, tau(h, S) = 1 + max S, clock(h) = h mod P. Rejected by the
// forges (not enumerable), accepted by execute.
FiniteAlgorithm make_flood_max(int period = 2);

// Declarative FSM files; the transition table factors through either the set
// of distinct received messages or per-message counts saturated at a cap:
//   {"states": [...], "initial": [...], "P": int,
//    "clock": {state: int}, "message": {state: msg},
//    "mode": "set" | {"saturating": int},
//    "delta": [{"state": s, "recv": {msg: count}, "next": s'}, ...]}
// In set mode recv maps present messages to 1. In saturating mode counts are
// exact below the cap; the cap value itself (or ">=cap") means "cap or more".
FiniteAlgorithm load_fsm(const nlohmann::json& doc);
FiniteAlgorithm load_fsm_file(const std::string& path);

// "modmax:P" or "floodmax[:P]".
FiniteAlgorithm make_builtin(std::string_view spec);

struct ZooEntry {
  std::string spec;
  std::string description;
  bool enumerable;
};
std::vector<ZooEntry> zoo_builtins();

// The enumerable builtins exercised by the test batteries.
std::vector<FiniteAlgorithm> zoo_enumerable_algorithms();

}  // namespace syncsmith
