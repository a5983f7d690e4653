#include "syncsmith/zoo.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>

#include "syncsmith/errors.hpp"

namespace syncsmith {

FiniteAlgorithm make_mod_p_max(int period) {
  if (period < 2) raise(ErrorCode::SchemaError, "modmax needs P >= 2");
  std::vector<std::string> names;
  std::vector<State> initial;
  for (int q = 0; q < period; ++q) {
    names.push_back(std::to_string(q));
    initial.push_back(q);
  }
  int p = period;
  return FiniteAlgorithm::make_enumerable(
      "modmax:" + std::to_string(period), std::move(names), std::move(initial), p,
      [](State q) { return q; },
      [p](State, const MessageBag& bag) { return (bag.max() + 1) % p; },
      [](State q) { return static_cast<int>(q); });
}

FiniteAlgorithm make_flood_max(int period) {
  if (period < 2) raise(ErrorCode::SchemaError, "floodmax needs P >= 2");
  int p = period;
  return FiniteAlgorithm::make_unbounded(
      "floodmax:" + std::to_string(period), {0}, p,
      [](State h) { return h; },
      [](State, const MessageBag& bag) { return 1 + bag.max(); },
      [p](State h) { return static_cast<int>(h % p); },
      [](State h) { return std::to_string(h); },
      [](std::string_view s) -> std::optional<State> {
        State v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
        return v;
      });
}

namespace {

// Abstracted receive key: per-message counts saturated at the cap (cap 1 in
// set mode), encoded as bytes.
using TableKey = std::pair<State, std::string>;

struct FsmTable {
  int saturation = 1;
  std::size_t message_count = 0;
  std::map<TableKey, State> delta;
};

std::string encode_counts(const std::vector<int>& counts) {
  std::string key(counts.size(), '\0');
  for (std::size_t i = 0; i < counts.size(); ++i)
    key[i] = static_cast<char>(counts[i]);
  return key;
}

std::string describe_key(const std::vector<std::string>& message_names,
                         const std::string& key, int cap) {
  std::string out = "{";
  for (std::size_t i = 0; i < key.size(); ++i) {
    int c = key[i];
    if (c == 0) continue;
    if (out.size() > 1) out += ", ";
    out += message_names[i] + ": " + (c >= cap && cap > 1 ? ">=" : "") + std::to_string(c);
  }
  return out + "}";
}

}  // namespace

FiniteAlgorithm load_fsm(const nlohmann::json& doc) {
  if (!doc.is_object()) raise(ErrorCode::SchemaError, "FSM document must be an object");
  for (const char* field : {"states", "initial", "P", "clock", "message", "mode", "delta"})
    if (!doc.contains(field))
      raise(ErrorCode::SchemaError, std::string("FSM document lacks '") + field + "'");

  auto state_names = doc.at("states").get<std::vector<std::string>>();
  if (state_names.empty()) raise(ErrorCode::SchemaError, "state list is empty");
  std::map<std::string, State> state_ids;
  for (std::size_t i = 0; i < state_names.size(); ++i) {
    if (!state_ids.emplace(state_names[i], static_cast<State>(i)).second)
      raise(ErrorCode::SchemaError, "duplicate state '" + state_names[i] + "'");
  }
  auto state_id = [&](const std::string& name) {
    auto it = state_ids.find(name);
    if (it == state_ids.end())
      raise(ErrorCode::SchemaError, "unknown state '" + name + "'");
    return it->second;
  };

  std::vector<State> initial;
  for (const auto& name : doc.at("initial").get<std::vector<std::string>>())
    initial.push_back(state_id(name));
  if (initial.empty()) raise(ErrorCode::SchemaError, "initial state list is empty");

  int period = doc.at("P").get<int>();
  if (period < 2) raise(ErrorCode::SchemaError, "P must be > 1");

  // Clock and message maps must be total over the states.
  std::vector<int> clock_of(state_names.size());
  for (const auto& name : state_names) {
    if (!doc.at("clock").contains(name))
      raise(ErrorCode::SchemaError, "clock map lacks state '" + name + "'");
    int c = doc.at("clock").at(name).get<int>();
    if (c < 0 || c >= period)
      raise(ErrorCode::ClockRange, "clock[" + name + "] = " + std::to_string(c) +
                                       " outside [0, " + std::to_string(period) + ")");
    clock_of[static_cast<std::size_t>(state_id(name))] = c;
  }

  std::map<std::string, Message> message_ids;
  std::vector<std::string> message_names;
  std::vector<Message> message_of(state_names.size());
  for (const auto& name : state_names) {
    if (!doc.at("message").contains(name))
      raise(ErrorCode::SchemaError, "message map lacks state '" + name + "'");
    std::string msg = doc.at("message").at(name).get<std::string>();
    auto [it, inserted] = message_ids.emplace(msg, static_cast<Message>(message_ids.size()));
    if (inserted) message_names.push_back(msg);
    message_of[static_cast<std::size_t>(state_id(name))] = it->second;
  }

  auto table = std::make_shared<FsmTable>();
  table->message_count = message_names.size();
  const auto& mode = doc.at("mode");
  if (mode.is_string() && mode.get<std::string>() == "set") {
    table->saturation = 1;
  } else if (mode.is_object() && mode.contains("saturating")) {
    table->saturation = mode.at("saturating").get<int>();
    if (table->saturation < 1)
      raise(ErrorCode::SchemaError, "saturating cap must be >= 1");
  } else {
    raise(ErrorCode::SchemaError, "mode must be \"set\" or {\"saturating\": cap}");
  }
  const int cap = table->saturation;

  auto parse_count = [&](const nlohmann::json& v) -> int {
    if (v.is_number_integer()) {
      int c = v.get<int>();
      if (c < 0 || c > cap)
        raise(ErrorCode::SchemaError,
              "receive count " + std::to_string(c) + " outside [0, " + std::to_string(cap) + "]");
      return c;
    }
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.rfind(">=", 0) == 0) s = s.substr(2);
      else if (s.rfind("≥", 0) == 0) s = s.substr(std::string("≥").size());
      else raise(ErrorCode::SchemaError, "receive count string must start with >=");
      if (s != std::to_string(cap))
        raise(ErrorCode::SchemaError, "saturated count must equal the cap " + std::to_string(cap));
      return cap;
    }
    raise(ErrorCode::SchemaError, "receive count must be an integer or \">=cap\"");
  };

  for (const auto& row : doc.at("delta")) {
    for (const char* field : {"state", "recv", "next"})
      if (!row.contains(field))
        raise(ErrorCode::SchemaError, std::string("delta row lacks '") + field + "'");
    State from = state_id(row.at("state").get<std::string>());
    State to = state_id(row.at("next").get<std::string>());
    std::vector<int> counts(message_names.size(), 0);
    bool any = false;
    for (const auto& [msg, count] : row.at("recv").items()) {
      auto it = message_ids.find(msg);
      if (it == message_ids.end())
        raise(ErrorCode::SchemaError, "unknown message '" + msg + "' in delta row");
      int c = parse_count(count);
      counts[static_cast<std::size_t>(it->second)] = c;
      any = any || c > 0;
    }
    if (!any) raise(ErrorCode::SchemaError, "delta row with empty receive multiset");
    if (!table->delta.emplace(TableKey{from, encode_counts(counts)}, to).second)
      raise(ErrorCode::SchemaError, "duplicate delta row for state '" +
                                        state_names[static_cast<std::size_t>(from)] + "'");
  }

  // Totality: every (state, abstract multiset) must be covered.
  double key_count = 1;
  for (std::size_t i = 0; i < message_names.size(); ++i) key_count *= cap + 1;
  if (key_count * static_cast<double>(state_names.size()) > 1e6)
    raise(ErrorCode::SchemaError, "abstracted table too large to verify totality");
  std::vector<int> counts(message_names.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == counts.size()) {
      bool any = false;
      for (int c : counts) any = any || c > 0;
      if (!any) return;
      std::string key = encode_counts(counts);
      for (std::size_t q = 0; q < state_names.size(); ++q) {
        if (!table->delta.count(TableKey{static_cast<State>(q), key}))
          raise(ErrorCode::PartialTable,
                "missing delta row for state '" + state_names[q] + "' and multiset " +
                    describe_key(message_names, key, cap));
      }
      return;
    }
    for (int c = 0; c <= cap; ++c) {
      counts[idx] = c;
      walk(idx + 1);
    }
    counts[idx] = 0;
  };
  walk(0);

  std::string name = doc.contains("name") && doc.at("name").is_string()
                         ? doc.at("name").get<std::string>()
                         : "fsm";
  auto messages = std::make_shared<std::vector<Message>>(std::move(message_of));
  auto clocks = std::make_shared<std::vector<int>>(std::move(clock_of));
  return FiniteAlgorithm::make_enumerable(
      name, state_names, std::move(initial), period,
      [messages](State q) { return (*messages)[static_cast<std::size_t>(q)]; },
      [table](State q, const MessageBag& bag) {
        std::vector<int> counts(table->message_count, 0);
        for (Message m : bag.items()) {
          auto& c = counts[static_cast<std::size_t>(m)];
          if (c < table->saturation) ++c;
        }
        auto it = table->delta.find(TableKey{q, encode_counts(counts)});
        if (it == table->delta.end())
          raise(ErrorCode::PartialTable, "no delta row for received multiset");
        return it->second;
      },
      [clocks](State q) { return (*clocks)[static_cast<std::size_t>(q)]; });
}

FiniteAlgorithm load_fsm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::SchemaError, "cannot open FSM file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::SchemaError, "FSM file '" + path + "' is not valid JSON: " + e.what());
  }
  return load_fsm(doc);
}

FiniteAlgorithm make_builtin(std::string_view spec) {
  auto parse_p = [&](std::string_view s, int fallback) {
    if (s.empty()) return fallback;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      raise(ErrorCode::SchemaError, "bad period in builtin spec");
    return v;
  };
  if (spec.rfind("modmax:", 0) == 0) return make_mod_p_max(parse_p(spec.substr(7), -1));
  if (spec == "floodmax") return make_flood_max();
  if (spec.rfind("floodmax:", 0) == 0) return make_flood_max(parse_p(spec.substr(9), 2));
  raise(ErrorCode::SchemaError,
        "unknown builtin '" + std::string(spec) + "'; try modmax:P or floodmax:P");
}

std::vector<ZooEntry> zoo_builtins() {
  return {
      {"modmax:P", "max-plus-one rule mod P; bounded, never synchronizes adversarially", true},
      {"floodmax:P", "unbounded max-flooding counter; synchronizes on connected graphs", false},
  };
}

std::vector<FiniteAlgorithm> zoo_enumerable_algorithms() {
  std::vector<FiniteAlgorithm> algs;
  for (int p : {2, 3, 5}) algs.push_back(make_mod_p_max(p));
  return algs;
}

}  // namespace syncsmith
