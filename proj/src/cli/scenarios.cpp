#include <algorithm>

#include "rvaft/cli.hpp"

namespace rvaft::cli {

using term::Event;
using term::Record;
using term::Value;

const char* to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kFaultMoving: return "fault-moving";
    case Scenario::kFaultAtWaypoint: return "fault-at-waypoint";
    case Scenario::kAttackMoving: return "attack-moving";
    case Scenario::kAttackAtWaypoint: return "attack-at-waypoint";
  }
  return "?";
}

const char* to_string(Outcome outcome) { return outcome == Outcome::kBad ? "bad" : "good"; }

std::optional<Scenario> parse_scenario(std::string_view text) {
  for (auto s : kScenarios) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  if (text == "bad") return Outcome::kBad;
  if (text == "good") return Outcome::kGood;
  return std::nullopt;
}

namespace {

Value pose() {
  return Value(Record{
      {"position", Value(Record{{"x", 4.2}, {"y", -1.3}, {"z", 0.0}})},
      {"orientation", Value(Record{{"x", 0.0}, {"y", 0.0}, {"z", 0.0}, {"w", 1.0}})}});
}

Event command(double time, const char* name, int waypoint) {
  return Event{{"topic", "/command"}, {"time", time}, {"name", name}, {"waypoint", waypoint}};
}

Event move_base_result(double time) {
  return Event{{"topic", "/move_base/result"},
               {"time", time},
               {"waypoint", 0},
               {"result", "success"}};
}

Event radiation(double time, double value) {
  return Event{{"pose", pose()},
               {"value", value},
               {"topic", "/radiation_sensor_plugin/sensor_0"},
               {"time", time}};
}

Event planner_goal(double time, int goal) {
  return Event{{"topic", "/move_base/goal"}, {"goal", goal}, {"time", time}};
}

}  // namespace

std::vector<Event> scenario_trace(Scenario scenario, Outcome outcome) {
  const bool bad = outcome == Outcome::kBad;
  switch (scenario) {
    case Scenario::kFaultMoving:
      return {command(10.4, "move", 0), command(15.6, "inspect", 0), radiation(16.1, 257.0),
              command(bad ? 30.241 : 17.493, "move", 1)};
    case Scenario::kFaultAtWaypoint:
      return {move_base_result(8.2), command(15.6, "inspect", 0), radiation(16.1, 257.0),
              command(bad ? 30.493 : 17.493, "move", 1)};
    case Scenario::kAttackMoving:
      return {command(8.2, "move", 0), command(12.6, "inspect", 0), radiation(14.1, 257.0),
              command(18.0, "move", 1), planner_goal(22.405, bad ? 2 : 1)};
    case Scenario::kAttackAtWaypoint:
      return {move_base_result(8.2), command(12.6, "inspect", 0), radiation(14.1, 257.0),
              command(18.0, "move", 1), planner_goal(22.405, bad ? 2 : 1)};
  }
  return {};
}

std::string scenario_property(Scenario scenario) {
  switch (scenario) {
    case Scenario::kFaultMoving: return "phi1";
    case Scenario::kFaultAtWaypoint: return "phi2";
    case Scenario::kAttackMoving: return "phi3";
    case Scenario::kAttackAtWaypoint: return "phi4";
  }
  return "";
}

Event benign_event(std::mt19937_64& rng, double time) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return radiation(time, 100.0);
    case 1:
      return Event{{"topic", "/odom"},
                   {"time", time},
                   {"linear", std::uniform_real_distribution<double>(0.0, 0.5)(rng)}};
    case 2:
      return Event{{"topic", "/diagnostics"}, {"time", time}, {"level", 0}, {"message", "ok"}};
    default:
      return Event{{"topic", "/battery_state"},
                   {"time", time},
                   {"percentage", std::uniform_real_distribution<double>(0.2, 1.0)(rng)}};
  }
}

std::vector<Event> add_noise(const std::vector<Event>& trace, std::size_t count,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Pick the gap (0..size) each benign event goes into, then merge.
  std::vector<std::size_t> gaps(count);
  std::uniform_int_distribution<std::size_t> pick(0, trace.size());
  for (auto& gap : gaps) gap = pick(rng);
  std::sort(gaps.begin(), gaps.end());

  auto time_of = [&](std::size_t i) {
    if (i >= trace.size()) return trace.empty() ? 0.0 : 1e9;
    const Value* t = trace[i].find("time");
    return t != nullptr && t->is_number() ? t->as_number() : 0.0;
  };

  std::vector<Event> out;
  out.reserve(trace.size() + count);
  std::size_t g = 0;
  for (std::size_t i = 0; i <= trace.size(); ++i) {
    double lo = i == 0 ? 0.0 : time_of(i - 1);
    double hi = i < trace.size() ? time_of(i) : lo + 1.0;
    for (; g < gaps.size() && gaps[g] == i; ++g) {
      out.push_back(benign_event(rng, std::uniform_real_distribution<double>(lo, hi)(rng)));
    }
    if (i < trace.size()) out.push_back(trace[i]);
  }
  return out;
}

}  // namespace rvaft::cli
