#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvaft/error.hpp"
#include "support.hpp"

using namespace testing;
using rvaft::engine::Verdict;
namespace engine = rvaft::engine;

namespace {

const rvaft::compiler::MonitorSpec& case_spec() {
  static const auto spec = rvaft::compiler::compile(case_study_tree(), true);
  return spec;
}

std::string replay(const std::string& which, const std::string& trace) {
  return verdicts_string(engine::run_trace(case_spec(), which, fixture(trace)).verdicts);
}

}  // namespace

TEST_CASE("init") {
  auto a = atom("a", "t");
  auto s = engine::init(Term::seq(a, a));
  CHECK(s.alternatives.size() == 1);
  CHECK(s.verdict == Verdict::kUnknown);
  CHECK(engine::init(Term::epsilon()).verdict == Verdict::kSatisfied);
  CHECK(engine::init(Term::empty()).verdict == Verdict::kViolated);
  CHECK(engine::init(Term::seq(a, Term::empty())).verdict == Verdict::kViolated);
  CHECK(engine::init(*case_spec().merged).verdict == Verdict::kUnknown);
}

TEST_CASE("case-study replays") {
  CHECK(replay("phi1", "detected_fault_moving") == "???⊤");
  CHECK(replay("phi2", "detected_fault_at_waypoint") == "???⊤");
  CHECK(replay("phi3", "detected_attack_moving") == "????⊤");
  CHECK(replay("phi4", "detected_attack_at_waypoint") == "????⊤");
  CHECK(replay("phi1", "clear_fault_moving") == "???⊥");
  CHECK(replay("phi2", "clear_fault_at_waypoint") == "???⊥");
  CHECK(replay("phi3", "clear_attack_moving") == "????⊥");
  CHECK(replay("phi4", "clear_attack_at_waypoint") == "????⊥");

  CHECK(replay("merged", "detected_fault_moving") == "???⊤");
  CHECK(replay("merged", "detected_attack_at_waypoint") == "????⊤");
  CHECK(replay("merged", "clear_attack_moving") == "????⊥");
  // The attack continuation is still open after a quick move, so the merged
  // property cannot conclude here.
  CHECK(replay("merged", "clear_fault_moving") == "????");
}

TEST_CASE("attribution names the detecting branch") {
  const char* traces[] = {"detected_fault_moving", "detected_fault_at_waypoint",
                          "detected_attack_moving", "detected_attack_at_waypoint"};
  for (int i = 0; i < 4; ++i) {
    auto result = engine::run_trace(case_spec(), "merged", fixture(traces[i]));
    REQUIRE(result.final_state.verdict == Verdict::kSatisfied);
    CHECK(result.live_branches == std::vector<std::string>{"phi" + std::to_string(i + 1)});
  }
  auto open = engine::run_trace(case_spec(), "merged", fixture("clear_fault_moving"));
  for (const auto& id : open.live_branches) CHECK(case_spec().find(id) != nullptr);
  CHECK(std::find(open.live_branches.begin(), open.live_branches.end(), "phi1") ==
        open.live_branches.end());
}

TEST_CASE("run_trace edge cases") {
  auto empty = engine::run_trace(case_spec(), "merged", {});
  CHECK(empty.verdicts.empty());
  CHECK(empty.final_state.verdict == Verdict::kUnknown);
  CHECK_THROWS_AS(engine::run_trace(case_spec(), "phi9", {}), rvaft::Error);
  try {
    engine::run_trace(case_spec(), "phi9", {});
  } catch (const rvaft::Error& e) {
    CHECK(e.kind() == rvaft::ErrorKind::kUnknownProperty);
  }
}

TEST_CASE("low radiation readings are neutral") {
  auto trace = fixture("detected_fault_moving");
  Event low{{"topic", "/radiation_sensor_plugin/sensor_0"}, {"value", 100.0}, {"time", 16.0}};
  trace.insert(trace.begin() + 2, low);
  auto result = engine::run_trace(case_spec(), "phi1", trace);
  CHECK(verdicts_string(result.verdicts) == "????⊤");
  CHECK(result.final_state.events_skipped == 1);
  CHECK(engine::oracle_verdicts(case_spec().term_for("phi1"), trace) == result.verdicts);
}

TEST_CASE("unsubscribed topics are dropped") {
  auto trace = fixture("detected_fault_moving");
  trace.insert(trace.begin() + 1, Event{{"topic", "/odom"}, {"linear", 0.2}});
  engine::RunOptions options;
  options.keep_diagnostics = true;
  auto result = engine::run_trace(case_spec(), "phi1", trace, options);
  CHECK(verdicts_string(result.verdicts) == "????⊤");
  CHECK(result.diagnostics[1].dropped);
  CHECK(result.final_state.events_seen == 4);
}

TEST_CASE("verdicts are sticky") {
  auto trace = fixture("detected_fault_moving");
  auto more = fixture("clear_fault_moving");
  trace.insert(trace.end(), more.begin(), more.end());
  auto result = engine::run_trace(case_spec(), "phi1", trace);
  CHECK(verdicts_string(result.verdicts) == "???⊤⊤⊤⊤⊤");

  auto [state, diag] = engine::step(result.final_state, trace[0]);
  CHECK(state.verdict == Verdict::kSatisfied);
  CHECK(diag.messages.size() == 1);
}

TEST_CASE("step diagnostics") {
  auto t = Term::seq(atom("a", "t", {{"v", "X"}}), atom("b", "t", {{"w", "Y"}}, "Y > X"));
  auto s0 = engine::init(t);
  auto [s1, d1] = engine::step(s0, Event{{"topic", "t"}, {"v", 3}});
  REQUIRE(d1.outcomes.size() == 1);
  CHECK(d1.outcomes[0] == engine::AlternativeOutcome::kProgressed);
  CHECK(d1.matched_atom == std::string("a"));
  CHECK(d1.bindings_delta == Env{{"X", 3}});
  CHECK(s1.alternatives[0].trail.size() == 1);

  // Y > X references X from earlier: correlation guard, violates.
  auto [s2, d2] = engine::step(s1, Event{{"topic", "t"}, {"w", 1}});
  CHECK(d2.outcomes[0] == engine::AlternativeOutcome::kGuardFailed);
  CHECK(s2.verdict == Verdict::kViolated);

  auto [s3, d3] = engine::step(s1, Event{{"topic", "other"}});
  CHECK(d3.outcomes[0] == engine::AlternativeOutcome::kNeutral);
  CHECK(d3.skipped);
  CHECK(s3.events_skipped == 1);
}

TEST_CASE("type mismatch is a diagnostic, not a failure") {
  auto t = Term::seq(atom("a", "t", {{"v", "X"}}), atom("b", "t", {{"w", "Y"}}, "Y > X"));
  auto s = engine::init(t);
  s = engine::step(s, Event{{"topic", "t"}, {"v", 3}}).first;
  auto [next, diag] = engine::step(s, Event{{"topic", "t"}, {"w", "high"}});
  CHECK(next.verdict == Verdict::kUnknown);
  CHECK(diag.outcomes[0] == engine::AlternativeOutcome::kNeutral);
  CHECK_FALSE(diag.messages.empty());
}

TEST_CASE("strict mode") {
  auto t = Term::seq(atom("a", "t"), atom("b", "u"));
  engine::StepOptions strict{true};
  CHECK(verdicts_string(engine_verdicts(t, {event("t"), event("t")}, strict)) == "?⊥");
  CHECK(verdicts_string(engine_verdicts(t, {event("t"), event("t")})) == "??");
  CHECK(engine::oracle_verdicts(t, {event("t"), event("t")}, strict) ==
        engine_verdicts(t, {event("t"), event("t")}, strict));
}

TEST_CASE("ambiguous patterns fork alternatives") {
  // Both atoms match any "t" event; the shuffle keeps both orders alive.
  auto t = Term::shuffle(Term::seq(atom("a", "t", {{"v", "X"}}), atom("c", "u")),
                         atom("b", "t", {{"v", "Y"}}));
  auto s = engine::init(t);
  s = engine::step(s, Event{{"topic", "t"}, {"v", 1}}).first;
  CHECK(s.alternatives.size() == 2);
  s = engine::step(s, Event{{"topic", "t"}, {"v", 2}}).first;
  CHECK(s.alternatives.size() == 2);
  s = engine::step(s, event("u")).first;
  CHECK(s.verdict == Verdict::kSatisfied);
}

TEST_CASE("case-study alternatives stay bounded") {
  for (const auto* name : {"detected_fault_moving", "detected_attack_at_waypoint",
                           "clear_fault_at_waypoint", "clear_attack_moving"}) {
    for (std::string which : {"merged", "phi1", "phi2", "phi3", "phi4"}) {
      auto result = engine::run_trace(case_spec(), which, fixture(name));
      CHECK(result.final_state.peak_alternatives <= 8);
    }
  }
}

TEST_CASE("engine agrees with the run-based oracle on random instances") {
  InstanceGenerator generator(20261018);
  int disagreements = 0;
  for (int i = 0; i < 400; ++i) {
    auto instance = generator.next();
    for (bool strict : {false, true}) {
      engine::StepOptions options{strict};
      auto got = engine_verdicts(instance.term, instance.trace, options);
      auto want = engine::oracle_verdicts(instance.term, instance.trace, options);
      if (got != want) {
        ++disagreements;
        MESSAGE("term " << rvaft::term::to_string(instance.term) << " strict=" << strict
                        << " engine " << verdicts_string(got) << " oracle "
                        << verdicts_string(want));
      }
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("bank: parallel and serial paths agree") {
  std::vector<std::string> which{"phi1", "phi2", "phi3", "phi4", "merged"};
  for (const auto* name : {"detected_fault_moving", "clear_attack_at_waypoint"}) {
    auto trace = fixture(name);
    engine::MonitorBank a(case_spec(), which), b(case_spec(), which), c(case_spec(), which);
    a.run(trace);
    b.run_serial(trace);
    for (const auto& e : trace) c.feed(e);
    CHECK(a.verdicts() == b.verdicts());
    CHECK(c.verdicts() == b.verdicts());
    for (std::size_t i = 0; i < which.size(); ++i) {
      CHECK(b.verdicts()[i] == engine::run_trace(case_spec(), which[i], trace).final_state.verdict);
    }
  }
}
