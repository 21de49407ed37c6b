#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvaft/error.hpp"
#include "support.hpp"

using namespace testing;
namespace term = rvaft::term;
using term::MatchOutcome;

namespace {

EventAnnotation annotation_of(const Term& t) { return t.annotation(); }

Event radiation_event(double value, double time) {
  return Event{{"topic", "radiation_sensor_plugin/sensor_0"}, {"value", value}, {"time", time}};
}

const Term kRadiation = atom("radiation", "radiation_sensor_plugin/sensor_0",
                             {{"value", "Value"}, {"time", "T1"}}, "Value >= 250");

}  // namespace

TEST_CASE("match_event") {
  auto move = annotation_of(atom("move", "command", {{"name", "move"}, {"waypoint", "Waypoint"}}));
  Event ev{{"topic", "command"}, {"time", 10.4}, {"name", "move"}, {"waypoint", 0}};
  auto r = term::match_event(move, ev, Env{});
  CHECK(r.outcome == MatchOutcome::kProgress);
  CHECK(r.env == Env{{"Waypoint", 0}});

  auto rad = annotation_of(kRadiation);
  r = term::match_event(rad, radiation_event(257.0, 16.1), Env{});
  CHECK(r.outcome == MatchOutcome::kProgress);
  CHECK(r.env == Env{{"Value", 257.0}, {"T1", 16.1}});

  // 100 < 250 computed directly.
  CHECK_FALSE(100.0 >= 250.0);
  CHECK(term::match_event(rad, radiation_event(100.0, 16.1), Env{}).outcome ==
        MatchOutcome::kGuardFail);

  auto inspect = annotation_of(atom("inspect", "command", {{"name", "inspect"}, {"waypoint", "Waypoint"}}));
  CHECK(term::match_event(inspect, Event{{"topic", "move_base/goal"}, {"goal", 2}}, Env{}).outcome ==
        MatchOutcome::kNoMatch);
}

TEST_CASE("match_event: bind-once and topics") {
  auto move = annotation_of(atom("move", "command", {{"waypoint", "W"}}));
  Event ev{{"topic", "/command"}, {"waypoint", 1}};
  CHECK(term::match_event(move, ev, Env{{"W", 1}}).outcome == MatchOutcome::kProgress);
  CHECK(term::match_event(move, ev, Env{{"W", 2}}).outcome == MatchOutcome::kNoMatch);
  CHECK(term::match_event(move, ev, Env{{"W", 1}}).env == Env{{"W", 1}});
  // Leading '/' on the event topic is canonicalized away.
  CHECK(term::match_event(move, ev, Env{}).outcome == MatchOutcome::kProgress);
  CHECK(term::canonical_topic("/a/b") == "a/b");
  CHECK(term::canonical_topic("a/b") == "a/b");
  CHECK(term::canonical_topic("//a") == "/a");
}

TEST_CASE("match_event: unbound guard variable gives NoMatch plus diagnostic") {
  auto goal = annotation_of(atom("goal", "g", {{"goal", "G"}}, "NewWp != G"));
  auto r = term::match_event(goal, Event{{"topic", "g"}, {"goal", 1}}, Env{});
  CHECK(r.outcome == MatchOutcome::kNoMatch);
  CHECK(r.diagnostic.has_value());
}

TEST_CASE("match_event: structured values compare deeply") {
  term::Record pose{{"x", 1.0}, {"y", term::Value(term::List{1.0, "a"})}};
  EventAnnotation a;
  a.name = "p";
  a.pattern.emplace_back("pose", Matcher::literal(Value(pose)));
  CHECK(term::match_event(a, Event{{"pose", Value(pose)}}, Env{}).outcome == MatchOutcome::kProgress);
  term::Record other = pose;
  other["x"] = 2.0;
  CHECK(term::match_event(a, Event{{"pose", Value(other)}}, Env{}).outcome == MatchOutcome::kNoMatch);
}

TEST_CASE("match_event outcomes are exclusive and deterministic") {
  InstanceGenerator generator(7);
  for (int i = 0; i < 200; ++i) {
    auto instance = generator.next();
    for (const auto& a : term::atoms(instance.term)) {
      for (const auto& e : instance.trace) {
        Env env{{"X0", 1}};
        auto first = term::match_event(a, e, env);
        auto second = term::match_event(a, e, env);
        CHECK(first.outcome == second.outcome);
        CHECK(first.env == second.env);
      }
    }
  }
}

TEST_CASE("eval_guard") {
  auto g = guard("T2 >= T1 + 10");
  CHECK(term::eval_guard(g, Env{{"T1", 16.1}, {"T2", 30.241}}) == (30.241 >= 16.1 + 10));
  CHECK(term::eval_guard(g, Env{{"T1", 16.1}, {"T2", 30.241}}));
  CHECK_FALSE(term::eval_guard(g, Env{{"T1", 16.1}, {"T2", 17.493}}));
  CHECK(term::eval_guard(guard("x == x"), Env{{"x", "anything"}}));
  CHECK(term::eval_guard(guard("x == x"), Env{{"x", 3}}));

  CHECK(term::eval_guard(guard("NewWp != 'entrance'"), Env{{"NewWp", 1}}));
  CHECK_FALSE(term::eval_guard(guard("NewWp != 'entrance'"), Env{{"NewWp", "entrance"}}));
  CHECK(term::eval_guard(guard("a < b"), Env{{"a", "abc"}, {"b", "abd"}}));
  CHECK(term::eval_guard(guard("not a > 1 or a == 0"), Env{{"a", 0}}));
  CHECK(term::eval_guard(guard("a - 1 - 1 == 0"), Env{{"a", 2}}));
}

TEST_CASE("eval_guard errors") {
  auto kind_of = [](const std::string& text, const Env& env) {
    try {
      term::eval_guard(guard(text), env);
    } catch (const rvaft::Error& e) {
      return e.kind();
    }
    return rvaft::ErrorKind::kIo;  // sentinel: nothing thrown
  };
  CHECK(kind_of("x > 1", Env{}) == rvaft::ErrorKind::kUnboundVariable);
  CHECK(kind_of("x > 1", Env{{"x", "one"}}) == rvaft::ErrorKind::kTypeMismatch);
  CHECK(kind_of("x + 1 == 2", Env{{"x", "one"}}) == rvaft::ErrorKind::kTypeMismatch);
  CHECK(kind_of("x and true", Env{{"x", 1}}) == rvaft::ErrorKind::kTypeMismatch);
  CHECK(kind_of("x", Env{{"x", 1}}) == rvaft::ErrorKind::kTypeMismatch);
  // Short-circuit: the unbound right side is never evaluated.
  CHECK(kind_of("false and y > 1", Env{}) == rvaft::ErrorKind::kIo);
}

TEST_CASE("guard variables") {
  CHECK(term::variables(guard("T2 >= T1 + 10 and T1 > T2")) == std::vector<std::string>{"T2", "T1"});
}

TEST_CASE("default guard policy") {
  CHECK(annotation_of(kRadiation).effective_policy() == term::GuardPolicy::kSkip);
  auto move2 = annotation_of(atom("move", "command", {{"waypoint", "NewWp"}, {"time", "T2"}},
                                  "T2 >= T1 + 10"));
  CHECK(move2.effective_policy() == term::GuardPolicy::kViolate);
  move2.on_guard_fail = term::GuardPolicy::kSkip;
  CHECK(move2.effective_policy() == term::GuardPolicy::kSkip);
}

TEST_CASE("nullable") {
  auto a = atom("a", "t");
  CHECK(term::nullable(Term::epsilon(), Env{}));
  CHECK_FALSE(term::nullable(Term::seq(a, Term::epsilon()), Env{}));
  CHECK_FALSE(term::nullable(Term::empty(), Env{}));
  auto check = Term::check(guard("T2 >= T1 + 10"));
  CHECK(term::nullable(check, Env{{"T1", 16.1}, {"T2", 30.241}}));
  CHECK_FALSE(term::nullable(check, Env{}));  // unbound
  CHECK(term::nullable(Term::either(a, Term::epsilon()), Env{}));
  CHECK_FALSE(term::nullable(Term::shuffle(a, Term::epsilon()), Env{}));
  CHECK(term::nullable(Term::let({"X"}, Term::epsilon()), Env{}));
}

TEST_CASE("nullable(Union(t, Empty)) == nullable(t)") {
  InstanceGenerator generator(11);
  std::vector<Env> envs{Env{}, Env{{"X0", 0}, {"X1", 1}}, Env{{"X0", 1}, {"X1", 2}, {"X2", 0}}};
  for (int i = 0; i < 300; ++i) {
    auto t = generator.next().term;
    for (const auto& env : envs) {
      CHECK(term::nullable(Term::either(t, Term::empty()), env) == term::nullable(t, env));
    }
  }
}

TEST_CASE("env is bind-once") {
  Env env{{"X", 1}};
  CHECK_FALSE(env.bind("X", 2).has_value());
  CHECK(env.bind("X", 1).value() == env);
  auto extended = env.bind("Y", "a");
  REQUIRE(extended);
  CHECK(extended->size() == 2);
  CHECK(env.size() == 1);
  CHECK(extended->delta(env) == Env{{"Y", "a"}});
}

TEST_CASE("language") {
  auto a = atom("a", "ta");
  auto b = atom("b", "tb");
  std::vector<Event> events{event("ta"), event("tb")};
  CHECK(term::language(Term::shuffle(a, b), Env{}, events, 4) == Language{{0, 1}, {1, 0}});
  CHECK(term::language(Term::seq(a, b), Env{}, events, 4) == Language{{0, 1}});
  CHECK(term::language(Term::empty(), Env{}, events, 4).empty());
  CHECK(term::language(Term::epsilon(), Env{}, events, 4) == Language{{}});
  CHECK(term::accepts(Term::seq(a, b), Env{}, events));
  CHECK_FALSE(term::accepts(Term::seq(b, a), Env{}, events));
}

TEST_CASE("language respects bindings and checks") {
  auto first = atom("first", "t", {{"v", "X"}});
  auto second = atom("second", "t", {{"v", "Y"}}, "Y > X");
  std::vector<Event> events{Event{{"topic", "t"}, {"v", 1}}, Event{{"topic", "t"}, {"v", 2}}};
  CHECK(term::language(Term::seq(first, second), Env{}, events, 2) == Language{{0, 1}});
  auto gated = Term::seq(atom("a", "t", {{"v", "X"}}), Term::check(guard("X >= 2")));
  CHECK(term::language(gated, Env{}, events, 2) == Language{{1}});
}

TEST_CASE("term printing and structure") {
  auto a = atom("a", "t");
  auto b = atom("b", "u");
  CHECK(term::to_string(Term::seq(Term::either(a, b), a)) == "(a() \\/ b()) a()");
  CHECK(term::to_string(Term::shuffle(a, Term::seq(a, b))) == "a() | a() b()");
  CHECK(Term::seq(a, b) == Term::seq(atom("a", "t"), atom("b", "u")));
  CHECK_FALSE(Term::seq(a, b) == Term::seq(b, a));
  CHECK(term::topics(Term::seq(a, atom("c", "/u"))) == std::set<std::string>{"t", "u"});
  CHECK(term::normalize(Term::seq(Term::epsilon(), Term::either(Term::empty(), a))) == a);
}
