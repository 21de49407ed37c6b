#include <algorithm>

#include "rvaft/engine.hpp"
#include "rvaft/error.hpp"
#include "term/run_semantics.hpp"

namespace rvaft::engine {

using term::detail::Consumption;
using term::detail::IndexedTerm;
using term::detail::Run;
using term::detail::RunChecker;

namespace {

Verdict verdict_of(const RunChecker& checker, const std::vector<Run>& runs) {
  if (runs.empty()) return Verdict::kViolated;
  for (const auto& run : runs) {
    if (checker.complete_ok(run)) return Verdict::kSatisfied;
  }
  return Verdict::kUnknown;
}

}  // namespace

std::vector<Verdict> oracle_verdicts(const Term& term, const std::vector<Event>& trace,
                                     const StepOptions& options) {
  IndexedTerm indexed(term);
  RunChecker checker(indexed, Env{});
  std::vector<Run> runs;
  if (checker.prefix_ok(Run{})) runs.push_back(Run{});
  Verdict verdict = verdict_of(checker, runs);

  std::vector<Verdict> out;
  for (std::size_t now = 0; now < trace.size(); ++now) {
    if (verdict == Verdict::kUnknown) {
      std::vector<Run> next;
      for (const auto& run : runs) {
        const Env& env = checker.env_of(run);
        bool progressed = false;
        bool violated = false;
        for (int occ : checker.frontier(run, now)) {
          const auto& atom = indexed.atom(occ);
          term::MatchResult m;
          try {
            m = term::match_event(atom, trace[now], env);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::kTypeMismatch) throw;
            continue;
          }
          if (m.outcome == term::MatchOutcome::kProgress) {
            Run extended = run;
            extended.push_back(Consumption{now, occ, std::move(m.env)});
            if (std::find(next.begin(), next.end(), extended) == next.end()) {
              next.push_back(std::move(extended));
            }
            progressed = true;
          } else if (m.outcome == term::MatchOutcome::kGuardFail &&
                     atom.effective_policy() == term::GuardPolicy::kViolate) {
            violated = true;
          }
        }
        if (progressed || violated || options.strict) continue;
        next.push_back(run);
      }
      runs = std::move(next);
      verdict = verdict_of(checker, runs);
    }
    out.push_back(verdict);
  }
  return out;
}

}  // namespace rvaft::engine
