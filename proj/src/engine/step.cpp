#include <algorithm>
#include <functional>

#include "rvaft/engine.hpp"
#include "rvaft/error.hpp"

namespace rvaft::engine {

using term::TermKind;

const char* symbol(Verdict verdict) {
  switch (verdict) {
    case Verdict::kUnknown: return "?";
    case Verdict::kSatisfied: return "⊤";
    case Verdict::kViolated: return "⊥";
  }
  return "?";
}

const char* wire_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kUnknown: return "?";
    case Verdict::kSatisfied: return "top";
    case Verdict::kViolated: return "bottom";
  }
  return "?";
}

namespace {

// Smart constructors keep residuals small: Empty absorbs, epsilon is a unit.
Term make_seq(const Term& a, const Term& b) {
  if (a.is(TermKind::kEmpty) || b.is(TermKind::kEmpty)) return Term::empty();
  if (a.is(TermKind::kEpsilon)) return b;
  if (b.is(TermKind::kEpsilon)) return a;
  return Term::seq(a, b);
}

Term make_shuffle(const Term& a, const Term& b) {
  if (a.is(TermKind::kEmpty) || b.is(TermKind::kEmpty)) return Term::empty();
  if (a.is(TermKind::kEpsilon)) return b;
  if (b.is(TermKind::kEpsilon)) return a;
  return Term::shuffle(a, b);
}

struct Successor {
  Term term;
  Env env;
  const std::string* atom;
};

struct Derivation {
  std::vector<Successor> successors;
  bool violating_failure = false;
  std::vector<std::string> messages;
};

void derive(const Term& t, const Env& env, const Event& event, Derivation& out,
            const std::function<Term(const Term&)>& wrap) {
  switch (t.kind()) {
    case TermKind::kEmpty:
    case TermKind::kEpsilon:
    case TermKind::kCheck:
      return;
    case TermKind::kAtom: {
      const auto& annotation = t.annotation();
      term::MatchResult result;
      try {
        result = term::match_event(annotation, event, env);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kTypeMismatch) throw;
        out.messages.push_back(annotation.name + ": " + e.what());
        return;
      }
      if (result.diagnostic) out.messages.push_back(annotation.name + ": " + *result.diagnostic);
      if (result.outcome == term::MatchOutcome::kProgress) {
        out.successors.push_back({wrap(Term::epsilon()), std::move(result.env), &annotation.name});
      } else if (result.outcome == term::MatchOutcome::kGuardFail &&
                 annotation.effective_policy() == term::GuardPolicy::kViolate) {
        out.violating_failure = true;
      }
      return;
    }
    case TermKind::kSeq: {
      const Term& right = t.right();
      derive(t.left(), env, event, out,
             [&](const Term& residual) { return wrap(make_seq(residual, right)); });
      bool skip_left = false;
      try {
        skip_left = term::nullable(t.left(), env);
      } catch (const Error&) {
        skip_left = false;
      }
      if (skip_left) derive(right, env, event, out, wrap);
      return;
    }
    case TermKind::kUnion:
      derive(t.left(), env, event, out, wrap);
      derive(t.right(), env, event, out, wrap);
      return;
    case TermKind::kShuffle: {
      const Term& left = t.left();
      const Term& right = t.right();
      derive(left, env, event, out,
             [&](const Term& residual) { return wrap(make_shuffle(residual, right)); });
      derive(right, env, event, out,
             [&](const Term& residual) { return wrap(make_shuffle(left, residual)); });
      return;
    }
    case TermKind::kLet:
      derive(t.body(), env, event, out, wrap);
      return;
  }
}

bool alternative_nullable(const Alternative& alternative) {
  try {
    return term::nullable(alternative.term, alternative.env);
  } catch (const Error&) {
    return false;
  }
}

void update_verdict(MonitorState& state) {
  state.peak_alternatives = std::max(state.peak_alternatives, state.alternatives.size());
  if (state.alternatives.empty()) {
    state.verdict = Verdict::kViolated;
    return;
  }
  for (const auto& alternative : state.alternatives) {
    if (alternative_nullable(alternative)) {
      state.verdict = Verdict::kSatisfied;
      return;
    }
  }
  state.verdict = Verdict::kUnknown;
}

void add_unique(std::vector<Alternative>& alternatives, Alternative candidate) {
  if (candidate.term.is(TermKind::kEmpty)) return;
  for (const auto& existing : alternatives) {
    if (existing.term == candidate.term && existing.env == candidate.env) return;
  }
  alternatives.push_back(std::move(candidate));
}

}  // namespace

MonitorState init(const Term& term) {
  MonitorState state;
  Term normalized = term::normalize(term);
  if (!normalized.is(TermKind::kEmpty)) {
    state.alternatives.push_back({normalized, Env{}, {}});
  }
  update_verdict(state);
  return state;
}

void advance(MonitorState& state, const Event& event, const StepOptions& options,
             StepDiagnostics* diagnostics) {
  const std::size_t index = state.events_seen;
  if (diagnostics != nullptr) diagnostics->event_index = index;
  if (state.verdict != Verdict::kUnknown) {
    if (diagnostics != nullptr) {
      diagnostics->skipped = true;
      diagnostics->messages.push_back("verdict already final");
    }
    ++state.events_seen;
    return;
  }
  ++state.events_seen;

  std::vector<Alternative> next;
  bool all_neutral = true;
  auto identity = [](const Term& residual) { return residual; };
  for (auto& alternative : state.alternatives) {
    Derivation derivation;
    derive(alternative.term, alternative.env, event, derivation, identity);
    AlternativeOutcome outcome;
    if (!derivation.successors.empty()) {
      outcome = AlternativeOutcome::kProgressed;
      for (auto& successor : derivation.successors) {
        if (diagnostics != nullptr && !diagnostics->matched_atom) {
          diagnostics->matched_atom = *successor.atom;
          diagnostics->bindings_delta = successor.env.delta(alternative.env);
        }
        Alternative moved{std::move(successor.term), std::move(successor.env),
                          alternative.trail};
        moved.trail.push_back({index, *successor.atom});
        add_unique(next, std::move(moved));
      }
    } else if (derivation.violating_failure) {
      outcome = AlternativeOutcome::kGuardFailed;
    } else if (options.strict) {
      outcome = AlternativeOutcome::kEliminated;
    } else {
      outcome = AlternativeOutcome::kNeutral;
      add_unique(next, std::move(alternative));
    }
    if (outcome != AlternativeOutcome::kNeutral) all_neutral = false;
    if (diagnostics != nullptr) {
      diagnostics->outcomes.push_back(outcome);
      for (auto& message : derivation.messages) {
        diagnostics->messages.push_back(std::move(message));
      }
    }
  }
  if (all_neutral) ++state.events_skipped;
  if (diagnostics != nullptr) diagnostics->skipped = all_neutral;
  state.alternatives = std::move(next);
  update_verdict(state);
}

std::pair<MonitorState, StepDiagnostics> step(const MonitorState& state,
                                              const Event& event,
                                              const StepOptions& options) {
  std::pair<MonitorState, StepDiagnostics> result{state, {}};
  advance(result.first, event, options, &result.second);
  return result;
}

}  // namespace rvaft::engine
