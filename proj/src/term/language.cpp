#include <algorithm>

#include "rvaft/error.hpp"
#include "rvaft/term.hpp"
#include "run_semantics.hpp"

namespace rvaft::term {

namespace {

using detail::Consumption;
using detail::IndexedTerm;
using detail::Run;
using detail::RunChecker;

// Runs reachable by consuming `event` at position `now` from `run`, ignoring
// guard-failure policies (pure acceptance).
std::vector<Run> extensions(const IndexedTerm& indexed,
                            const RunChecker& checker, const Run& run,
                            const Event& event, std::size_t now) {
  std::vector<Run> out;
  for (int occ : checker.frontier(run, now)) {
    MatchResult m;
    try {
      m = match_event(indexed.atom(occ), event, checker.env_of(run));
    } catch (const Error&) {
      continue;
    }
    if (m.outcome != MatchOutcome::kProgress) continue;
    Run next = run;
    next.push_back(Consumption{now, occ, std::move(m.env)});
    out.push_back(std::move(next));
  }
  return out;
}

struct LanguageSearch {
  const IndexedTerm& indexed;
  const RunChecker& checker;
  const std::vector<Event>& events;
  std::size_t max_len;
  std::set<std::vector<std::size_t>> accepted;
  std::vector<std::size_t> word;
  std::vector<bool> used;

  void explore(const std::vector<Run>& runs) {
    if (std::any_of(runs.begin(), runs.end(),
                    [&](const Run& r) { return checker.complete_ok(r); })) {
      accepted.insert(word);
    }
    if (word.size() == max_len) return;
    for (std::size_t e = 0; e < events.size(); ++e) {
      if (used[e]) continue;
      std::vector<Run> next;
      for (const auto& run : runs) {
        for (auto& ext : extensions(indexed, checker, run, events[e],
                                    word.size())) {
          next.push_back(std::move(ext));
        }
      }
      if (next.empty()) continue;
      used[e] = true;
      word.push_back(e);
      explore(next);
      word.pop_back();
      used[e] = false;
    }
  }
};

}  // namespace

std::set<std::vector<std::size_t>> language(const Term& term, const Env& env,
                                            const std::vector<Event>& events,
                                            std::size_t max_len) {
  IndexedTerm indexed(term);
  RunChecker checker(indexed, env);
  if (!checker.prefix_ok({})) return {};
  LanguageSearch search{indexed, checker, events, max_len, {}, {}, {}};
  search.used.assign(events.size(), false);
  search.explore({Run{}});
  return search.accepted;
}

bool accepts(const Term& term, const Env& env, const std::vector<Event>& word) {
  IndexedTerm indexed(term);
  RunChecker checker(indexed, env);
  if (!checker.prefix_ok({})) return false;
  std::vector<Run> runs{Run{}};
  for (std::size_t i = 0; i < word.size() && !runs.empty(); ++i) {
    std::vector<Run> next;
    for (const auto& run : runs) {
      for (auto& ext : extensions(indexed, checker, run, word[i], i)) {
        next.push_back(std::move(ext));
      }
    }
    runs = std::move(next);
  }
  return std::any_of(runs.begin(), runs.end(),
                     [&](const Run& r) { return checker.complete_ok(r); });
}

}  // namespace rvaft::term
