#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rvaft/compiler.hpp"
#include "rvaft/term.hpp"

namespace rvaft::engine {

using term::Env;
using term::Event;
using term::Term;

enum class Verdict { kUnknown, kSatisfied, kViolated };

const char* symbol(Verdict verdict);     // ?  ⊤  ⊥
const char* wire_name(Verdict verdict);  // ?  top  bottom

struct TrailEntry {
  std::size_t event_index;
  std::string atom;
  friend bool operator==(const TrailEntry&, const TrailEntry&) = default;
};

struct Alternative {
  Term term;
  Env env;
  std::vector<TrailEntry> trail;
};

struct MonitorState {
  std::vector<Alternative> alternatives;
  Verdict verdict = Verdict::kUnknown;
  std::size_t events_seen = 0;
  std::size_t events_skipped = 0;  // no alternative moved or failed
  std::size_t peak_alternatives = 0;
};

enum class AlternativeOutcome { kProgressed, kGuardFailed, kNeutral, kEliminated };

struct StepDiagnostics {
  std::size_t event_index = 0;
  std::vector<AlternativeOutcome> outcomes;  // one per prior alternative
  std::optional<std::string> matched_atom;
  Env bindings_delta;
  std::vector<std::string> messages;
  bool skipped = false;  // event left every alternative unchanged
  bool dropped = false;  // topic outside the monitor's vocabulary
};

struct StepOptions {
  bool strict = false;  // a subscribed event nobody consumes violates
};

MonitorState init(const Term& term);

/// Pure step. Decided states are returned unchanged.
std::pair<MonitorState, StepDiagnostics> step(const MonitorState& state,
                                              const Event& event,
                                              const StepOptions& options = {});

/// In-place step used on the hot path.
void advance(MonitorState& state, const Event& event, const StepOptions& options,
             StepDiagnostics* diagnostics);

struct RunOptions {
  StepOptions step;
  bool keep_diagnostics = false;
};

/// One compiled property plus topic filtering and, for the merged
/// property, per-branch shadow monitors used to attribute verdicts.
class PropertyMonitor {
 public:
  PropertyMonitor(const compiler::MonitorSpec& spec, const std::string& which,
                  RunOptions options = {});

  StepDiagnostics feed(const Event& event);

  const std::string& property() const noexcept { return which_; }
  Verdict verdict() const noexcept { return state_.verdict; }
  const MonitorState& state() const noexcept { return state_; }
  std::size_t events_fed() const noexcept { return next_index_; }

  /// Undecided: branches not yet violated. Satisfied: branches that
  /// detected. Violated: empty.
  std::vector<std::string> live_branches() const;

  /// Bindings of the first satisfying (or, if undecided, first) alternative.
  Env bindings() const;

 private:
  std::string which_;
  std::set<std::string> topics_;
  RunOptions options_;
  MonitorState state_;
  std::vector<std::pair<std::string, MonitorState>> shadows_;
  std::size_t next_index_ = 0;
};

struct TraceResult {
  std::vector<Verdict> verdicts;  // one per trace event
  std::vector<StepDiagnostics> diagnostics;
  MonitorState final_state;
  std::vector<std::string> live_branches;
};

/// Throws Error(kUnknownProperty) if `which` is neither "merged" nor an id.
TraceResult run_trace(const compiler::MonitorSpec& spec, const std::string& which,
                      const std::vector<Event>& trace, RunOptions options = {});

/// Reference verdicts from explicit runs over the term tree, independent
/// of derivatives. Meant for testing; cost grows with the number of runs.
/// Events must already be topic filtered.
std::vector<Verdict> oracle_verdicts(const Term& term, const std::vector<Event>& trace,
                                     const StepOptions& options = {});

/// Several property monitors fed the same stream. Parallel methods use
/// OpenMP across monitors; the serial ones are the reference.
class MonitorBank {
 public:
  MonitorBank(const compiler::MonitorSpec& spec, const std::vector<std::string>& which,
              RunOptions options = {});

  void feed(const Event& event);
  void feed_serial(const Event& event);

  /// Whole trace per monitor, each monitor on its own thread.
  void run(const std::vector<Event>& trace);
  void run_serial(const std::vector<Event>& trace);

  std::size_t size() const noexcept { return monitors_.size(); }
  const PropertyMonitor& monitor(std::size_t i) const { return monitors_[i]; }
  /// Diagnostics of monitor i for the most recent event.
  const StepDiagnostics& last(std::size_t i) const { return last_[i]; }
  std::vector<Verdict> verdicts() const;

 private:
  std::vector<PropertyMonitor> monitors_;
  std::vector<StepDiagnostics> last_;
};

}  // namespace rvaft::engine
