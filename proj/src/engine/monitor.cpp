#include "rvaft/engine.hpp"
#include "rvaft/error.hpp"

namespace rvaft::engine {

PropertyMonitor::PropertyMonitor(const compiler::MonitorSpec& spec,
                                 const std::string& which, RunOptions options)
    : which_(which), topics_(spec.topics), options_(options),
      state_(init(spec.term_for(which))) {
  if (which == "merged") {
    for (const auto& property : spec.properties) {
      shadows_.emplace_back(property.id, init(property.term));
    }
  }
}

StepDiagnostics PropertyMonitor::feed(const Event& event) {
  StepDiagnostics diagnostics;
  diagnostics.event_index = next_index_++;
  auto topic = event.topic();
  if (!topic || !topics_.count(term::canonical_topic(*topic))) {
    diagnostics.dropped = true;
    diagnostics.skipped = true;
    return diagnostics;
  }
  const std::size_t index = diagnostics.event_index;
  advance(state_, event, options_.step, &diagnostics);
  diagnostics.event_index = index;
  for (auto& [id, shadow] : shadows_) {
    advance(shadow, event, options_.step, nullptr);
  }
  return diagnostics;
}

std::vector<std::string> PropertyMonitor::live_branches() const {
  std::vector<std::string> live;
  if (state_.verdict == Verdict::kViolated) return live;
  if (shadows_.empty()) {
    live.push_back(which_);
    return live;
  }
  const bool satisfied = state_.verdict == Verdict::kSatisfied;
  for (const auto& [id, shadow] : shadows_) {
    if (satisfied ? shadow.verdict == Verdict::kSatisfied
                  : shadow.verdict != Verdict::kViolated) {
      live.push_back(id);
    }
  }
  return live;
}

Env PropertyMonitor::bindings() const {
  for (const auto& alternative : state_.alternatives) {
    try {
      if (term::nullable(alternative.term, alternative.env)) return alternative.env;
    } catch (const Error&) {
    }
  }
  if (!state_.alternatives.empty()) return state_.alternatives.front().env;
  return Env{};
}

TraceResult run_trace(const compiler::MonitorSpec& spec, const std::string& which,
                      const std::vector<Event>& trace, RunOptions options) {
  PropertyMonitor monitor(spec, which, options);
  TraceResult result;
  result.verdicts.reserve(trace.size());
  for (const auto& event : trace) {
    auto diagnostics = monitor.feed(event);
    result.verdicts.push_back(monitor.verdict());
    if (options.keep_diagnostics) result.diagnostics.push_back(std::move(diagnostics));
  }
  result.final_state = monitor.state();
  result.live_branches = monitor.live_branches();
  return result;
}

MonitorBank::MonitorBank(const compiler::MonitorSpec& spec,
                         const std::vector<std::string>& which, RunOptions options) {
  monitors_.reserve(which.size());
  for (const auto& id : which) monitors_.emplace_back(spec, id, options);
  last_.resize(monitors_.size());
}

void MonitorBank::feed(const Event& event) {
  const auto n = static_cast<std::ptrdiff_t>(monitors_.size());
#pragma omp parallel for schedule(static) if (n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) last_[i] = monitors_[i].feed(event);
}

void MonitorBank::feed_serial(const Event& event) {
  for (std::size_t i = 0; i < monitors_.size(); ++i) last_[i] = monitors_[i].feed(event);
}

void MonitorBank::run(const std::vector<Event>& trace) {
  const auto n = static_cast<std::ptrdiff_t>(monitors_.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (const auto& event : trace) monitors_[i].feed(event);
  }
}

void MonitorBank::run_serial(const std::vector<Event>& trace) {
  for (auto& monitor : monitors_) {
    for (const auto& event : trace) monitor.feed(event);
  }
}

std::vector<Verdict> MonitorBank::verdicts() const {
  std::vector<Verdict> out;
  for (const auto& monitor : monitors_) out.push_back(monitor.verdict());
  return out;
}

}  // namespace rvaft::engine
