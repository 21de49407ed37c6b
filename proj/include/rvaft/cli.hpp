#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rvaft/compiler.hpp"
#include "rvaft/term.hpp"

namespace rvaft::cli {

enum class Scenario { kFaultMoving, kFaultAtWaypoint, kAttackMoving, kAttackAtWaypoint };
enum class Outcome { kBad, kGood };

const char* to_string(Scenario scenario);
const char* to_string(Outcome outcome);
std::optional<Scenario> parse_scenario(std::string_view text);
std::optional<Outcome> parse_outcome(std::string_view text);
inline constexpr Scenario kScenarios[] = {Scenario::kFaultMoving, Scenario::kFaultAtWaypoint,
                                          Scenario::kAttackMoving,
                                          Scenario::kAttackAtWaypoint};

/// The recorded case-study trace for a scenario. Bad outcomes end in a
/// detection, good ones in a violation. Attack scenarios carry a move
/// command to waypoint 1 before the planner goal (not part of the
/// recorded excerpt) so the goal can be compared against it.
std::vector<term::Event> scenario_trace(Scenario scenario, Outcome outcome);

/// The property id ("phi1".."phi4") covering a scenario in the case study.
std::string scenario_property(Scenario scenario);

/// One benign event: a low radiation reading or chatter on a topic no
/// property subscribes to.
term::Event benign_event(std::mt19937_64& rng, double time);

/// Inserts `count` benign events at seeded random positions.
std::vector<term::Event> add_noise(const std::vector<term::Event>& trace, std::size_t count,
                                   std::uint64_t seed);

struct BenchLength {
  std::size_t length = 0;
  double mean_ns = 0;  // best mean over repeats
  double p50_ns = 0;
  double p99_ns = 0;
  double events_per_second = 0;
  std::size_t peak_alternatives = 0;
};

struct BenchReport {
  std::string property;
  std::vector<BenchLength> lengths;
  double flatness = 0;  // max mean / min mean
  std::size_t peak_alternatives = 0;
};

/// Noise-heavy stream of `length` events: the opening move/inspect pair of
/// a mission followed by benign events, so the monitor stays undecided.
std::vector<term::Event> bench_stream(std::size_t length, std::uint64_t seed);

BenchReport bench(const compiler::MonitorSpec& spec, const std::string& property,
                  const std::vector<std::size_t>& lengths, int repeats, std::uint64_t seed);

/// Accepts one TCP connection at a time on localhost and hands each
/// newline-terminated line to a callback until the peer closes.
class LineListener {
 public:
  explicit LineListener(std::uint16_t port);  // 0 picks a free port
  ~LineListener();
  LineListener(const LineListener&) = delete;
  LineListener& operator=(const LineListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  void serve_one(const std::function<void(std::string_view)>& on_line);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Sends lines to a listener; used by tests and `--send`-style tooling.
void send_lines(std::uint16_t port, const std::vector<std::string>& lines);

/// Full command-line entry point. Returns the process exit code:
/// 0 success or no detection, 1 error, 2 detection.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err);

/// Applies RVAFT_LOG (error, warn, info, debug; default warn).
void configure_logging();

}  // namespace rvaft::cli
