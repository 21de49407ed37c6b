#include <algorithm>
#include <chrono>

#include "rvaft/cli.hpp"
#include "rvaft/engine.hpp"

namespace rvaft::cli {

std::vector<term::Event> bench_stream(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<term::Event> stream;
  stream.reserve(length);
  stream.push_back(term::Event{{"topic", "/command"}, {"time", 1.0}, {"name", "move"}, {"waypoint", 0}});
  stream.push_back(
      term::Event{{"topic", "/command"}, {"time", 2.0}, {"name", "inspect"}, {"waypoint", 0}});
  double time = 2.0;
  while (stream.size() < length) {
    time += 0.01;
    stream.push_back(benign_event(rng, time));
  }
  stream.resize(length);
  return stream;
}

BenchReport bench(const compiler::MonitorSpec& spec, const std::string& property,
                  const std::vector<std::size_t>& lengths, int repeats, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  report.property = property;
  for (std::size_t length : lengths) {
    auto stream = bench_stream(length, seed);
    BenchLength row;
    row.length = length;
    std::vector<double> samples(length);
    for (int r = 0; r < std::max(1, repeats); ++r) {
      engine::PropertyMonitor monitor(spec, property);
      auto start = Clock::now();
      auto last = start;
      for (std::size_t i = 0; i < length; ++i) {
        monitor.feed(stream[i]);
        auto now = Clock::now();
        samples[i] = std::chrono::duration<double, std::nano>(now - last).count();
        last = now;
      }
      double total = std::chrono::duration<double, std::nano>(last - start).count();
      double mean = total / static_cast<double>(length);
      if (r == 0 || mean < row.mean_ns) {
        row.mean_ns = mean;
        auto sorted = samples;
        std::sort(sorted.begin(), sorted.end());
        row.p50_ns = sorted[sorted.size() / 2];
        row.p99_ns = sorted[std::min(sorted.size() - 1, sorted.size() * 99 / 100)];
      }
      row.peak_alternatives = std::max(row.peak_alternatives, monitor.state().peak_alternatives);
    }
    row.events_per_second = row.mean_ns > 0 ? 1e9 / row.mean_ns : 0;
    report.peak_alternatives = std::max(report.peak_alternatives, row.peak_alternatives);
    report.lengths.push_back(row);
  }
  if (!report.lengths.empty()) {
    auto [lo, hi] = std::minmax_element(
        report.lengths.begin(), report.lengths.end(),
        [](const BenchLength& a, const BenchLength& b) { return a.mean_ns < b.mean_ns; });
    report.flatness = lo->mean_ns > 0 ? hi->mean_ns / lo->mean_ns : 1.0;
  }
  return report;
}

}  // namespace rvaft::cli
