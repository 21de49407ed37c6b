#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rvaft/cli.hpp"
#include "rvaft/engine.hpp"
#include "rvaft/error.hpp"
#include "rvaft/format.hpp"

namespace rvaft::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDetected = 2;

// Writes to a file when a path is given, otherwise to the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::kIo, "cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string join(const std::vector<std::string>& items, const char* separator) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : separator) + item;
  return out;
}

model::NodeClass class_of(const compiler::MonitorSpec& spec,
                          const std::vector<std::string>& branches) {
  bool attack = false;
  for (const auto& id : branches) {
    if (const auto* p = spec.find(id)) attack |= p->node_class == model::NodeClass::kAttack;
  }
  return attack ? model::NodeClass::kAttack : model::NodeClass::kFault;
}

struct RunArgs {
  std::string tree;
  std::string property = "merged";
  std::string trace;
  int listen = -1;
  bool strict = false;
  std::string output;
};

int run_command(const RunArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  auto tree = format::load_tree(args.tree);
  auto spec = compiler::compile(tree, true);
  for (const auto& notice : spec.notices) spdlog::debug("{}", notice);

  std::vector<std::string> which;
  if (args.property == "all") {
    for (const auto& p : spec.properties) which.push_back(p.id);
    which.push_back("merged");
  } else {
    spec.term_for(args.property);  // throws on an unknown id
    which.push_back(args.property);
  }

  engine::RunOptions options;
  options.step.strict = args.strict;
  engine::MonitorBank bank(spec, which, options);

  std::vector<std::unique_ptr<std::ofstream>> files;
  std::vector<std::ostream*> sinks(which.size(), &out);
  if (!args.output.empty()) {
    if (which.size() > 1) std::filesystem::create_directories(args.output);
    for (std::size_t i = 0; i < which.size(); ++i) {
      std::string path = which.size() > 1
                             ? (std::filesystem::path(args.output) / (which[i] + ".verdicts.jsonl")).string()
                             : args.output;
      auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file) throw Error(ErrorKind::kIo, "cannot write " + path);
      sinks[i] = file.get();
      files.push_back(std::move(file));
    }
  }

  std::size_t index = 0;
  std::size_t dropped = 0;
  auto on_event = [&](const term::Event& event) {
    bank.feed(event);
    for (std::size_t i = 0; i < bank.size(); ++i) {
      const auto& monitor = bank.monitor(i);
      const auto& diagnostics = bank.last(i);
      for (const auto& message : diagnostics.messages) spdlog::debug("{} #{}: {}", which[i], index, message);
      format::VerdictRecord record;
      record.event_index = index;
      record.verdict = monitor.verdict();
      record.property = which[i];
      record.live_branches = monitor.live_branches();
      auto bindings = monitor.bindings();
      if (!bindings.empty()) record.bindings = std::move(bindings);
      record.skipped = diagnostics.skipped;
      *sinks[i] << format::to_jsonl(record) << '\n';
    }
    if (bank.size() > 0 && bank.last(0).dropped) ++dropped;
    ++index;
  };
  auto warn = [](std::size_t line, const std::string& reason) {
    spdlog::warn("skipping input line {}: {}", line, reason);
  };

  format::TraceReadStats stats;
  if (!args.trace.empty()) {
    std::ifstream file(args.trace);
    if (!file) throw Error(ErrorKind::kIo, "cannot open trace " + args.trace);
    stats = format::read_trace(file, on_event, warn);
  } else if (args.listen >= 0) {
    LineListener listener(static_cast<std::uint16_t>(args.listen));
    spdlog::info("listening on 127.0.0.1:{}", listener.port());
    std::size_t line_number = 0;
    listener.serve_one([&](std::string_view line) {
      ++line_number;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) return;
      std::string reason;
      if (auto event = format::parse_event(line, &reason)) {
        ++stats.events;
        on_event(*event);
      } else {
        ++stats.skipped;
        warn(line_number, reason);
      }
    });
  } else {
    stats = format::read_trace(in, on_event, warn);
  }
  for (auto& sink : sinks) sink->flush();

  bool detected = false;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const auto& monitor = bank.monitor(i);
    auto branches = monitor.live_branches();
    err << "summary property=" << which[i] << " verdict=" << engine::symbol(monitor.verdict());
    if (monitor.verdict() == engine::Verdict::kSatisfied) {
      detected = true;
      err << " class=" << model::to_string(class_of(spec, branches))
          << " branches=" << join(branches, ",");
    } else if (monitor.verdict() == engine::Verdict::kUnknown) {
      err << " live=" << join(branches, ",");
    }
    err << " events=" << stats.events << " malformed=" << stats.skipped
        << " unsubscribed=" << dropped << '\n';
  }
  return detected ? kExitDetected : kExitOk;
}

int validate_command(const std::string& path, bool runtime, std::ostream& out) {
  auto tree = format::load_tree(path, false);
  auto violations = model::validate(tree, runtime);
  for (const auto& v : violations) out << v.node << ": " << v.message << '\n';
  if (!violations.empty()) return kExitError;
  out << "ok: " << tree.nodes().size() << " nodes, root " << tree.root() << '\n';
  return kExitOk;
}

int branches_command(const std::string& path, std::ostream& out) {
  auto tree = format::load_tree(path);
  std::vector<std::string> notices;
  auto properties = compiler::decompose(tree, &notices);
  for (const auto& p : properties) {
    std::vector<std::string> labels;
    for (const auto& id : p.path) labels.push_back(tree.at(id).label);
    out << std::left << std::setw(6) << p.id << ' ' << std::setw(7)
        << model::to_string(p.node_class) << ' ' << join(labels, " > ") << '\n';
  }
  return kExitOk;
}

int bench_command(const std::string& path, const std::string& property,
                  std::vector<std::size_t> lengths, std::size_t events, int repeats,
                  std::uint64_t seed, std::ostream& out) {
  if (lengths.empty()) lengths.push_back(events);
  for (auto length : lengths) {
    if (length < 1000) throw Error(ErrorKind::kInvalidArgument, "bench lengths must be >= 1000");
  }
  auto spec = compiler::compile(format::load_tree(path), true);
  auto report = bench(spec, property, lengths, repeats, seed);
  out << "property " << report.property << '\n';
  out << "length     mean_ns   p50_ns   p99_ns   events/s   peak_alts\n";
  for (const auto& row : report.lengths) {
    out << std::left << std::setw(10) << row.length << std::right << std::fixed
        << std::setprecision(1) << std::setw(8) << row.mean_ns << std::setw(9) << row.p50_ns
        << std::setw(9) << row.p99_ns << std::setw(11) << std::setprecision(0)
        << row.events_per_second << std::setw(12) << row.peak_alternatives << '\n';
  }
  out << std::setprecision(3) << "flatness " << report.flatness << '\n';
  out << "peak_alternatives " << report.peak_alternatives << '\n';
  return kExitOk;
}

}  // namespace

void configure_logging() {
  static bool configured = false;
  if (!configured) {
    auto logger = spdlog::stderr_color_mt("rvaft");
    logger->set_pattern("rvaft: %l: %v");
    spdlog::set_default_logger(logger);
    configured = true;
  }
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("RVAFT_LOG")) {
    std::string value = env;
    if (value == "error") level = spdlog::level::err;
    else if (value == "warn") level = spdlog::level::warn;
    else if (value == "info") level = spdlog::level::info;
    else if (value == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err) {
  configure_logging();
  CLI::App app{"Runtime-verification attack-fault trees: validate, compile and run monitors"};
  app.require_subcommand(1);

  std::string tree_path;
  bool runtime = false;
  auto* validate = app.add_subcommand("validate", "check tree structure");
  validate->add_option("tree", tree_path, "tree file (.rvaft.json)")->required();
  validate->add_flag("--runtime", runtime, "also require a runtime event on every leaf");

  std::vector<std::string> remove;
  std::string output;
  auto* prune = app.add_subcommand("prune", "remove nodes and collapse gates");
  prune->add_option("tree", tree_path)->required();
  prune->add_option("--remove", remove, "node ids to remove")->required()->delimiter(',');
  prune->add_option("-o,--output", output, "output tree file (default stdout)");

  std::string node_id;
  std::string event_json;
  auto* annotate = app.add_subcommand("annotate", "install a runtime event on a node");
  annotate->add_option("tree", tree_path)->required();
  annotate->add_option("--node", node_id)->required();
  annotate->add_option("--event", event_json,
                       R"(event object, e.g. {"name":"a","pattern":{"topic":"x"}})")
      ->required();
  annotate->add_option("-o,--output", output);

  auto* branches = app.add_subcommand("branches", "list branch properties");
  branches->add_option("tree", tree_path)->required();

  bool merge = false;
  auto* compile = app.add_subcommand("compile", "emit the monitor specification");
  compile->add_option("tree", tree_path)->required();
  compile->add_flag("--merge", merge, "emit a single merged Main");
  compile->add_option("-o,--output", output);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "monitor a trace (exit 2 when a fault/attack is detected)");
  run->add_option("tree", run_args.tree)->required();
  run->add_option("-p,--property", run_args.property, "merged, a branch id, or all");
  auto* trace_opt = run->add_option("--trace", run_args.trace, "JSONL trace file (default stdin)");
  run->add_option("--listen", run_args.listen, "read JSONL from one TCP connection on this port")
      ->excludes(trace_opt);
  run->add_flag("--strict", run_args.strict, "subscribed events nobody consumes violate");
  run->add_option("-o,--output", run_args.output,
                  "verdict file, or a directory when --property all");

  std::string scenario_name;
  std::string outcome_name = "bad";
  std::size_t noise = 0;
  std::uint64_t seed = 1;
  auto* simulate = app.add_subcommand("simulate", "write a case-study scenario trace");
  simulate->add_option("scenario", scenario_name,
                       "fault-moving, fault-at-waypoint, attack-moving or attack-at-waypoint")
      ->required();
  simulate->add_option("--outcome", outcome_name, "bad (detected) or good");
  simulate->add_option("--noise", noise, "benign events to interleave");
  simulate->add_option("--seed", seed);
  simulate->add_option("-o,--output", output);

  std::string bench_property = "merged";
  std::size_t bench_events = 10000;
  std::vector<std::size_t> lengths;
  int repeats = 3;
  auto* bench_cmd = app.add_subcommand("bench", "per-event monitoring cost over noisy streams");
  bench_cmd->add_option("tree", tree_path)->required();
  bench_cmd->add_option("-p,--property", bench_property);
  bench_cmd->add_option("--events", bench_events, "stream length when no lengths are given");
  bench_cmd->add_option("--trace-lengths", lengths)->delimiter(',');
  bench_cmd->add_option("--repeat", repeats);
  bench_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*validate) return validate_command(tree_path, runtime, out);
    if (*prune) {
      auto result = model::prune(format::load_tree(tree_path),
                                 std::set<model::NodeId>(remove.begin(), remove.end()));
      for (const auto& warning : result.warnings) spdlog::warn("{}", warning);
      Output sink(output, out);
      *sink << format::serialize_tree(result.tree);
      return kExitOk;
    }
    if (*annotate) {
      auto tree = model::annotate(format::load_tree(tree_path), node_id,
                                  format::parse_annotation(event_json));
      Output sink(output, out);
      *sink << format::serialize_tree(tree);
      return kExitOk;
    }
    if (*branches) return branches_command(tree_path, out);
    if (*compile) {
      auto spec = compiler::compile(format::load_tree(tree_path), merge);
      for (const auto& notice : spec.notices) spdlog::info("{}", notice);
      Output sink(output, out);
      *sink << format::emit_spec(spec);
      return kExitOk;
    }
    if (*run) return run_command(run_args, in, out, err);
    if (*simulate) {
      auto scenario = parse_scenario(scenario_name);
      auto outcome = parse_outcome(outcome_name);
      if (!scenario) throw Error(ErrorKind::kInvalidArgument, "unknown scenario '" + scenario_name + "'");
      if (!outcome) throw Error(ErrorKind::kInvalidArgument, "outcome must be bad or good");
      auto trace = scenario_trace(*scenario, *outcome);
      if (noise > 0) trace = add_noise(trace, noise, seed);
      Output sink(output, out);
      for (const auto& event : trace) *sink << format::event_to_json(event) << '\n';
      return kExitOk;
    }
    if (*bench_cmd) {
      return bench_command(tree_path, bench_property, lengths, bench_events, repeats, seed, out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace rvaft::cli
