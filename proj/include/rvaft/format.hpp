#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvaft/compiler.hpp"
#include "rvaft/engine.hpp"
#include "rvaft/model.hpp"
#include "rvaft/term.hpp"

namespace rvaft::format {

/// Parses a `.rvaft.json` document. Throws ParseError (with line and
/// column) on malformed JSON and Error(kSchema) on document shape
/// problems, and, when `check` is set, on any structural violation.
/// Topic literals are stored without a leading '/'.
model::RvaftTree parse_tree(std::string_view text, bool check = true);

/// Throws Error(kIo) if the file cannot be read.
model::RvaftTree load_tree(const std::string& path, bool check = true);

/// The "event" object of a tree node, given as JSON text.
term::EventAnnotation parse_annotation(std::string_view json_text);

/// Pretty JSON (two-space indent, trailing newline). Node order follows
/// the tree's id order so output is stable.
std::string serialize_tree(const model::RvaftTree& tree);

/// Guard surface syntax. Throws ParseError with the 1-based column.
term::Guard parse_guard(std::string_view text);

/// Monitor specification text: one `name(args) matches {...} with g;`
/// line per distinct event type, then `Main = {...}` for the merged term,
/// or one `Main_<id>` line per property when there is no merged term
/// (plain `Main` if there is only one property).
std::string emit_spec(const compiler::MonitorSpec& spec);

/// Converts one JSON object to an event. Returns nullopt (with a reason)
/// for non-objects, empty objects or a missing/non-string topic.
std::optional<term::Event> parse_event(std::string_view line, std::string* reason = nullptr);

struct TraceReadStats {
  std::size_t events = 0;
  std::size_t skipped = 0;
};

/// Streams JSONL events to `sink`. Blank lines are ignored; malformed
/// lines are counted, reported through `warn` and skipped.
TraceReadStats read_trace(std::istream& in,
                          const std::function<void(term::Event)>& sink,
                          const std::function<void(std::size_t line, const std::string&)>& warn = {});

std::vector<term::Event> read_trace(std::istream& in, TraceReadStats* stats = nullptr);

/// Throws Error(kIo) if the file cannot be opened.
std::vector<term::Event> load_trace(const std::string& path, TraceReadStats* stats = nullptr);

std::string event_to_json(const term::Event& event);

struct VerdictRecord {
  std::size_t event_index = 0;
  engine::Verdict verdict = engine::Verdict::kUnknown;
  std::string property;
  std::vector<std::string> live_branches;
  std::optional<term::Env> bindings;
  bool skipped = false;
};

/// One compact JSON line, no trailing newline.
std::string to_jsonl(const VerdictRecord& record);
VerdictRecord parse_verdict_record(std::string_view line);

}  // namespace rvaft::format
