#include <fstream>

#include "format/json_value.hpp"
#include "rvaft/error.hpp"
#include "rvaft/format.hpp"

namespace rvaft::format {

using detail::Json;

std::optional<term::Event> parse_event(std::string_view line, std::string* reason) {
  auto fail = [&](const std::string& why) -> std::optional<term::Event> {
    if (reason != nullptr) *reason = why;
    return std::nullopt;
  };
  Json json = Json::parse(line.begin(), line.end(), nullptr, false);
  if (json.is_discarded()) return fail("malformed JSON");
  if (!json.is_object()) return fail("record is not a JSON object");
  if (json.empty()) return fail("record has no keys");
  auto topic = json.find("topic");
  if (topic == json.end() || !topic->is_string()) return fail("record has no string topic");
  if (auto time = json.find("time"); time != json.end() && !time->is_number()) {
    return fail("time must be a number");
  }
  term::Record fields;
  for (const auto& [key, item] : json.items()) fields[key] = detail::value_from_json(item);
  return term::Event(std::move(fields));
}

TraceReadStats read_trace(std::istream& in, const std::function<void(term::Event)>& sink,
                          const std::function<void(std::size_t, const std::string&)>& warn) {
  TraceReadStats stats;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string reason;
    auto event = parse_event(line, &reason);
    if (!event) {
      ++stats.skipped;
      if (warn) warn(number, reason);
      continue;
    }
    ++stats.events;
    sink(std::move(*event));
  }
  return stats;
}

std::vector<term::Event> read_trace(std::istream& in, TraceReadStats* stats) {
  std::vector<term::Event> events;
  auto result = read_trace(in, [&](term::Event e) { events.push_back(std::move(e)); });
  if (stats != nullptr) *stats = result;
  return events;
}

std::vector<term::Event> load_trace(const std::string& path, TraceReadStats* stats) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open trace " + path);
  return read_trace(in, stats);
}

std::string event_to_json(const term::Event& event) {
  Json out = Json::object();
  // topic and time first for readability; the rest in key order.
  for (const char* key : {"topic", "time"}) {
    if (const auto* v = event.find(key)) out[key] = detail::value_to_json(*v);
  }
  for (const auto& [key, value] : event.fields()) {
    if (key == "topic" || key == "time") continue;
    out[key] = detail::value_to_json(value);
  }
  return out.dump();
}

std::string to_jsonl(const VerdictRecord& record) {
  Json out = Json::object();
  out["event_index"] = record.event_index;
  out["verdict"] = engine::wire_name(record.verdict);
  out["property"] = record.property;
  out["live_branches"] = record.live_branches;
  if (record.bindings) {
    Json bindings = Json::object();
    for (const auto& [name, value] : record.bindings->bindings()) {
      bindings[name] = detail::value_to_json(value);
    }
    out["bindings"] = std::move(bindings);
  }
  out["skipped"] = record.skipped;
  return out.dump();
}

VerdictRecord parse_verdict_record(std::string_view line) {
  Json json = detail::parse_json(line);
  VerdictRecord record;
  try {
    record.event_index = json.at("event_index").get<std::size_t>();
    const auto verdict = json.at("verdict").get<std::string>();
    if (verdict == "?") {
      record.verdict = engine::Verdict::kUnknown;
    } else if (verdict == "top") {
      record.verdict = engine::Verdict::kSatisfied;
    } else if (verdict == "bottom") {
      record.verdict = engine::Verdict::kViolated;
    } else {
      throw Error(ErrorKind::kSchema, "unknown verdict '" + verdict + "'");
    }
    record.property = json.at("property").get<std::string>();
    record.live_branches = json.at("live_branches").get<std::vector<std::string>>();
    if (auto it = json.find("bindings"); it != json.end()) {
      term::Env env;
      for (const auto& [name, value] : it->items()) {
        env = *env.bind(name, detail::value_from_json(value));
      }
      record.bindings = env;
    }
    record.skipped = json.at("skipped").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, std::string("verdict record: ") + e.what());
  }
  return record;
}

}  // namespace rvaft::format
