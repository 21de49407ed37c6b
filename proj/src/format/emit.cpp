#include <map>

#include "rvaft/format.hpp"

namespace rvaft::format {

namespace {

using term::EventAnnotation;
using term::Term;
using term::TermKind;

bool is_identifier(const std::string& text) {
  return term::is_valid_variable_name(text) && text != "and" && text != "or" && text != "not";
}

std::string argument_list(const EventAnnotation& a) {
  std::string args;
  for (const auto& [key, matcher] : a.pattern) {
    if (key == "topic" || key == "name") continue;
    std::string arg;
    if (matcher.is_bind()) {
      arg = matcher.variable();
    } else if (matcher.value().is_string() && is_identifier(matcher.value().as_string())) {
      arg = matcher.value().as_string();
    } else {
      arg = term::to_string(matcher.value());
    }
    if (!args.empty()) args += ", ";
    args += arg;
  }
  return args;
}

// Distinct event types in first-occurrence order; a name reused with a
// different pattern or guard gets a numeric suffix.
class EventTable {
 public:
  const std::string& signature_of(const EventAnnotation& a) {
    for (const auto& entry : entries_) {
      if (entry.annotation == a) return entry.signature;
    }
    std::string base = a.name + "(" + argument_list(a) + ")";
    std::string signature = base;
    int suffix = 1;
    while (taken(signature)) {
      ++suffix;
      signature = a.name + "_" + std::to_string(suffix) + "(" + argument_list(a) + ")";
    }
    entries_.push_back({a, signature});
    return entries_.back().signature;
  }

  void collect(const Term& t) {
    switch (t.kind()) {
      case TermKind::kAtom: signature_of(t.annotation()); break;
      case TermKind::kSeq:
      case TermKind::kUnion:
      case TermKind::kShuffle:
        collect(t.left());
        collect(t.right());
        break;
      case TermKind::kLet: collect(t.body()); break;
      default: break;
    }
  }

  std::string lines() const {
    std::string out;
    for (const auto& entry : entries_) {
      const auto& a = entry.annotation;
      out += entry.signature + " matches {";
      bool first = true;
      for (const auto& [key, matcher] : a.pattern) {
        out += first ? " " : ", ";
        first = false;
        out += key + ": " + (matcher.is_bind() ? matcher.variable() : term::to_string(matcher.value()));
      }
      out += first ? "}" : " }";
      if (a.guard) out += " with " + term::to_string(*a.guard);
      if (a.on_guard_fail) out += std::string(" on_fail ") + term::to_string(*a.on_guard_fail);
      out += ";\n";
    }
    return out;
  }

 private:
  struct Entry {
    EventAnnotation annotation;
    std::string signature;
  };

  bool taken(const std::string& signature) const {
    for (const auto& entry : entries_) {
      if (entry.signature == signature) return true;
    }
    return false;
  }

  std::vector<Entry> entries_;
};

int precedence(TermKind kind) {
  switch (kind) {
    case TermKind::kUnion: return 1;
    case TermKind::kShuffle: return 2;
    case TermKind::kSeq: return 3;
    default: return 4;
  }
}

std::string print(const Term& t, int min_precedence, EventTable& table) {
  const int own = precedence(t.kind());
  std::string text;
  switch (t.kind()) {
    case TermKind::kEmpty: text = "none"; break;
    case TermKind::kEpsilon: text = "empty"; break;
    case TermKind::kAtom: text = table.signature_of(t.annotation()); break;
    case TermKind::kCheck: text = "[" + term::to_string(t.guard()) + "]"; break;
    case TermKind::kSeq:
      text = print(t.left(), own + 1, table) + " " + print(t.right(), own, table);
      break;
    case TermKind::kShuffle:
      text = print(t.left(), own + 1, table) + " | " + print(t.right(), own, table);
      break;
    case TermKind::kUnion:
      text = print(t.left(), own + 1, table) + " \\/ " + print(t.right(), own, table);
      break;
    case TermKind::kLet: {
      const auto& vars = t.let_variables();
      text = vars.empty() ? "{ " : "{ let ";
      for (std::size_t i = 0; i < vars.size(); ++i) text += (i ? ", " : "") + vars[i];
      text += (vars.empty() ? "" : "; ") + print(t.body(), 1, table) + " }";
      break;
    }
  }
  return own < min_precedence ? "(" + text + ")" : text;
}

std::string main_line(const std::string& name, const Term& t, EventTable& table) {
  std::string body = t.is(TermKind::kLet) ? print(t, 1, table)
                                          : "{ " + print(t, 1, table) + " }";
  return name + " = " + body + "\n";
}

}  // namespace

std::string emit_spec(const compiler::MonitorSpec& spec) {
  EventTable table;
  std::vector<std::pair<std::string, const Term*>> mains;
  if (spec.merged) {
    mains.emplace_back("Main", &*spec.merged);
  } else if (spec.properties.size() == 1) {
    mains.emplace_back("Main", &spec.properties.front().term);
  } else {
    for (const auto& property : spec.properties) {
      mains.emplace_back("Main_" + property.id, &property.term);
    }
  }
  for (const auto& [name, t] : mains) table.collect(*t);
  std::string out = table.lines();
  for (const auto& [name, t] : mains) out += main_line(name, *t, table);
  return out;
}

}  // namespace rvaft::format
