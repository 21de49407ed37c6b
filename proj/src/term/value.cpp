#include "rvaft/value.hpp"

#include <charconv>
#include <cmath>

#include "rvaft/error.hpp"

namespace rvaft {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kSchema: return "SchemaError";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kRootRemoval: return "RootRemoval";
    case ErrorKind::kRootAnnotation: return "RootAnnotation";
    case ErrorKind::kUnboundVariable: return "UnboundVariable";
    case ErrorKind::kTypeMismatch: return "TypeMismatch";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kUnclassifiedBranch: return "UnclassifiedBranch";
    case ErrorKind::kUnknownProperty: return "UnknownProperty";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace rvaft

namespace rvaft::term {

bool operator==(const Value& a, const Value& b) {
  if (a.type() != b.type()) return false;
  switch (a.type()) {
    case Value::Type::kNull: return true;
    case Value::Type::kNumber: return a.as_number() == b.as_number();
    case Value::Type::kString: return a.as_string() == b.as_string();
    case Value::Type::kBoolean: return a.as_boolean() == b.as_boolean();
    case Value::Type::kRecord: return a.as_record() == b.as_record();
    case Value::Type::kList: return a.as_list() == b.as_list();
  }
  return false;
}

const char* type_name(Value::Type type) {
  switch (type) {
    case Value::Type::kNull: return "null";
    case Value::Type::kNumber: return "number";
    case Value::Type::kString: return "string";
    case Value::Type::kBoolean: return "boolean";
    case Value::Type::kRecord: return "record";
    case Value::Type::kList: return "list";
  }
  return "?";
}

std::string format_number(double number) {
  if (std::isnan(number)) return "nan";
  if (std::isinf(number)) return number > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, number);
  if (ec != std::errc{}) return std::to_string(number);
  return std::string(buffer, end);
}

std::string to_string(const Value& value) {
  switch (value.type()) {
    case Value::Type::kNull: return "null";
    case Value::Type::kNumber: return format_number(value.as_number());
    case Value::Type::kString: {
      std::string out = "'";
      for (char c : value.as_string()) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
      }
      return out + "'";
    }
    case Value::Type::kBoolean: return value.as_boolean() ? "true" : "false";
    case Value::Type::kRecord: {
      std::string out = "{";
      bool first = true;
      for (const auto& [key, field] : value.as_record()) {
        if (!first) out += ", ";
        first = false;
        out += key + ": " + to_string(field);
      }
      return out + "}";
    }
    case Value::Type::kList: {
      std::string out = "[";
      bool first = true;
      for (const auto& item : value.as_list()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(item);
      }
      return out + "]";
    }
  }
  return "?";
}

const Value* Event::find(const std::string& key) const {
  auto it = fields_.find(key);
  return it == fields_.end() ? nullptr : &it->second;
}

std::optional<std::string> Event::topic() const {
  const Value* topic = find("topic");
  if (topic == nullptr || !topic->is_string()) return std::nullopt;
  return topic->as_string();
}

const Value* Env::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::optional<Env> Env::bind(const std::string& name,
                             const Value& value) const {
  if (const Value* bound = find(name)) {
    if (*bound != value) return std::nullopt;
    return *this;
  }
  Env extended = *this;
  extended.bindings_.emplace(name, value);
  return extended;
}

Env Env::delta(const Env& before) const {
  Env out;
  for (const auto& [name, value] : bindings_) {
    if (!before.contains(name)) out.bindings_.emplace(name, value);
  }
  return out;
}

std::string to_string(const Env& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : env.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + to_string(value);
  }
  return out + "}";
}

}  // namespace rvaft::term

namespace rvaft::term {

std::string canonical_topic(std::string topic) {
  if (!topic.empty() && topic.front() == '/') topic.erase(0, 1);
  return topic;
}

}  // namespace rvaft::term
