#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rvaft::term {

class Value;

using Record = std::map<std::string, Value>;
using List = std::vector<Value>;

/// A field value carried by an event or bound to a variable.
///
/// Scalars are numbers (always double), strings and booleans. Nested objects
/// and arrays are kept opaque and only ever compared by deep structural
/// equality. JSON `null` maps to the null value.
class Value {
 public:
  enum class Type { kNull, kNumber, kString, kBoolean, kRecord, kList };

  Value() = default;
  Value(double number) : data_(number) {}
  Value(int number) : data_(static_cast<double>(number)) {}
  Value(std::string text) : data_(std::move(text)) {}
  Value(const char* text) : data_(std::string(text)) {}
  Value(bool flag) : data_(flag) {}
  Value(Record record)
      : data_(std::make_shared<const Record>(std::move(record))) {}
  Value(List list) : data_(std::make_shared<const List>(std::move(list))) {}

  Type type() const noexcept { return static_cast<Type>(data_.index()); }
  bool is_null() const noexcept { return type() == Type::kNull; }
  bool is_number() const noexcept { return type() == Type::kNumber; }
  bool is_string() const noexcept { return type() == Type::kString; }
  bool is_boolean() const noexcept { return type() == Type::kBoolean; }

  double as_number() const { return std::get<double>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  bool as_boolean() const { return std::get<bool>(data_); }
  const Record& as_record() const {
    return *std::get<std::shared_ptr<const Record>>(data_);
  }
  const List& as_list() const {
    return *std::get<std::shared_ptr<const List>>(data_);
  }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  std::variant<std::monostate, double, std::string, bool,
               std::shared_ptr<const Record>, std::shared_ptr<const List>>
      data_;
};

const char* type_name(Value::Type type);

/// Compact human-readable rendering (JSON-like, strings single-quoted).
std::string to_string(const Value& value);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double number);

/// A flat key -> value record observed on the monitored system.
class Event {
 public:
  Event() = default;
  explicit Event(Record fields) : fields_(std::move(fields)) {}
  Event(std::initializer_list<std::pair<const std::string, Value>> fields)
      : fields_(fields) {}

  const Value* find(const std::string& key) const;
  const Record& fields() const noexcept { return fields_; }
  bool empty() const noexcept { return fields_.empty(); }

  /// The "topic" field if it is a string.
  std::optional<std::string> topic() const;

  friend bool operator==(const Event& a, const Event& b) {
    return a.fields_ == b.fields_;
  }

 private:
  Record fields_;
};

/// Variable bindings of one monitor alternative. Bind-once: a variable is
/// never rebound to a different value.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<const std::string, Value>> bindings)
      : bindings_(bindings) {}

  const Value* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  const std::map<std::string, Value>& bindings() const noexcept {
    return bindings_;
  }

  /// Returns a copy extended with `name = value`, or nullopt if `name` is
  /// already bound to something else.
  std::optional<Env> bind(const std::string& name, const Value& value) const;

  /// Bindings present here but not in `before`.
  Env delta(const Env& before) const;

  friend bool operator==(const Env& a, const Env& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::map<std::string, Value> bindings_;
};

std::string to_string(const Env& env);

}  // namespace rvaft::term

namespace rvaft::term {

/// Topic names are compared without one leading '/' ("/command" ==
/// "command").
std::string canonical_topic(std::string topic);

}  // namespace rvaft::term
