#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rvaft/value.hpp"

namespace rvaft::term {

enum class GuardOp {
  kVariable,
  kLiteral,
  kAdd,
  kSub,
  kLess,
  kLessEqual,
  kGreater,
  kGreaterEqual,
  kEqual,
  kNotEqual,
  kAnd,
  kOr,
  kNot,
};

/// Immutable guard expression: variables, literals, `+ -`, comparisons and
/// `and or not`. Cheap to copy (shared structure).
class Guard {
 public:
  static Guard variable(std::string name);
  static Guard literal(Value value);
  static Guard binary(GuardOp op, Guard lhs, Guard rhs);
  static Guard negate(Guard operand);

  GuardOp op() const;
  const std::string& name() const;
  const Value& literal_value() const;
  Guard lhs() const;
  Guard rhs() const;
  Guard operand() const { return lhs(); }

  friend bool operator==(const Guard& a, const Guard& b);
  friend bool operator!=(const Guard& a, const Guard& b) { return !(a == b); }

 private:
  struct Node;
  explicit Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Guard conjunction(Guard lhs, Guard rhs);

/// Evaluates to a value. Throws `Error` with kUnboundVariable or
/// kTypeMismatch. Equality across different types is plain inequality;
/// ordering and arithmetic across types are type errors.
Value evaluate(const Guard& guard, const Env& env);

/// `evaluate` constrained to a boolean result.
bool eval_guard(const Guard& guard, const Env& env);

/// Distinct variable names in first-occurrence order.
std::vector<std::string> variables(const Guard& guard);

/// Minimal-parenthesis rendering in the textual guard syntax.
std::string to_string(const Guard& guard);

}  // namespace rvaft::term
