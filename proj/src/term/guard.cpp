#include "rvaft/guard.hpp"

#include <algorithm>

#include "rvaft/error.hpp"

namespace rvaft::term {

struct Guard::Node {
  GuardOp op;
  std::string name;
  Value literal;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Guard Guard::variable(std::string name) {
  return Guard(std::make_shared<const Node>(
      Node{GuardOp::kVariable, std::move(name), {}, nullptr, nullptr}));
}

Guard Guard::literal(Value value) {
  return Guard(std::make_shared<const Node>(
      Node{GuardOp::kLiteral, {}, std::move(value), nullptr, nullptr}));
}

Guard Guard::binary(GuardOp op, Guard lhs, Guard rhs) {
  return Guard(std::make_shared<const Node>(
      Node{op, {}, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

Guard Guard::negate(Guard operand) {
  return Guard(std::make_shared<const Node>(
      Node{GuardOp::kNot, {}, {}, std::move(operand.node_), nullptr}));
}

GuardOp Guard::op() const { return node_->op; }
const std::string& Guard::name() const { return node_->name; }
const Value& Guard::literal_value() const { return node_->literal; }
Guard Guard::lhs() const { return Guard(node_->lhs); }
Guard Guard::rhs() const { return Guard(node_->rhs); }

bool operator==(const Guard& a, const Guard& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case GuardOp::kVariable: return a.name() == b.name();
    case GuardOp::kLiteral: return a.literal_value() == b.literal_value();
    case GuardOp::kNot: return a.operand() == b.operand();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Guard conjunction(Guard lhs, Guard rhs) {
  return Guard::binary(GuardOp::kAnd, std::move(lhs), std::move(rhs));
}

namespace {

const char* symbol(GuardOp op) {
  switch (op) {
    case GuardOp::kAdd: return "+";
    case GuardOp::kSub: return "-";
    case GuardOp::kLess: return "<";
    case GuardOp::kLessEqual: return "<=";
    case GuardOp::kGreater: return ">";
    case GuardOp::kGreaterEqual: return ">=";
    case GuardOp::kEqual: return "==";
    case GuardOp::kNotEqual: return "!=";
    case GuardOp::kAnd: return "and";
    case GuardOp::kOr: return "or";
    case GuardOp::kNot: return "not";
    default: return "?";
  }
}

[[noreturn]] void type_mismatch(GuardOp op, const Value& a, const Value& b) {
  throw Error(ErrorKind::kTypeMismatch,
              std::string("cannot apply '") + symbol(op) + "' to " +
                  type_name(a.type()) + " and " + type_name(b.type()));
}

bool require_boolean(GuardOp op, const Value& v) {
  if (!v.is_boolean()) type_mismatch(op, v, v);
  return v.as_boolean();
}

bool compare(GuardOp op, const Value& a, const Value& b) {
  if (op == GuardOp::kEqual) return a == b;
  if (op == GuardOp::kNotEqual) return a != b;
  int order = 0;
  if (a.is_number() && b.is_number()) {
    order = a.as_number() < b.as_number() ? -1
            : a.as_number() > b.as_number() ? 1
                                             : 0;
  } else if (a.is_string() && b.is_string()) {
    int c = a.as_string().compare(b.as_string());
    order = c < 0 ? -1 : c > 0 ? 1 : 0;
  } else {
    type_mismatch(op, a, b);
  }
  switch (op) {
    case GuardOp::kLess: return order < 0;
    case GuardOp::kLessEqual: return order <= 0;
    case GuardOp::kGreater: return order > 0;
    default: return order >= 0;
  }
}

}  // namespace

Value evaluate(const Guard& guard, const Env& env) {
  switch (guard.op()) {
    case GuardOp::kVariable: {
      const Value* bound = env.find(guard.name());
      if (bound == nullptr) {
        throw Error(ErrorKind::kUnboundVariable,
                    "unbound variable '" + guard.name() + "'");
      }
      return *bound;
    }
    case GuardOp::kLiteral:
      return guard.literal_value();
    case GuardOp::kAdd:
    case GuardOp::kSub: {
      Value a = evaluate(guard.lhs(), env);
      Value b = evaluate(guard.rhs(), env);
      if (!a.is_number() || !b.is_number()) type_mismatch(guard.op(), a, b);
      return guard.op() == GuardOp::kAdd ? a.as_number() + b.as_number()
                                         : a.as_number() - b.as_number();
    }
    case GuardOp::kAnd: {
      if (!require_boolean(guard.op(), evaluate(guard.lhs(), env))) {
        return false;
      }
      return require_boolean(guard.op(), evaluate(guard.rhs(), env));
    }
    case GuardOp::kOr: {
      if (require_boolean(guard.op(), evaluate(guard.lhs(), env))) {
        return true;
      }
      return require_boolean(guard.op(), evaluate(guard.rhs(), env));
    }
    case GuardOp::kNot:
      return !require_boolean(guard.op(), evaluate(guard.operand(), env));
    default:
      return compare(guard.op(), evaluate(guard.lhs(), env),
                     evaluate(guard.rhs(), env));
  }
}

bool eval_guard(const Guard& guard, const Env& env) {
  Value result = evaluate(guard, env);
  if (!result.is_boolean()) {
    throw Error(ErrorKind::kTypeMismatch,
                std::string("guard evaluates to ") +
                    type_name(result.type()) + ", expected boolean");
  }
  return result.as_boolean();
}

namespace {

void collect(const Guard& guard, std::vector<std::string>& out) {
  switch (guard.op()) {
    case GuardOp::kVariable:
      if (std::find(out.begin(), out.end(), guard.name()) == out.end()) {
        out.push_back(guard.name());
      }
      return;
    case GuardOp::kLiteral:
      return;
    case GuardOp::kNot:
      collect(guard.operand(), out);
      return;
    default:
      collect(guard.lhs(), out);
      collect(guard.rhs(), out);
  }
}

// Binding strength, loosest first. Mirrors the textual grammar.
int precedence(GuardOp op) {
  switch (op) {
    case GuardOp::kOr: return 1;
    case GuardOp::kAnd: return 2;
    case GuardOp::kNot: return 3;
    case GuardOp::kLess:
    case GuardOp::kLessEqual:
    case GuardOp::kGreater:
    case GuardOp::kGreaterEqual:
    case GuardOp::kEqual:
    case GuardOp::kNotEqual: return 4;
    case GuardOp::kAdd:
    case GuardOp::kSub: return 5;
    default: return 6;
  }
}

std::string print(const Guard& guard, int min_precedence) {
  std::string text;
  const int own = precedence(guard.op());
  switch (guard.op()) {
    case GuardOp::kVariable:
      text = guard.name();
      break;
    case GuardOp::kLiteral:
      text = to_string(guard.literal_value());
      break;
    case GuardOp::kNot:
      text = "not " + print(guard.operand(), 4);
      break;
    case GuardOp::kOr:
    case GuardOp::kAnd:
    case GuardOp::kAdd:
    case GuardOp::kSub:
      text = print(guard.lhs(), own) + " " + symbol(guard.op()) + " " +
             print(guard.rhs(), own + 1);
      break;
    default:
      text = print(guard.lhs(), own + 1) + " " + symbol(guard.op()) + " " +
             print(guard.rhs(), own + 1);
      break;
  }
  return own < min_precedence ? "(" + text + ")" : text;
}

}  // namespace

std::vector<std::string> variables(const Guard& guard) {
  std::vector<std::string> out;
  collect(guard, out);
  return out;
}

std::string to_string(const Guard& guard) { return print(guard, 1); }

}  // namespace rvaft::term
