#include "rvaft/term.hpp"

#include <algorithm>
#include <functional>
#include <regex>

#include "rvaft/error.hpp"

namespace rvaft::term {

const char* to_string(GuardPolicy policy) {
  return policy == GuardPolicy::kSkip ? "skip" : "violate";
}

bool is_valid_variable_name(const std::string& name) {
  static const std::regex kPattern("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(name, kPattern);
}

std::vector<std::string> EventAnnotation::bound_variables() const {
  std::vector<std::string> out;
  for (const auto& [key, matcher] : pattern) {
    if (matcher.is_bind() &&
        std::find(out.begin(), out.end(), matcher.variable()) == out.end()) {
      out.push_back(matcher.variable());
    }
  }
  return out;
}

GuardPolicy EventAnnotation::effective_policy() const {
  if (on_guard_fail) return *on_guard_fail;
  if (!guard) return GuardPolicy::kSkip;
  const auto own = bound_variables();
  for (const auto& name : variables(*guard)) {
    if (std::find(own.begin(), own.end(), name) == own.end()) {
      return GuardPolicy::kViolate;
    }
  }
  return GuardPolicy::kSkip;
}

bool operator==(const EventAnnotation& a, const EventAnnotation& b) {
  return a.name == b.name && a.pattern == b.pattern && a.guard == b.guard &&
         a.on_guard_fail == b.on_guard_fail;
}

namespace {

bool values_match(const std::string& key, const Value& expected,
                  const Value& actual) {
  if (key == "topic" && expected.is_string() && actual.is_string()) {
    return canonical_topic(expected.as_string()) ==
           canonical_topic(actual.as_string());
  }
  return expected == actual;
}

}  // namespace

MatchResult match_event(const EventAnnotation& atom, const Event& event,
                        const Env& env) {
  MatchResult result;
  Env current = env;
  for (const auto& [key, matcher] : atom.pattern) {
    const Value* actual = event.find(key);
    if (actual == nullptr) return result;
    if (matcher.is_bind()) {
      auto extended = current.bind(matcher.variable(), *actual);
      if (!extended) return result;
      current = std::move(*extended);
    } else if (!values_match(key, matcher.value(), *actual)) {
      return result;
    }
  }
  if (atom.guard) {
    try {
      if (!eval_guard(*atom.guard, current)) {
        result.outcome = MatchOutcome::kGuardFail;
        return result;
      }
    } catch (const Error& error) {
      if (error.kind() != ErrorKind::kUnboundVariable) throw;
      result.diagnostic = atom.name + ": " + error.what();
      return result;
    }
  }
  result.outcome = MatchOutcome::kProgress;
  result.env = std::move(current);
  return result;
}

// ---------------------------------------------------------------------------

struct Term::Node {
  TermKind kind;
  std::size_t hash;
  std::vector<Term> children;
  std::optional<EventAnnotation> annotation;
  std::optional<Guard> guard;
  std::vector<std::string> variables;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_annotation(const EventAnnotation& a) {
  std::size_t h = std::hash<std::string>{}(a.name);
  for (const auto& [key, matcher] : a.pattern) {
    h = mix(h, std::hash<std::string>{}(key));
    h = mix(h, std::hash<std::string>{}(matcher.variable()));
  }
  return mix(h, a.guard.has_value());
}

}  // namespace

Term Term::empty() {
  static const Term kEmpty(std::make_shared<const Node>(
      Node{TermKind::kEmpty, 11, {}, std::nullopt, std::nullopt, {}}));
  return kEmpty;
}

Term Term::epsilon() {
  static const Term kEpsilon(std::make_shared<const Node>(
      Node{TermKind::kEpsilon, 13, {}, std::nullopt, std::nullopt, {}}));
  return kEpsilon;
}

Term Term::atom(EventAnnotation annotation) {
  std::size_t h = mix(17, hash_annotation(annotation));
  return Term(std::make_shared<const Node>(Node{
      TermKind::kAtom, h, {}, std::move(annotation), std::nullopt, {}}));
}

Term Term::check(Guard guard) {
  std::size_t h = mix(19, std::hash<std::string>{}(term::to_string(guard)));
  return Term(std::make_shared<const Node>(
      Node{TermKind::kCheck, h, {}, std::nullopt, std::move(guard), {}}));
}

Term Term::seq(Term first, Term second) {
  std::size_t h = mix(mix(23, first.hash()), second.hash());
  return Term(std::make_shared<const Node>(
      Node{TermKind::kSeq, h, {std::move(first), std::move(second)},
           std::nullopt, std::nullopt, {}}));
}

Term Term::either(Term left, Term right) {
  std::size_t h = mix(mix(29, left.hash()), right.hash());
  return Term(std::make_shared<const Node>(
      Node{TermKind::kUnion, h, {std::move(left), std::move(right)},
           std::nullopt, std::nullopt, {}}));
}

Term Term::shuffle(Term left, Term right) {
  std::size_t h = mix(mix(31, left.hash()), right.hash());
  return Term(std::make_shared<const Node>(
      Node{TermKind::kShuffle, h, {std::move(left), std::move(right)},
           std::nullopt, std::nullopt, {}}));
}

Term Term::let(std::vector<std::string> variables, Term body) {
  std::size_t h = mix(37, body.hash());
  for (const auto& v : variables) h = mix(h, std::hash<std::string>{}(v));
  return Term(std::make_shared<const Node>(
      Node{TermKind::kLet, h, {std::move(body)}, std::nullopt, std::nullopt,
           std::move(variables)}));
}

TermKind Term::kind() const noexcept { return node_->kind; }
const Term& Term::left() const { return node_->children.at(0); }
const Term& Term::right() const { return node_->children.at(1); }
const Term& Term::body() const { return node_->children.at(0); }
const EventAnnotation& Term::annotation() const { return *node_->annotation; }
const Guard& Term::guard() const { return *node_->guard; }
const std::vector<std::string>& Term::let_variables() const {
  return node_->variables;
}
std::size_t Term::hash() const noexcept { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::kEmpty:
    case TermKind::kEpsilon:
      return true;
    case TermKind::kAtom:
      return a.annotation() == b.annotation();
    case TermKind::kCheck:
      return a.guard() == b.guard();
    case TermKind::kLet:
      return a.let_variables() == b.let_variables() && a.body() == b.body();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------------------

namespace {

template <typename Combine>
Term right_fold(const std::vector<Term>& terms, Term unit, Combine combine) {
  if (terms.empty()) return unit;
  Term acc = terms.back();
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
    acc = combine(*it, acc);
  }
  return acc;
}

}  // namespace

Term fold_union(const std::vector<Term>& terms) {
  return right_fold(terms, Term::empty(), Term::either);
}

Term fold_seq(const std::vector<Term>& terms) {
  return right_fold(terms, Term::epsilon(), Term::seq);
}

Term fold_shuffle(const std::vector<Term>& terms) {
  return right_fold(terms, Term::epsilon(), Term::shuffle);
}

Term normalize(const Term& term) {
  switch (term.kind()) {
    case TermKind::kSeq:
    case TermKind::kShuffle: {
      Term a = normalize(term.left());
      Term b = normalize(term.right());
      if (a.is(TermKind::kEmpty) || b.is(TermKind::kEmpty)) return Term::empty();
      if (a.is(TermKind::kEpsilon)) return b;
      if (b.is(TermKind::kEpsilon)) return a;
      if (a == term.left() && b == term.right()) return term;
      return term.is(TermKind::kSeq) ? Term::seq(a, b) : Term::shuffle(a, b);
    }
    case TermKind::kUnion: {
      Term a = normalize(term.left());
      Term b = normalize(term.right());
      if (a.is(TermKind::kEmpty)) return b;
      if (b.is(TermKind::kEmpty)) return a;
      if (a == term.left() && b == term.right()) return term;
      return Term::either(a, b);
    }
    case TermKind::kLet: {
      Term body = normalize(term.body());
      if (body.is(TermKind::kEmpty)) return body;
      if (body == term.body()) return term;
      return Term::let(term.let_variables(), body);
    }
    default:
      return term;
  }
}

bool nullable(const Term& term, const Env& env) {
  switch (term.kind()) {
    case TermKind::kEpsilon:
      return true;
    case TermKind::kEmpty:
    case TermKind::kAtom:
      return false;
    case TermKind::kCheck:
      try {
        return eval_guard(term.guard(), env);
      } catch (const Error&) {
        return false;
      }
    case TermKind::kSeq:
    case TermKind::kShuffle:
      return nullable(term.left(), env) && nullable(term.right(), env);
    case TermKind::kUnion:
      return nullable(term.left(), env) || nullable(term.right(), env);
    case TermKind::kLet:
      return nullable(term.body(), env);
  }
  return false;
}

namespace {

void collect_atoms(const Term& term, std::vector<EventAnnotation>& out) {
  switch (term.kind()) {
    case TermKind::kAtom:
      out.push_back(term.annotation());
      return;
    case TermKind::kSeq:
    case TermKind::kUnion:
    case TermKind::kShuffle:
      collect_atoms(term.left(), out);
      collect_atoms(term.right(), out);
      return;
    case TermKind::kLet:
      collect_atoms(term.body(), out);
      return;
    default:
      return;
  }
}

}  // namespace

std::vector<EventAnnotation> atoms(const Term& term) {
  std::vector<EventAnnotation> out;
  collect_atoms(term, out);
  return out;
}

std::vector<std::string> bound_variables(const Term& term) {
  std::vector<std::string> out;
  for (const auto& atom : atoms(term)) {
    for (const auto& name : atom.bound_variables()) {
      if (std::find(out.begin(), out.end(), name) == out.end()) {
        out.push_back(name);
      }
    }
  }
  return out;
}

std::set<std::string> topics(const Term& term) {
  std::set<std::string> out;
  for (const auto& atom : atoms(term)) {
    for (const auto& [key, matcher] : atom.pattern) {
      if (key == "topic" && !matcher.is_bind() && matcher.value().is_string()) {
        out.insert(canonical_topic(matcher.value().as_string()));
      }
    }
  }
  return out;
}

namespace {

int precedence(TermKind kind) {
  switch (kind) {
    case TermKind::kUnion: return 1;
    case TermKind::kShuffle: return 2;
    case TermKind::kSeq: return 3;
    default: return 4;
  }
}

std::string print(const Term& term, int min_precedence) {
  std::string text;
  const int own = precedence(term.kind());
  switch (term.kind()) {
    case TermKind::kEmpty: text = "none"; break;
    case TermKind::kEpsilon: text = "empty"; break;
    case TermKind::kAtom: {
      const auto& a = term.annotation();
      text = a.name + "(";
      bool first = true;
      for (const auto& [key, matcher] : a.pattern) {
        if (key == "topic" || key == "name") continue;
        if (!matcher.is_bind() && !matcher.value().is_string()) continue;
        if (!first) text += ", ";
        first = false;
        text += matcher.is_bind() ? matcher.variable()
                                  : matcher.value().as_string();
      }
      text += ")";
      if (a.guard) text += "[" + to_string(*a.guard) + "]";
      break;
    }
    case TermKind::kCheck: text = "[" + to_string(term.guard()) + "]"; break;
    case TermKind::kSeq:
      text = print(term.left(), own) + " " + print(term.right(), own);
      break;
    case TermKind::kShuffle:
      text = print(term.left(), own) + " | " + print(term.right(), own);
      break;
    case TermKind::kUnion:
      text = print(term.left(), own) + " \\/ " + print(term.right(), own);
      break;
    case TermKind::kLet: {
      const auto& vars = term.let_variables();
      text = vars.empty() ? "{ " : "{ let ";
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) text += ", ";
        text += vars[i];
      }
      text += (vars.empty() ? "" : "; ") + print(term.body(), 1) + " }";
      break;
    }
  }
  return own < min_precedence ? "(" + text + ")" : text;
}

}  // namespace

std::string to_string(const Term& term) { return print(term, 1); }

}  // namespace rvaft::term
