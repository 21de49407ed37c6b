#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rvaft/guard.hpp"
#include "rvaft/value.hpp"

namespace rvaft::term {

/// One side of a pattern pair: a literal the event must carry, or a variable
/// the event value is bound to.
class Matcher {
 public:
  static Matcher literal(Value value) { return Matcher(std::move(value), {}); }
  static Matcher bind(std::string variable) {
    return Matcher({}, std::move(variable));
  }

  bool is_bind() const noexcept { return !variable_.empty(); }
  const Value& value() const noexcept { return value_; }
  const std::string& variable() const noexcept { return variable_; }

  friend bool operator==(const Matcher& a, const Matcher& b) {
    return a.variable_ == b.variable_ && a.value_ == b.value_;
  }

 private:
  Matcher(Value value, std::string variable)
      : value_(std::move(value)), variable_(std::move(variable)) {}

  Value value_;
  std::string variable_;
};

/// What a monitor does with an event that fits an atom's pattern but fails
/// its guard: ignore the event, or drop the alternative.
enum class GuardPolicy { kSkip, kViolate };

const char* to_string(GuardPolicy policy);

/// A runtime event type: pattern pairs (kept in declaration order), an
/// optional guard and an optional explicit guard-failure policy.
struct EventAnnotation {
  std::string name;
  std::vector<std::pair<std::string, Matcher>> pattern;
  std::optional<Guard> guard;
  std::optional<GuardPolicy> on_guard_fail;

  /// Empty pattern with a guard: a constraint over earlier bindings only.
  bool guard_only() const { return pattern.empty() && guard.has_value(); }

  /// Variables bound by this pattern, in pattern order.
  std::vector<std::string> bound_variables() const;

  /// The explicit policy if set. Otherwise kSkip when the guard only reads
  /// variables this pattern binds (a filter on the event itself) and
  /// kViolate when it reads anything bound earlier (a correlation).
  GuardPolicy effective_policy() const;

  friend bool operator==(const EventAnnotation& a, const EventAnnotation& b);
};

bool is_valid_variable_name(const std::string& name);

enum class MatchOutcome { kProgress, kGuardFail, kNoMatch };

struct MatchResult {
  MatchOutcome outcome = MatchOutcome::kNoMatch;
  Env env;  // extended bindings; meaningful for kProgress only
  std::optional<std::string> diagnostic;
};

/// Superset matching with bind-once variables. A guard that reads a
/// variable nobody has bound yet yields kNoMatch plus a diagnostic. A type
/// error inside the guard propagates as `Error(kTypeMismatch)`.
MatchResult match_event(const EventAnnotation& atom, const Event& event,
                        const Env& env);

enum class TermKind { kEmpty, kEpsilon, kAtom, kCheck, kSeq, kUnion, kShuffle, kLet };

/// Immutable monitor term. Structural equality; copying shares structure.
class Term {
 public:
  static Term empty();
  static Term epsilon();
  static Term atom(EventAnnotation annotation);
  static Term check(Guard guard);
  static Term seq(Term first, Term second);
  static Term either(Term left, Term right);  // union
  static Term shuffle(Term left, Term right);
  static Term let(std::vector<std::string> variables, Term body);

  TermKind kind() const noexcept;
  bool is(TermKind kind) const noexcept { return this->kind() == kind; }

  const Term& left() const;   // seq/union/shuffle
  const Term& right() const;  // seq/union/shuffle
  const Term& body() const;   // let
  const EventAnnotation& annotation() const;  // atom
  const Guard& guard() const;                 // check
  const std::vector<std::string>& let_variables() const;

  std::size_t hash() const noexcept;
  /// Identity of the shared node; stable while any copy is alive.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Folds of a child list. A single child is returned unchanged; an empty
/// list gives Empty for unions and Epsilon for sequences/shuffles.
Term fold_union(const std::vector<Term>& terms);
Term fold_seq(const std::vector<Term>& terms);
Term fold_shuffle(const std::vector<Term>& terms);

/// Removes unit/absorbing elements: Empty propagates through seq and
/// shuffle, vanishes from unions; Epsilon is dropped from seq and shuffle.
/// The result is Empty exactly when no completion exists structurally.
Term normalize(const Term& term);

/// Accepts the empty trace under `env`. A check whose guard cannot be
/// evaluated (unbound variable, type error) is not nullable.
bool nullable(const Term& term, const Env& env);

/// Atoms in left-to-right order (duplicates included).
std::vector<EventAnnotation> atoms(const Term& term);

/// Variables bound by any atom, first-occurrence order.
std::vector<std::string> bound_variables(const Term& term);

/// Literal "topic" values of the atoms.
std::set<std::string> topics(const Term& term);

/// Readable rendering: `name(args)` atoms, `[guard]` checks, juxtaposition
/// for sequence, `|` shuffle, `\/` union, `empty`/`none` for Epsilon/Empty.
std::string to_string(const Term& term);

/// Brute-force acceptance oracle. Every ordering of every subset of
/// `events` of length <= max_len accepted by `term` (as index sequences).
/// No derivatives are involved; intended for tests on small inputs.
std::set<std::vector<std::size_t>> language(const Term& term, const Env& env,
                                            const std::vector<Event>& events,
                                            std::size_t max_len);

/// True iff `term` accepts exactly `word` (all events consumed in order).
bool accepts(const Term& term, const Env& env, const std::vector<Event>& word);

}  // namespace rvaft::term
