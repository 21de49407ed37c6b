#pragma once

// Declarative reference semantics over *runs*: an explicit record of which
// atom occurrence consumed which trace position. Validity is checked
// against the original term tree by ownership of occurrences, with guard
// checks evaluated at the moment their enclosing sequence is left. No
// derivatives are computed; the engine's oracle and `term::language` are
// built on this so they stay independent of the derivative stepper.

#include <cstddef>
#include <vector>

#include "rvaft/term.hpp"

namespace rvaft::term::detail {

class IndexedTerm {
 public:
  struct Node {
    TermKind kind;
    int lo = 0;  // owned atom occurrences [lo, hi)
    int hi = 0;
    int first = -1;
    int second = -1;
    int occurrence = -1;
    const EventAnnotation* atom = nullptr;
    const Guard* guard = nullptr;
  };

  explicit IndexedTerm(Term term);

  const Node& node(int index) const { return nodes_[index]; }
  int root() const { return 0; }
  int occurrence_count() const { return static_cast<int>(atom_nodes_.size()); }
  const EventAnnotation& atom(int occurrence) const {
    return *nodes_[atom_nodes_[occurrence]].atom;
  }

 private:
  int build(const Term& term);

  Term term_;  // keeps annotation/guard storage alive
  std::vector<Node> nodes_;
  std::vector<int> atom_nodes_;
};

struct Consumption {
  std::size_t time;  // trace position
  int occurrence;
  Env env_after;
  friend bool operator==(const Consumption&, const Consumption&) = default;
};

using Run = std::vector<Consumption>;

class RunChecker {
 public:
  RunChecker(const IndexedTerm& term, Env initial)
      : term_(term), initial_(std::move(initial)) {}

  /// The run is a viable prefix: every consumption sits at a reachable
  /// position and the term can still be completed structurally.
  bool prefix_ok(const Run& run) const;

  /// The run is a complete match with checks at the end evaluated under
  /// the run's final environment.
  bool complete_ok(const Run& run) const;

  /// Occurrences that may consume the next event (at trace position `now`).
  std::vector<int> frontier(const Run& run, std::size_t now) const;

  const Env& env_of(const Run& run) const {
    return run.empty() ? initial_ : run.back().env_after;
  }

 private:
  using Items = std::vector<int>;  // indices into the run

  bool prefix(int node, const Items& items, const Run& run) const;
  bool complete(int node, const Items& items, const Run& run,
                const Env& pass_env) const;
  bool split(int node, const Items& items, const Run& run, Items& left,
             Items& right) const;
  bool owns(int node, const Run& run, int item) const;
  const Env& env_before(const Run& run, int item) const {
    return item == 0 ? initial_ : run[item - 1].env_after;
  }

  const IndexedTerm& term_;
  Env initial_;
};

}  // namespace rvaft::term::detail
