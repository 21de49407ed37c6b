#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rvaft/model.hpp"
#include "rvaft/term.hpp"

namespace rvaft::compiler {

using term::Term;

// Gate translations. Each accepts one child (returned unchanged) so that
// gates collapsed by pruning need no special case.

/// Right-folded union, child order preserved.
Term translate_or(const std::vector<Term>& children);

/// Right-folded shuffle: every interleaving of the children.
Term translate_and(const std::vector<Term>& children);

enum class SandDirection { kLeftToRight, kRightToLeft };

/// Sequence in child order, or reversed for right-to-left.
Term translate_sand(const std::vector<Term>& children, SandDirection direction);

/// At least k of n, unrolled: for each child e, e followed by vot(k-1) of the
/// remaining children, all in union. vot(1, S) = or(S). Throws
/// Error(kInvalidK) unless 1 <= k <= n.
Term translate_vot(int k, const std::vector<Term>& children);

/// Folds guard checks into the atom immediately before them in a sequence
/// (the atom's guard becomes the conjunction). Checks elsewhere stay.
Term fold_guards(const Term& term);

/// Satisfaction of a property means the fault or attack was detected.
inline constexpr const char* kVerdictPolarity =
    "satisfied (top) = fault/attack detected; violated (bottom) = not detected";

struct BranchProperty {
  std::string id;                    // phi1, phi2, ...
  std::vector<model::NodeId> path;   // OR children chosen, outermost first
  model::NodeClass node_class = model::NodeClass::kFault;
  Term term = Term::empty();         // Let(let_vars, folded body)
  std::vector<std::string> let_vars;
  Term unfolded = Term::empty();     // body before guard folding
  std::vector<model::NodeId> nodes;  // every node expanded into this branch
};

struct MonitorSpec {
  std::string name;
  std::vector<BranchProperty> properties;
  std::optional<Term> merged;
  std::set<std::string> topics;
  std::vector<std::string> notices;

  const BranchProperty* find(const std::string& id) const;
  /// "merged" or a property id. Throws Error(kUnknownProperty).
  const Term& term_for(const std::string& which) const;
};

/// One property per combination of OR choices. Branches are ordered by
/// their OR choices, deepest OR gate most significant, so branches sharing
/// a cause stay adjacent. `notices` receives informational messages.
/// Throws Error(kUnclassifiedBranch) for a branch without fault/attack
/// nodes.
std::vector<BranchProperty> decompose(const model::RvaftTree& tree,
                                      std::vector<std::string>* notices = nullptr);

/// A single term accepting the union of the properties' languages, with
/// common sequence prefixes and suffixes factored out.
Term merge(const std::vector<BranchProperty>& properties);

/// Throws Error(kSchema) listing violations if the tree is not runtime
/// ready.
MonitorSpec compile(const model::RvaftTree& tree, bool do_merge);

}  // namespace rvaft::compiler
