#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rvaft/term.hpp"

namespace rvaft::model {

using NodeId = std::string;

bool is_valid_node_id(const std::string& id);

enum class NodeClass { kFault, kAttack, kNeutral };
enum class GateKind { kAnd, kOr, kSandLR, kSandRL, kVot };

const char* to_string(NodeClass value);
const char* to_string(GateKind value);
std::optional<NodeClass> parse_node_class(const std::string& text);
std::optional<GateKind> parse_gate_kind(const std::string& text);

struct GateSpec {
  GateKind kind = GateKind::kOr;
  std::optional<int> k;  // VOT only
  std::vector<NodeId> children;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

struct RvaftNode {
  NodeId id;
  std::string label;
  NodeClass node_class = NodeClass::kNeutral;
  std::optional<term::EventAnnotation> annotation;
  std::optional<GateSpec> gate;

  bool is_leaf() const noexcept { return !gate.has_value(); }

  friend bool operator==(const RvaftNode&, const RvaftNode&) = default;
};

/// An attack-fault tree (a DAG rooted at the undesired event) whose nodes may
/// carry runtime event annotations. Immutable once built; the operations
/// below return new trees.
class RvaftTree {
 public:
  /// Throws Error(kSchema) on duplicate node ids.
  RvaftTree(std::string name, NodeId root, std::vector<RvaftNode> nodes);

  const std::string& name() const noexcept { return name_; }
  const NodeId& root() const noexcept { return root_; }
  const std::map<NodeId, RvaftNode>& nodes() const noexcept { return nodes_; }

  const RvaftNode* find(const NodeId& id) const;
  /// Throws Error(kUnknownNode).
  const RvaftNode& at(const NodeId& id) const;

  /// Nodes listing `id` among their gate children, in id order.
  std::vector<NodeId> parents(const NodeId& id) const;

  friend bool operator==(const RvaftTree&, const RvaftTree&) = default;

 private:
  std::string name_;
  NodeId root_;
  std::map<NodeId, RvaftNode> nodes_;
};

struct Violation {
  NodeId node;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every structural rule breach, in node-id order. With `runtime_ready` all
/// non-root leaves must also carry an annotation.
std::vector<Violation> validate(const RvaftTree& tree, bool runtime_ready);

struct PruneResult {
  RvaftTree tree;
  std::vector<std::string> warnings;
};

/// Removes the listed nodes and whatever becomes unreachable. Gates left
/// with one child are collapsed into their parent, gates left with none
/// become leaves, and VOT thresholds are clamped to the new arity (each with
/// a warning). Throws Error(kRootRemoval) or Error(kUnknownNode).
PruneResult prune(const RvaftTree& tree, const std::set<NodeId>& remove);

/// Installs (or replaces) the runtime event of a non-root node. Throws
/// Error(kUnknownNode) or Error(kRootAnnotation).
RvaftTree annotate(const RvaftTree& tree, const NodeId& node,
                   term::EventAnnotation annotation);

}  // namespace rvaft::model
