#include <algorithm>
#include <functional>
#include <regex>

#include "rvaft/error.hpp"
#include "rvaft/model.hpp"

namespace rvaft::model {

bool is_valid_node_id(const std::string& id) {
  static const std::regex kPattern("[A-Za-z_][A-Za-z0-9_-]*");
  return std::regex_match(id, kPattern);
}

const char* to_string(NodeClass value) {
  switch (value) {
    case NodeClass::kFault: return "fault";
    case NodeClass::kAttack: return "attack";
    case NodeClass::kNeutral: return "neutral";
  }
  return "?";
}

const char* to_string(GateKind value) {
  switch (value) {
    case GateKind::kAnd: return "AND";
    case GateKind::kOr: return "OR";
    case GateKind::kSandLR: return "SAND_LR";
    case GateKind::kSandRL: return "SAND_RL";
    case GateKind::kVot: return "VOT";
  }
  return "?";
}

std::optional<NodeClass> parse_node_class(const std::string& text) {
  for (auto c : {NodeClass::kFault, NodeClass::kAttack, NodeClass::kNeutral}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<GateKind> parse_gate_kind(const std::string& text) {
  for (auto g : {GateKind::kAnd, GateKind::kOr, GateKind::kSandLR,
                 GateKind::kSandRL, GateKind::kVot}) {
    if (text == to_string(g)) return g;
  }
  return std::nullopt;
}

RvaftTree::RvaftTree(std::string name, NodeId root,
                     std::vector<RvaftNode> nodes)
    : name_(std::move(name)), root_(std::move(root)) {
  for (auto& node : nodes) {
    NodeId id = node.id;
    if (!nodes_.emplace(id, std::move(node)).second) {
      throw Error(ErrorKind::kSchema, "duplicate node id '" + id + "'");
    }
  }
}

const RvaftNode* RvaftTree::find(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const RvaftNode& RvaftTree::at(const NodeId& id) const {
  if (const RvaftNode* node = find(id)) return *node;
  throw Error(ErrorKind::kUnknownNode, "unknown node '" + id + "'");
}

std::vector<NodeId> RvaftTree::parents(const NodeId& id) const {
  std::vector<NodeId> out;
  for (const auto& [parent_id, node] : nodes_) {
    if (node.gate && std::find(node.gate->children.begin(),
                               node.gate->children.end(),
                               id) != node.gate->children.end()) {
      out.push_back(parent_id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_annotation(const RvaftNode& node, std::vector<Violation>& out) {
  const auto& ann = *node.annotation;
  if (ann.name.empty()) out.push_back({node.id, "event has an empty name"});
  if (ann.pattern.empty() && !ann.guard) {
    out.push_back({node.id, "event with empty pattern requires a guard"});
  }
  if (ann.guard_only() && !node.is_leaf()) {
    out.push_back({node.id, "guard-only event is only allowed on leaves"});
  }
  std::set<std::string> keys;
  for (const auto& [key, matcher] : ann.pattern) {
    if (!keys.insert(key).second) {
      out.push_back({node.id, "duplicate pattern key '" + key + "'"});
    }
    if (matcher.is_bind() && !term::is_valid_variable_name(matcher.variable())) {
      out.push_back({node.id, "invalid variable name '" +
                                  matcher.variable() + "'"});
    }
  }
}

void check_gate(const RvaftTree& tree, const RvaftNode& node,
                std::vector<Violation>& out) {
  const auto& gate = *node.gate;
  const int n = static_cast<int>(gate.children.size());
  if (n < 2) {
    out.push_back({node.id, std::string(to_string(gate.kind)) +
                                " gate needs at least 2 children, has " +
                                std::to_string(n)});
  }
  if (gate.kind == GateKind::kVot) {
    if (!gate.k) {
      out.push_back({node.id, "VOT gate requires k"});
    } else if (*gate.k < 1) {
      out.push_back({node.id, "VOT k must be at least 1"});
    } else if (*gate.k > n) {
      out.push_back({node.id, "VOT k exceeds child count (k=" +
                                  std::to_string(*gate.k) + ", n=" +
                                  std::to_string(n) + ")"});
    }
  } else if (gate.k) {
    out.push_back({node.id, "k is only allowed on VOT gates"});
  }
  std::set<NodeId> seen;
  for (const auto& child : gate.children) {
    if (!tree.find(child)) {
      out.push_back({node.id, "unknown child '" + child + "'"});
    }
    if (!seen.insert(child).second) {
      out.push_back({node.id, "duplicate child '" + child + "'"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const RvaftTree& tree, bool runtime_ready) {
  std::vector<Violation> out;
  const RvaftNode* root = tree.find(tree.root());
  if (root == nullptr) {
    out.push_back({tree.root(), "root node does not exist"});
  } else {
    if (!root->gate) out.push_back({root->id, "root must have a connector"});
    if (root->annotation) {
      out.push_back({root->id, "root must not carry a runtime event"});
    }
  }

  for (const auto& [id, node] : tree.nodes()) {
    if (!is_valid_node_id(id)) {
      out.push_back({id, "invalid node id"});
    }
    if (node.gate) check_gate(tree, node, out);
    if (node.annotation) check_annotation(node, out);
    if (runtime_ready && node.is_leaf() && !node.annotation &&
        id != tree.root()) {
      out.push_back({id, "leaf has no runtime event"});
    }
  }

  // Cycles (three-colour DFS over all nodes) and reachability from root.
  enum class Mark { kWhite, kGrey, kBlack };
  std::map<NodeId, Mark> marks;
  std::set<NodeId> reported;
  std::function<void(const NodeId&)> visit = [&](const NodeId& id) {
    const RvaftNode* node = tree.find(id);
    if (node == nullptr) return;
    marks[id] = Mark::kGrey;
    if (node->gate) {
      for (const auto& child : node->gate->children) {
        auto mark = marks.count(child) ? marks[child] : Mark::kWhite;
        if (mark == Mark::kGrey) {
          if (reported.insert(child).second) {
            out.push_back({child, "node is its own ancestor (cycle via '" +
                                      id + "')"});
          }
        } else if (mark == Mark::kWhite) {
          visit(child);
        }
      }
    }
    marks[id] = Mark::kBlack;
  };
  if (root != nullptr) visit(tree.root());
  std::set<NodeId> reachable;
  for (const auto& [id, mark] : marks) reachable.insert(id);
  for (const auto& [id, node] : tree.nodes()) {
    if (!reachable.count(id)) {
      out.push_back({id, "node is not reachable from the root"});
      if (!marks.count(id)) visit(id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::set<NodeId> reachable_from(const std::map<NodeId, RvaftNode>& nodes,
                                const NodeId& root) {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    auto it = nodes.find(id);
    if (it == nodes.end() || !seen.insert(id).second) continue;
    if (it->second.gate) {
      for (const auto& child : it->second.gate->children) stack.push_back(child);
    }
  }
  return seen;
}

}  // namespace

PruneResult prune(const RvaftTree& tree, const std::set<NodeId>& remove) {
  if (remove.count(tree.root())) {
    throw Error(ErrorKind::kRootRemoval,
                "cannot prune the root '" + tree.root() + "'");
  }
  for (const auto& id : remove) tree.at(id);

  std::vector<std::string> warnings;
  std::map<NodeId, RvaftNode> nodes = tree.nodes();
  for (const auto& id : remove) nodes.erase(id);
  for (auto& [id, node] : nodes) {
    if (!node.gate) continue;
    auto& children = node.gate->children;
    children.erase(std::remove_if(children.begin(), children.end(),
                                  [&](const NodeId& c) {
                                    return remove.count(c) > 0;
                                  }),
                   children.end());
  }

  bool changed = true;
  while (changed) {
    changed = false;
    auto live = reachable_from(nodes, tree.root());
    for (auto it = nodes.begin(); it != nodes.end();) {
      it = live.count(it->first) ? std::next(it) : nodes.erase(it);
    }

    for (auto& [id, node] : nodes) {
      if (!node.gate) continue;
      auto& gate = *node.gate;
      const int n = static_cast<int>(gate.children.size());
      if (n == 0) {
        warnings.push_back("gate '" + id + "' lost all children; now a leaf");
        node.gate.reset();
        changed = true;
      } else if (n == 1 && id == tree.root()) {
        const NodeId only = gate.children.front();
        const RvaftNode& child = nodes.at(only);
        if (child.gate) {
          warnings.push_back("root gate had a single child '" + only +
                             "'; adopted its connector");
          node.gate = child.gate;
          changed = true;
        } else {
          warnings.push_back("root gate has a single leaf child '" + only +
                             "'");
        }
      } else if (n == 1) {
        const NodeId only = gate.children.front();
        warnings.push_back("gate '" + id + "' collapsed onto its only child '" +
                           only + "'");
        for (auto& [pid, parent] : nodes) {
          if (!parent.gate) continue;
          std::replace(parent.gate->children.begin(),
                       parent.gate->children.end(), id, only);
        }
        changed = true;
        break;  // parent lists changed; restart from a fresh reachability pass
      } else if (gate.kind == GateKind::kVot && gate.k && *gate.k > n) {
        warnings.push_back("VOT '" + id + "' k clamped from " +
                           std::to_string(*gate.k) + " to " +
                           std::to_string(n));
        gate.k = n;
        changed = true;
      }
    }
  }

  std::vector<RvaftNode> out;
  out.reserve(nodes.size());
  for (auto& [id, node] : nodes) out.push_back(std::move(node));
  return PruneResult{RvaftTree(tree.name(), tree.root(), std::move(out)),
                     std::move(warnings)};
}

RvaftTree annotate(const RvaftTree& tree, const NodeId& node,
                   term::EventAnnotation annotation) {
  tree.at(node);
  if (node == tree.root()) {
    throw Error(ErrorKind::kRootAnnotation,
                "the root '" + node + "' cannot carry a runtime event");
  }
  std::vector<RvaftNode> nodes;
  for (const auto& [id, n] : tree.nodes()) {
    nodes.push_back(n);
    if (id == node) nodes.back().annotation = annotation;
  }
  return RvaftTree(tree.name(), tree.root(), std::move(nodes));
}

}  // namespace rvaft::model
