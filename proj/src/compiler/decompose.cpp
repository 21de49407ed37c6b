#include <algorithm>
#include <tuple>

#include "rvaft/compiler.hpp"
#include "rvaft/error.hpp"

namespace rvaft::compiler {

namespace {

using model::GateKind;
using model::NodeClass;
using model::NodeId;
using model::RvaftNode;
using model::RvaftTree;

// One choice at an OR gate; ordering key for the resulting branches.
struct Choice {
  int depth;
  NodeId gate;
  std::size_t child;
};

struct Option {
  Term term = Term::epsilon();
  std::vector<NodeId> path;
  std::vector<Choice> choices;
  std::vector<NodeId> nodes;
  bool has_fault = false;
  bool has_attack = false;
};

class Decomposer {
 public:
  Decomposer(const RvaftTree& tree, std::vector<std::string>* notices)
      : tree_(tree), notices_(notices) {}

  std::vector<Option> expand(const NodeId& id, int depth) {
    const RvaftNode& node = tree_.at(id);
    std::vector<Option> result;
    if (node.is_leaf()) {
      Option leaf;
      if (node.annotation) leaf.term = own_term(node);
      result.push_back(std::move(leaf));
    } else {
      const auto& gate = *node.gate;
      if (gate.kind == GateKind::kOr) {
        for (std::size_t i = 0; i < gate.children.size(); ++i) {
          for (auto& option : expand(gate.children[i], depth + 1)) {
            option.path.insert(option.path.begin(), gate.children[i]);
            option.choices.insert(option.choices.begin(), {depth, id, i});
            result.push_back(std::move(option));
          }
        }
      } else {
        result = product(gate, depth);
      }
      if (node.annotation) {
        // The intermediate's own event is observed once its causes are.
        for (auto& option : result) {
          option.term = Term::seq(option.term, own_term(node));
        }
      } else if (notices_ != nullptr && !noticed_.count(id)) {
        noticed_.insert(id);
        notices_->push_back("intermediate node '" + id +
                            "' has no runtime event; its children compose directly");
      }
    }
    for (auto& option : result) {
      option.nodes.insert(option.nodes.begin(), id);
      option.has_fault |= node.node_class == NodeClass::kFault;
      option.has_attack |= node.node_class == NodeClass::kAttack;
    }
    return result;
  }

 private:
  static Term own_term(const RvaftNode& node) {
    const auto& annotation = *node.annotation;
    if (annotation.guard_only()) return Term::check(*annotation.guard);
    return Term::atom(annotation);
  }

  std::vector<Option> product(const model::GateSpec& gate, int depth) {
    std::vector<std::vector<Option>> per_child;
    for (const auto& child : gate.children) {
      per_child.push_back(expand(child, depth + 1));
    }
    std::vector<std::vector<const Option*>> combos{{}};
    for (const auto& options : per_child) {
      std::vector<std::vector<const Option*>> next;
      for (const auto& prefix : combos) {
        for (const auto& option : options) {
          auto extended = prefix;
          extended.push_back(&option);
          next.push_back(std::move(extended));
        }
      }
      combos = std::move(next);
    }
    std::vector<Option> result;
    for (const auto& combo : combos) {
      Option merged;
      std::vector<Term> terms;
      for (const Option* part : combo) {
        terms.push_back(part->term);
        merged.path.insert(merged.path.end(), part->path.begin(), part->path.end());
        merged.choices.insert(merged.choices.end(), part->choices.begin(),
                              part->choices.end());
        merged.nodes.insert(merged.nodes.end(), part->nodes.begin(), part->nodes.end());
        merged.has_fault |= part->has_fault;
        merged.has_attack |= part->has_attack;
      }
      switch (gate.kind) {
        case GateKind::kAnd:
          merged.term = translate_and(terms);
          break;
        case GateKind::kSandLR:
          merged.term = translate_sand(terms, SandDirection::kLeftToRight);
          break;
        case GateKind::kSandRL:
          merged.term = translate_sand(terms, SandDirection::kRightToLeft);
          break;
        case GateKind::kVot:
          merged.term = translate_vot(gate.k.value_or(0), terms);
          break;
        case GateKind::kOr:
          break;
      }
      result.push_back(std::move(merged));
    }
    return result;
  }

  const RvaftTree& tree_;
  std::vector<std::string>* notices_;
  std::set<NodeId> noticed_;
};

// Deepest OR first, then gate id, so the comparison is stable across
// branches that visit the same gates.
std::vector<std::tuple<int, NodeId, std::size_t>> sort_key(const Option& option) {
  std::vector<std::tuple<int, NodeId, std::size_t>> key;
  for (const auto& choice : option.choices) {
    key.emplace_back(-choice.depth, choice.gate, choice.child);
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::vector<BranchProperty> decompose(const RvaftTree& tree,
                                      std::vector<std::string>* notices) {
  Decomposer decomposer(tree, notices);
  auto options = decomposer.expand(tree.root(), 0);
  std::stable_sort(options.begin(), options.end(),
                   [](const Option& a, const Option& b) {
                     return sort_key(a) < sort_key(b);
                   });

  std::vector<BranchProperty> properties;
  for (std::size_t i = 0; i < options.size(); ++i) {
    auto& option = options[i];
    BranchProperty property;
    property.id = "phi" + std::to_string(i + 1);
    if (option.has_attack) {
      property.node_class = NodeClass::kAttack;
    } else if (option.has_fault) {
      property.node_class = NodeClass::kFault;
    } else {
      std::string path;
      for (const auto& step : option.path) path += (path.empty() ? "" : " > ") + step;
      throw Error(ErrorKind::kUnclassifiedBranch,
                  "branch " + property.id + " (" + path +
                      ") contains no fault or attack node");
    }
    property.path = option.path;
    property.nodes = option.nodes;
    property.unfolded = option.term;
    property.let_vars = term::bound_variables(option.term);
    property.term = Term::let(property.let_vars, fold_guards(option.term));
    properties.push_back(std::move(property));
  }
  return properties;
}

const BranchProperty* MonitorSpec::find(const std::string& id) const {
  for (const auto& property : properties) {
    if (property.id == id) return &property;
  }
  return nullptr;
}

const Term& MonitorSpec::term_for(const std::string& which) const {
  if (which == "merged") {
    if (!merged) throw Error(ErrorKind::kUnknownProperty, "monitor has no merged property");
    return *merged;
  }
  if (const auto* property = find(which)) return property->term;
  throw Error(ErrorKind::kUnknownProperty, "unknown property '" + which + "'");
}

MonitorSpec compile(const RvaftTree& tree, bool do_merge) {
  auto violations = model::validate(tree, true);
  if (!violations.empty()) {
    std::string message = "tree is not runtime ready:";
    for (const auto& v : violations) message += "\n  " + v.node + ": " + v.message;
    throw Error(ErrorKind::kSchema, message);
  }
  MonitorSpec spec;
  spec.name = tree.name();
  spec.properties = decompose(tree, &spec.notices);
  for (const auto& property : spec.properties) {
    auto topics = term::topics(property.term);
    spec.topics.insert(topics.begin(), topics.end());
  }
  if (do_merge) spec.merged = merge(spec.properties);
  return spec;
}

}  // namespace rvaft::compiler
