#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvaft/error.hpp"
#include "support.hpp"

using namespace testing;
namespace model = rvaft::model;
using model::GateKind;
using model::NodeClass;
using model::RvaftNode;
using model::RvaftTree;

namespace {

RvaftNode gate(const std::string& id, GateKind kind, std::vector<std::string> children,
               std::optional<int> k = std::nullopt) {
  RvaftNode node;
  node.id = id;
  node.label = id;
  node.gate = model::GateSpec{kind, k, std::move(children)};
  return node;
}

RvaftNode leaf(const std::string& id, NodeClass cls = NodeClass::kFault, bool annotated = true) {
  RvaftNode node;
  node.id = id;
  node.label = id;
  node.node_class = cls;
  if (annotated) node.annotation = atom(id, "topic_" + id).annotation();
  return node;
}

// Independent path walk: OR sums, every other gate multiplies.
std::size_t branch_count(const RvaftTree& tree, const std::string& id) {
  const auto& node = tree.at(id);
  if (node.is_leaf()) return 1;
  std::size_t sum = 0, product = 1;
  for (const auto& child : node.gate->children) {
    auto n = branch_count(tree, child);
    sum += n;
    product *= n;
  }
  return node.gate->kind == GateKind::kOr ? sum : product;
}

bool has_message(const std::vector<model::Violation>& violations, const std::string& node,
                 const std::string& fragment) {
  for (const auto& v : violations) {
    if (v.node == node && v.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

rvaft::ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const rvaft::Error& e) {
    return e.kind();
  }
  return rvaft::ErrorKind::kIo;
}

}  // namespace

TEST_CASE("validate the shipped trees") {
  auto tree = case_study_tree();
  CHECK(model::validate(tree, false).empty());
  CHECK(model::validate(tree, true).empty());

  auto full = rvaft::format::load_tree(data_path("trees/remote_inspection_full.rvaft.json"));
  CHECK(model::validate(full, false).empty());
  auto runtime = model::validate(full, true);
  CHECK(runtime.size() == 4);
  CHECK(has_message(runtime, "battery_depleted", "no runtime event"));
}

TEST_CASE("validate reports structural problems") {
  RvaftTree vot("t", "top", {gate("top", GateKind::kVot, {"a", "b", "c"}, 4), leaf("a"), leaf("b"), leaf("c")});
  CHECK(has_message(model::validate(vot, false), "top", "k=4, n=3"));

  RvaftTree no_k("t", "top", {gate("top", GateKind::kVot, {"a", "b"}), leaf("a"), leaf("b")});
  CHECK_FALSE(model::validate(no_k, false).empty());

  RvaftTree stray_k("t", "top", {gate("top", GateKind::kOr, {"a", "b"}, 1), leaf("a"), leaf("b")});
  CHECK_FALSE(model::validate(stray_k, false).empty());

  RvaftTree unary("t", "top", {gate("top", GateKind::kAnd, {"a"}), leaf("a")});
  CHECK_FALSE(model::validate(unary, false).empty());

  RvaftTree missing("t", "top", {gate("top", GateKind::kOr, {"a", "ghost"}), leaf("a")});
  CHECK(has_message(model::validate(missing, false), "top", "ghost"));

  RvaftTree cycle("t", "top", {gate("top", GateKind::kOr, {"x", "a"}), gate("x", GateKind::kAnd, {"a", "top"}), leaf("a")});
  CHECK_FALSE(model::validate(cycle, false).empty());

  auto root = gate("top", GateKind::kOr, {"a", "b"});
  root.annotation = atom("r", "r").annotation();
  RvaftTree annotated_root("t", "top", {root, leaf("a"), leaf("b")});
  CHECK(has_message(model::validate(annotated_root, false), "top", "runtime event"));

  RvaftTree orphan("t", "top", {gate("top", GateKind::kOr, {"a", "b"}), leaf("a"), leaf("b"), leaf("c")});
  CHECK(has_message(model::validate(orphan, false), "c", "reach"));

  RvaftTree no_root("t", "nope", {leaf("a")});
  CHECK_FALSE(model::validate(no_root, false).empty());

  CHECK_THROWS_AS(RvaftTree("t", "a", {leaf("a"), leaf("a")}), rvaft::Error);
  CHECK_FALSE(model::is_valid_node_id("9lives"));
  CHECK(model::is_valid_node_id("ev_10"));
}

TEST_CASE("prune: identity") {
  auto tree = case_study_tree();
  auto result = model::prune(tree, {});
  CHECK(result.tree == tree);
  CHECK(result.warnings.empty());
}

TEST_CASE("prune: full case-study tree reduces to the shipped tree") {
  auto full = rvaft::format::load_tree(data_path("trees/remote_inspection_full.rvaft.json"));
  CHECK(branch_count(full, full.root()) == 2 * 3);
  auto result = model::prune(full, {"take_imagery", "battery_depleted"});
  CHECK(result.tree == case_study_tree());
  CHECK(branch_count(result.tree, result.tree.root()) == 4);
  CHECK_FALSE(result.warnings.empty());
  CHECK(model::validate(result.tree, true).empty());
}

TEST_CASE("prune: third child of a three-way OR") {
  RvaftTree tree("t", "top",
                 {gate("top", GateKind::kAnd, {"or1", "or2"}), gate("or1", GateKind::kOr, {"a", "b", "c"}),
                  gate("or2", GateKind::kOr, {"d", "e"}), leaf("a"), leaf("b"), leaf("c"), leaf("d"), leaf("e")});
  CHECK(branch_count(tree, "top") == 6);
  auto pruned = model::prune(tree, {"c"}).tree;
  CHECK(pruned.at("or1").gate->children == std::vector<std::string>{"a", "b"});
  CHECK(branch_count(pruned, "top") == 4);
  CHECK(pruned.find("c") == nullptr);
  CHECK(model::validate(pruned, false).empty());
}

TEST_CASE("prune: collapse, clamp and leaf conversion") {
  RvaftTree tree("t", "top",
                 {gate("top", GateKind::kOr, {"v", "s"}), gate("v", GateKind::kVot, {"a", "b", "c"}, 3),
                  gate("s", GateKind::kSandLR, {"d", "e"}), leaf("a"), leaf("b"), leaf("c"), leaf("d"), leaf("e")});
  auto result = model::prune(tree, {"c", "e"});
  CHECK(result.tree.at("v").gate->k == 2);
  CHECK(result.tree.find("s") == nullptr);  // collapsed onto d
  CHECK(result.tree.at("top").gate->children == std::vector<std::string>{"v", "d"});
  CHECK(result.warnings.size() >= 2);
  CHECK(model::validate(result.tree, false).empty());

  // Removing every child turns a gate into a leaf, which then lacks an event.
  RvaftTree nested("t", "top", {gate("top", GateKind::kOr, {"g", "x"}), gate("g", GateKind::kAnd, {"a", "b"}), leaf("a"), leaf("b"), leaf("x")});
  auto emptied = model::prune(nested, {"a", "b"}).tree;
  CHECK(emptied.at("g").is_leaf());
  CHECK(model::validate(emptied, false).empty());
  CHECK(has_message(model::validate(emptied, true), "g", "no runtime event"));
}

TEST_CASE("prune: shared nodes survive while any parent remains") {
  auto tree = case_study_tree();
  auto result = model::prune(tree, {"moving_to_waypoint"});
  CHECK(result.tree.find("radiation_reading") != nullptr);
  CHECK(result.tree.find("ev1") == nullptr);
  CHECK(branch_count(result.tree, result.tree.root()) == 2);
  CHECK(model::validate(result.tree, false).empty());
}

TEST_CASE("prune errors") {
  auto tree = case_study_tree();
  CHECK(kind_of([&] { model::prune(tree, {"damaged_by_radiation"}); }) == rvaft::ErrorKind::kRootRemoval);
  CHECK(kind_of([&] { model::prune(tree, {"nope"}); }) == rvaft::ErrorKind::kUnknownNode);
}

TEST_CASE("prune keeps branch sets monotone") {
  auto full = rvaft::format::load_tree(data_path("trees/remote_inspection_full.rvaft.json"));
  std::vector<std::string> ids;
  for (const auto& [id, node] : full.nodes()) {
    if (id != full.root()) ids.push_back(id);
  }
  for (const auto& id : ids) {
    auto result = model::prune(full, {id});
    CHECK(model::validate(result.tree, false).empty());
    CHECK(branch_count(result.tree, result.tree.root()) <= branch_count(full, full.root()));
  }
}

TEST_CASE("annotate") {
  auto full = rvaft::format::load_tree(data_path("trees/remote_inspection_full.rvaft.json"));
  auto ann = atom("radiation", "radiation_sensor_plugin/sensor_0", {{"value", "Value"}, {"time", "T1"}}).annotation();
  auto once = model::annotate(full, "ev4", ann);
  CHECK(once.at("ev4").annotation == ann);
  CHECK(model::annotate(once, "ev4", ann) == once);

  EventAnnotation guard_only;
  guard_only.name = "high_value";
  guard_only.guard = guard("Value >= 250");
  auto with_guard = model::annotate(full, "ev5", guard_only);
  CHECK(with_guard.at("ev5").annotation->guard_only());
  CHECK(model::validate(with_guard, false).empty());

  CHECK(kind_of([&] { model::annotate(full, "damaged_by_radiation", ann); }) ==
        rvaft::ErrorKind::kRootAnnotation);
  CHECK(kind_of([&] { model::annotate(full, "ghost", ann); }) == rvaft::ErrorKind::kUnknownNode);

  // Annotating the remaining leaves makes the full tree runtime ready.
  auto ready = full;
  for (const auto* id : {"images_blurred", "camera_occluded", "poor_lighting", "battery_depleted"}) {
    ready = model::annotate(ready, id, atom(id, std::string("topic_") + id).annotation());
  }
  CHECK(model::validate(ready, true).empty());
}
