#include <fstream>
#include <set>
#include <sstream>

#include "format/json_value.hpp"
#include "rvaft/error.hpp"
#include "rvaft/format.hpp"

namespace rvaft::format {

using detail::Json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& message) {
  throw Error(ErrorKind::kSchema, where.empty() ? message : where + ": " + message);
}

void reject_unknown(const Json& object, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, unused] : object.items()) {
    bool known = false;
    for (const char* name : allowed) known |= key == name;
    if (!known) schema_error(where, "unknown key '" + key + "'");
  }
}

std::string require_string(const Json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(where, std::string("missing ") + key);
  if (!it->is_string()) schema_error(where, std::string(key) + " must be a string");
  return it->get<std::string>();
}

term::EventAnnotation parse_event_annotation(const Json& json, const std::string& where) {
  if (!json.is_object()) schema_error(where, "event must be an object");
  reject_unknown(json, {"name", "pattern", "guard", "on_guard_fail"}, where + " event");
  term::EventAnnotation annotation;
  annotation.name = require_string(json, "name", where + " event");
  if (auto it = json.find("pattern"); it != json.end()) {
    if (!it->is_object()) schema_error(where, "pattern must be an object");
    for (const auto& [key, item] : it->items()) {
      if (item.is_object() && item.contains("bind")) {
        if (item.size() != 1 || !item["bind"].is_string()) {
          schema_error(where, "pattern key '" + key + "': bind must be {\"bind\": name}");
        }
        annotation.pattern.emplace_back(key, term::Matcher::bind(item["bind"].get<std::string>()));
        continue;
      }
      term::Value literal = detail::value_from_json(item);
      if (key == "topic" && literal.is_string()) {
        literal = term::Value(term::canonical_topic(literal.as_string()));
      }
      annotation.pattern.emplace_back(key, term::Matcher::literal(std::move(literal)));
    }
  }
  if (auto it = json.find("guard"); it != json.end()) {
    if (!it->is_string()) schema_error(where, "guard must be a string");
    try {
      annotation.guard = parse_guard(it->get<std::string>());
    } catch (const ParseError& e) {
      schema_error(where, std::string("guard: ") + e.what());
    }
  }
  if (auto it = json.find("on_guard_fail"); it != json.end()) {
    std::string policy = it->is_string() ? it->get<std::string>() : "";
    if (policy == "skip") {
      annotation.on_guard_fail = term::GuardPolicy::kSkip;
    } else if (policy == "violate") {
      annotation.on_guard_fail = term::GuardPolicy::kViolate;
    } else {
      schema_error(where, "on_guard_fail must be \"skip\" or \"violate\"");
    }
  }
  return annotation;
}

model::GateSpec parse_gate(const Json& json, const std::string& where) {
  if (!json.is_object()) schema_error(where, "gate must be an object");
  reject_unknown(json, {"kind", "k", "children"}, where + " gate");
  model::GateSpec gate;
  auto kind = model::parse_gate_kind(require_string(json, "kind", where + " gate"));
  if (!kind) schema_error(where, "unknown gate kind '" + json["kind"].get<std::string>() + "'");
  gate.kind = *kind;
  if (auto it = json.find("k"); it != json.end()) {
    if (!it->is_number_integer()) schema_error(where, "k must be integer");
    gate.k = it->get<int>();
  }
  auto children = json.find("children");
  if (children == json.end() || !children->is_array()) {
    schema_error(where, "gate children must be an array");
  }
  for (const auto& child : *children) {
    if (!child.is_string()) schema_error(where, "child ids must be strings");
    gate.children.push_back(child.get<std::string>());
  }
  return gate;
}

}  // namespace

model::RvaftTree parse_tree(std::string_view text, bool check) {
  Json document = detail::parse_json(text);
  if (!document.is_object()) schema_error("", "document must be a JSON object");
  reject_unknown(document, {"name", "root", "nodes"}, "document");
  if (!document.contains("root")) schema_error("", "missing root");
  std::string root = require_string(document, "root", "document");
  std::string name = document.contains("name") ? require_string(document, "name", "document")
                                               : std::string();
  auto nodes_json = document.find("nodes");
  if (nodes_json == document.end() || !nodes_json->is_object()) {
    schema_error("", "missing nodes object");
  }

  std::vector<model::RvaftNode> nodes;
  for (const auto& [id, json] : nodes_json->items()) {
    const std::string where = "node '" + id + "'";
    if (!json.is_object()) schema_error(where, "must be an object");
    reject_unknown(json, {"label", "class", "gate", "event"}, where);
    model::RvaftNode node;
    node.id = id;
    node.label = json.contains("label") ? require_string(json, "label", where) : id;
    if (json.contains("class")) {
      auto cls = model::parse_node_class(require_string(json, "class", where));
      if (!cls) schema_error(where, "class must be fault, attack or neutral");
      node.node_class = *cls;
    }
    if (auto it = json.find("gate"); it != json.end()) node.gate = parse_gate(*it, where);
    if (auto it = json.find("event"); it != json.end()) {
      node.annotation = parse_event_annotation(*it, where);
    }
    nodes.push_back(std::move(node));
  }

  model::RvaftTree tree(std::move(name), std::move(root), std::move(nodes));
  if (check) {
    auto violations = model::validate(tree, false);
    if (!violations.empty()) {
      std::string message;
      for (const auto& v : violations) {
        if (!message.empty()) message += "; ";
        message += "node '" + v.node + "': " + v.message;
      }
      throw Error(ErrorKind::kSchema, message);
    }
  }
  return tree;
}

term::EventAnnotation parse_annotation(std::string_view json_text) {
  return parse_event_annotation(detail::parse_json(json_text), "annotation");
}

model::RvaftTree load_tree(const std::string& path, bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tree(buffer.str(), check);
}

std::string serialize_tree(const model::RvaftTree& tree) {
  Json document = Json::object();
  document["name"] = tree.name();
  document["root"] = tree.root();
  Json nodes = Json::object();
  for (const auto& [id, node] : tree.nodes()) {
    Json json = Json::object();
    json["label"] = node.label;
    json["class"] = model::to_string(node.node_class);
    if (node.gate) {
      Json gate = Json::object();
      gate["kind"] = model::to_string(node.gate->kind);
      if (node.gate->k) gate["k"] = *node.gate->k;
      gate["children"] = node.gate->children;
      json["gate"] = std::move(gate);
    }
    if (node.annotation) {
      const auto& a = *node.annotation;
      Json event = Json::object();
      event["name"] = a.name;
      Json pattern = Json::object();
      for (const auto& [key, matcher] : a.pattern) {
        if (matcher.is_bind()) {
          pattern[key] = Json{{"bind", matcher.variable()}};
        } else {
          pattern[key] = detail::value_to_json(matcher.value());
        }
      }
      if (!pattern.empty()) event["pattern"] = std::move(pattern);
      if (a.guard) event["guard"] = term::to_string(*a.guard);
      if (a.on_guard_fail) event["on_guard_fail"] = term::to_string(*a.on_guard_fail);
      json["event"] = std::move(event);
    }
    nodes[id] = std::move(json);
  }
  document["nodes"] = std::move(nodes);
  return document.dump(2) + "\n";
}

}  // namespace rvaft::format
