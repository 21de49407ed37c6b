#include "format/json_value.hpp"

#include "rvaft/error.hpp"

namespace rvaft::format::detail {

term::Value value_from_json(const Json& json) {
  switch (json.type()) {
    case Json::value_t::null:
      return term::Value();
    case Json::value_t::boolean:
      return term::Value(json.get<bool>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::number_float:
      return term::Value(json.get<double>());
    case Json::value_t::string:
      return term::Value(json.get<std::string>());
    case Json::value_t::object: {
      term::Record record;
      for (const auto& [key, item] : json.items()) record[key] = value_from_json(item);
      return term::Value(std::move(record));
    }
    case Json::value_t::array: {
      term::List list;
      for (const auto& item : json) list.push_back(value_from_json(item));
      return term::Value(std::move(list));
    }
    default:
      throw Error(ErrorKind::kSchema, "unsupported JSON value");
  }
}

Json value_to_json(const term::Value& value) {
  using Type = term::Value::Type;
  switch (value.type()) {
    case Type::kNull: return nullptr;
    case Type::kNumber: return value.as_number();
    case Type::kString: return value.as_string();
    case Type::kBoolean: return value.as_boolean();
    case Type::kRecord: {
      Json out = Json::object();
      for (const auto& [key, item] : value.as_record()) out[key] = value_to_json(item);
      return out;
    }
    case Type::kList: {
      Json out = Json::array();
      for (const auto& item : value.as_list()) out.push_back(value_to_json(item));
      return out;
    }
  }
  return nullptr;
}

std::pair<int, int> position_of(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = position_of(text, offset);
    std::string message = e.what();
    auto cut = message.find("parse error");
    if (cut != std::string::npos) {
      auto colon = message.find(": ", cut);
      if (colon != std::string::npos) message = message.substr(colon + 2);
    }
    throw ParseError(message, line, column);
  }
}

}  // namespace rvaft::format::detail
