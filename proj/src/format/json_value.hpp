#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rvaft/value.hpp"

namespace rvaft::format::detail {

using Json = nlohmann::ordered_json;

term::Value value_from_json(const Json& json);
Json value_to_json(const term::Value& value);

/// 1-based line and column of a byte offset.
std::pair<int, int> position_of(std::string_view text, std::size_t offset);

/// Re-throws nlohmann parse errors as ParseError with a position.
Json parse_json(std::string_view text);

}  // namespace rvaft::format::detail
