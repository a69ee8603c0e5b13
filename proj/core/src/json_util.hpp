#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "tetsym/errors.hpp"

namespace tetsym::detail {

using nlohmann::json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(e.what());
  }
}

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline const json& array_at(const json& v, std::size_t size, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path + ": expected an array");
  if (size != 0 && v.size() != size)
    throw SchemaError(path + ": expected " + std::to_string(size) + " elements, got " +
                      std::to_string(v.size()));
  return v;
}

inline long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return v.get<long long>();
}

inline double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected a number");
  return v.get<double>();
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path + ": expected a string");
  return v.get<std::string>();
}

}  // namespace tetsym::detail
