#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include "sadse/common.hpp"
#include "sadse/json.hpp"

namespace sadse::detail {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

inline void reject_unknown_keys(const Json& obj,
                                std::initializer_list<std::string_view> known,
                                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

inline std::int64_t require_int(const Json& obj, const char* key,
                                const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(where + ": missing field '" + key + "'");
  }
  if (!it->is_number_integer()) {
    throw ConfigError(where + ": field '" + key + "' must be an integer");
  }
  return it->get<std::int64_t>();
}

inline std::int64_t optional_int(const Json& obj, const char* key,
                                 std::int64_t fallback,
                                 const std::string& where) {
  return obj.contains(key) ? require_int(obj, key, where) : fallback;
}

}  // namespace sadse::detail
