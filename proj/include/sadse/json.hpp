#pragma once

#include <json.hpp>

namespace sadse {

// Insertion-ordered so serialized documents keep a stable, readable layout.
using Json = nlohmann::ordered_json;

}  // namespace sadse
