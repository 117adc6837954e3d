#include "sadse/netmodel.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace sadse {

namespace {

std::string layer_where(int index) { return "layer " + std::to_string(index); }

void require(bool ok, int index, const char* field, const std::string& what) {
  if (!ok) {
    throw ConfigError(layer_where(index) + ": field '" + field + "' " + what);
  }
}

Activation activation_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "none") return Activation::none();
    if (name == "relu") return Activation::relu();
    throw ConfigError(where + ": unknown activation '" + name +
                      "' (parameterised activations need an object)");
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ConfigError(where + ": activation must be a string or {\"type\": ...}");
  }
  const auto type = j["type"].get<std::string>();
  auto number = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw ConfigError(where + ": activation '" + type + "' needs numeric '" +
                        key + "'");
    }
    return it->get<double>();
  };
  if (type == "leaky-relu") {
    detail::reject_unknown_keys(j, {"type", "slope"}, where + " activation");
    return Activation::leaky_relu(number("slope"));
  }
  if (type == "elu") {
    detail::reject_unknown_keys(j, {"type", "alpha"}, where + " activation");
    return Activation::elu(number("alpha"));
  }
  if (type == "relu" || type == "none") {
    detail::reject_unknown_keys(j, {"type"}, where + " activation");
    return type == "relu" ? Activation::relu() : Activation::none();
  }
  throw ConfigError(where + ": unknown activation '" + type + "'");
}

Json activation_to_json(const Activation& act) {
  switch (act.kind) {
    case Activation::Kind::None: return "none";
    case Activation::Kind::Relu: return "relu";
    case Activation::Kind::LeakyRelu:
      return Json{{"type", "leaky-relu"}, {"slope", act.param}};
    case Activation::Kind::Elu:
      return Json{{"type", "elu"}, {"alpha", act.param}};
  }
  return "none";
}

LayerKind kind_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "convolutional") return LayerKind::Convolutional;
    if (name == "fully-connected") return LayerKind::FullyConnected;
  }
  throw ConfigError(where + ": field 'kind' must be \"convolutional\" or "
                            "\"fully-connected\"");
}

}  // namespace

Count NetworkModel::max_filter_rows() const {
  Count best = 0;
  for (const auto& l : layers) best = std::max(best, l.r_f);
  return best;
}

SlideCounts slide_counts(const LayerSpec& layer) {
  return {layer.r + 2 * layer.pad - layer.r_f + 1,
          layer.c + 2 * layer.pad - layer.c_f + 1};
}

void validate_layer(const LayerSpec& l) {
  const int i = l.index;
  require(l.index >= 1, i, "index", "must be >= 1");
  require(l.n_f >= 1, i, "n_f", "must be >= 1");
  require(l.r_f >= 1, i, "r_f", "must be >= 1");
  require(l.c_f >= 1, i, "c_f", "must be >= 1");
  require(l.r >= 1, i, "r", "must be >= 1");
  require(l.c >= 1, i, "c", "must be >= 1");
  require(l.ch >= 1, i, "ch", "must be >= 1");
  require(l.s >= 1, i, "s", "must be >= 1");
  require(l.pad >= 0, i, "pad", "must be >= 0");
  require(l.r + 2 * l.pad >= l.r_f, i, "r_f",
          "exceeds padded IFM rows (no slide position)");
  require(l.c + 2 * l.pad >= l.c_f, i, "c_f",
          "exceeds padded IFM cols (no slide position)");
}

void validate_network(const NetworkModel& net) {
  if (net.layers.empty()) throw ConfigError("network has no layers");
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const auto& l = net.layers[k];
    if (l.index != static_cast<int>(k) + 1) {
      throw ConfigError("layer indices must be contiguous from 1 (position " +
                        std::to_string(k + 1) + " has index " +
                        std::to_string(l.index) + ")");
    }
    validate_layer(l);
  }
}

std::vector<std::string> consistency_warnings(const NetworkModel& net) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k < net.layers.size(); ++k) {
    const auto& prev = net.layers[k - 1];
    const auto& cur = net.layers[k];
    if (cur.ch != prev.n_f) {
      out.push_back(layer_where(cur.index) + ": ch=" + std::to_string(cur.ch) +
                    " but layer " + std::to_string(prev.index) + " has n_f=" +
                    std::to_string(prev.n_f));
    }
  }
  return out;
}

Json network_to_json(const NetworkModel& net) {
  Json layers = Json::array();
  for (const auto& l : net.layers) {
    layers.push_back({{"n_f", l.n_f},
                      {"r_f", l.r_f},
                      {"c_f", l.c_f},
                      {"r", l.r},
                      {"c", l.c},
                      {"ch", l.ch},
                      {"s", l.s},
                      {"pad", l.pad},
                      {"kind", to_string(l.kind)},
                      {"activation", activation_to_json(l.activation)}});
  }
  return Json{{"name", net.name}, {"layers", std::move(layers)}};
}

NetworkModel network_from_json(const Json& doc) {
  detail::reject_unknown_keys(doc, {"name", "layers"}, "network");
  if (!doc.contains("name") || !doc["name"].is_string()) {
    throw ConfigError("network: missing string field 'name'");
  }
  if (!doc.contains("layers") || !doc["layers"].is_array()) {
    throw ConfigError("network: missing array field 'layers'");
  }
  NetworkModel net;
  net.name = doc["name"].get<std::string>();
  int index = 1;
  for (const auto& j : doc["layers"]) {
    const auto where = layer_where(index);
    detail::reject_unknown_keys(
        j, {"n_f", "r_f", "c_f", "r", "c", "ch", "s", "pad", "kind", "activation"},
        where);
    LayerSpec l;
    l.index = index;
    l.n_f = detail::require_int(j, "n_f", where);
    l.r_f = detail::require_int(j, "r_f", where);
    l.c_f = detail::require_int(j, "c_f", where);
    l.r = detail::require_int(j, "r", where);
    l.c = detail::require_int(j, "c", where);
    l.ch = detail::require_int(j, "ch", where);
    l.s = detail::require_int(j, "s", where);
    l.pad = detail::optional_int(j, "pad", 0, where);
    if (j.contains("kind")) l.kind = kind_from_json(j["kind"], where);
    if (j.contains("activation")) {
      l.activation = activation_from_json(j["activation"], where);
    }
    net.layers.push_back(l);
    ++index;
  }
  validate_network(net);
  return net;
}

NetworkModel parse_network(std::string_view text) {
  return network_from_json(detail::parse_json(text, "network"));
}

NetworkModel load_network(const std::filesystem::path& path) {
  return parse_network(detail::read_text_file(path));
}

std::string serialize_network(const NetworkModel& net) {
  return network_to_json(net).dump(2) + "\n";
}

std::string to_string(LayerKind kind) {
  return kind == LayerKind::Convolutional ? "convolutional" : "fully-connected";
}

std::string to_string(const Activation& act) {
  switch (act.kind) {
    case Activation::Kind::None: return "none";
    case Activation::Kind::Relu: return "relu";
    case Activation::Kind::LeakyRelu: return "leaky-relu";
    case Activation::Kind::Elu: return "elu";
  }
  return "none";
}

}  // namespace sadse
