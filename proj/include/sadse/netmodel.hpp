#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sadse/common.hpp"
#include "sadse/json.hpp"

namespace sadse {

enum class LayerKind { Convolutional, FullyConnected };

struct Activation {
  enum class Kind { None, Relu, LeakyRelu, Elu };

  Kind kind = Kind::None;
  // Leaky-ReLU slope or ELU alpha; unused otherwise.
  double param = 0.0;

  static Activation none() { return {}; }
  static Activation relu() { return {Kind::Relu, 0.0}; }
  static Activation leaky_relu(double slope) { return {Kind::LeakyRelu, slope}; }
  static Activation elu(double alpha) { return {Kind::Elu, alpha}; }

  bool operator==(const Activation&) const = default;
};

// One CNN layer. Rows (r, r_f) run along d_H, cols (c, c_f) along d_V.
struct LayerSpec {
  int index = 1;      // 1-based position in the network
  Count n_f = 1;      // filters
  Count r_f = 1;      // filter rows
  Count c_f = 1;      // filter cols
  Count r = 1;        // IFM rows
  Count c = 1;        // IFM cols
  Count ch = 1;       // IFM channels
  Count s = 1;        // pooling stride (1 = no pooling)
  Count pad = 0;      // symmetric zero padding
  LayerKind kind = LayerKind::Convolutional;
  Activation activation;

  bool operator==(const LayerSpec&) const = default;
};

struct NetworkModel {
  std::string name;
  std::vector<LayerSpec> layers;

  Count max_filter_rows() const;

  bool operator==(const NetworkModel&) const = default;
};

struct SlideCounts {
  Count d_h = 1;
  Count d_v = 1;

  Count plane() const { return d_h * d_v; }
};

// Filter positions along rows and cols of one channel (padding included).
SlideCounts slide_counts(const LayerSpec& layer);

// Throws ConfigError naming the layer and field on the first violation.
void validate_layer(const LayerSpec& layer);
void validate_network(const NetworkModel& net);

// ch(l+1) != n_f(l) mismatches; advisory only.
std::vector<std::string> consistency_warnings(const NetworkModel& net);

Json network_to_json(const NetworkModel& net);
NetworkModel network_from_json(const Json& doc);

NetworkModel parse_network(std::string_view text);
NetworkModel load_network(const std::filesystem::path& path);
std::string serialize_network(const NetworkModel& net);

std::string to_string(LayerKind kind);
std::string to_string(const Activation& act);

}  // namespace sadse
