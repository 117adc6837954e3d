#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sadse/common.hpp"
#include "sadse/netmodel.hpp"

namespace sadse {

// FeatureMapReuse: a fetched IFM tile stays resident until every filter group
// has consumed it. FilterReuse: a resident filter set stays until every tile
// of the IFM has streamed through it.
enum class TraversalOrder { FeatureMapReuse, FilterReuse };

// PaperResults: geometric halving of the tile bound and powers of two for
// c_sa / ch_sa. PaperEquations: linear divisors and multiples of two.
enum class GenRule { PaperResults, PaperEquations };

std::string to_string(TraversalOrder t);
std::string to_string(GenRule g);
std::optional<TraversalOrder> traversal_from_string(std::string_view s);
std::optional<GenRule> gen_rule_from_string(std::string_view s);

struct TileSchedule {
  int p = 1;                 // 1-based generator ordinal
  std::vector<Count> rows;   // r_t per layer
  std::vector<Count> cols;   // c_t per layer (always the full IFM width)

  bool operator==(const TileSchedule&) const = default;
};

struct DesignPoint {
  int id = 1;
  TileSchedule tile;
  int q = 1;         // c_sa generator ordinal
  int r = 1;         // ch_sa generator ordinal
  Count c_sa = 2;    // SA columns
  Count ch_sa = 2;   // channels processed in parallel
  Count r_sa = 6;    // SA rows
  TraversalOrder traversal = TraversalOrder::FeatureMapReuse;

  Count n_dsp() const { return r_sa * c_sa; }
  Count tile_rows(const LayerSpec& layer) const;
  Count tile_cols(const LayerSpec& layer) const;

  bool operator==(const DesignPoint&) const = default;
};

struct ExplorationParams {
  Count F = 4;
  int P = 6;
  int Q = 4;
  int R = 4;
  std::vector<TraversalOrder> traversals{TraversalOrder::FeatureMapReuse,
                                         TraversalOrder::FilterReuse};
  GenRule rule = GenRule::PaperResults;

  void validate() const;

  bool operator==(const ExplorationParams&) const = default;
};

// Nominal first-layer tile rows for ordinal p (before per-layer clamping).
Count nominal_tile_rows(Count first_layer_rows, Count F, int p, GenRule rule);

std::vector<TileSchedule> gen_tile_schedules(const NetworkModel& net, Count F,
                                             int P,
                                             GenRule rule = GenRule::PaperResults);
std::vector<Count> gen_sa_columns(int Q, GenRule rule = GenRule::PaperResults);
std::vector<Count> gen_sa_channels(int R, GenRule rule = GenRule::PaperResults);
Count sa_rows(Count ch_sa, const NetworkModel& net);

// All P*Q*R points per traversal order, (p, q, r) lexicographic, ids from 1.
std::vector<DesignPoint> enumerate(const NetworkModel& net,
                                   const ExplorationParams& params);

// Single-point helper used by the simulator front end and tests: uniform tile
// rows across layers, clamped per layer.
DesignPoint make_point(const NetworkModel& net, Count tile_rows, Count c_sa,
                       Count ch_sa, TraversalOrder traversal);

}  // namespace sadse
