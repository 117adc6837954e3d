#include "sadse/designspace.hpp"

#include <algorithm>
#include <cassert>

namespace sadse {

std::string to_string(TraversalOrder t) {
  return t == TraversalOrder::FeatureMapReuse ? "featuremap" : "filter";
}

std::string to_string(GenRule g) {
  return g == GenRule::PaperResults ? "paper-results" : "paper-equations";
}

std::optional<TraversalOrder> traversal_from_string(std::string_view s) {
  if (s == "featuremap") return TraversalOrder::FeatureMapReuse;
  if (s == "filter") return TraversalOrder::FilterReuse;
  return std::nullopt;
}

std::optional<GenRule> gen_rule_from_string(std::string_view s) {
  if (s == "paper-results") return GenRule::PaperResults;
  if (s == "paper-equations") return GenRule::PaperEquations;
  return std::nullopt;
}

Count DesignPoint::tile_rows(const LayerSpec& layer) const {
  const auto k = static_cast<std::size_t>(layer.index - 1);
  if (layer.index < 1 || k >= tile.rows.size()) {
    throw ConfigError("design point " + std::to_string(id) +
                      " has no tile rows for layer " +
                      std::to_string(layer.index));
  }
  return tile.rows[k];
}

Count DesignPoint::tile_cols(const LayerSpec& layer) const {
  const auto k = static_cast<std::size_t>(layer.index - 1);
  if (layer.index < 1 || k >= tile.cols.size()) {
    throw ConfigError("design point " + std::to_string(id) +
                      " has no tile cols for layer " +
                      std::to_string(layer.index));
  }
  return tile.cols[k];
}

void ExplorationParams::validate() const {
  if (F < 1) throw ConfigError("F must be >= 1");
  if (P < 1 || Q < 1 || R < 1) throw ConfigError("P, Q and R must be >= 1");
  if (traversals.empty()) throw ConfigError("no traversal order selected");
  // Halving 2^(P-1) / 2^Q must stay representable.
  if (P > 62 || Q > 62 || R > 62) throw ConfigError("P, Q and R must be <= 62");
}

Count nominal_tile_rows(Count first_layer_rows, Count F, int p, GenRule rule) {
  const Count divisor = rule == GenRule::PaperResults
                            ? F * (Count{1} << (p - 1))
                            : F * p;
  const Count rows = ceil_div(first_layer_rows, divisor);
  assert(rows >= 1);
  return rows;
}

std::vector<TileSchedule> gen_tile_schedules(const NetworkModel& net, Count F,
                                             int P, GenRule rule) {
  if (net.layers.empty()) throw ConfigError("network has no layers");
  const Count first_rows = net.layers.front().r;
  std::vector<TileSchedule> out;
  out.reserve(static_cast<std::size_t>(P));
  for (int p = 1; p <= P; ++p) {
    const Count nominal = nominal_tile_rows(first_rows, F, p, rule);
    TileSchedule ts;
    ts.p = p;
    for (const auto& l : net.layers) {
      ts.rows.push_back(std::min(nominal, l.r));
      ts.cols.push_back(l.c);
    }
    out.push_back(std::move(ts));
  }
  return out;
}

namespace {

std::vector<Count> gen_pe_dimension(int n, GenRule rule) {
  std::vector<Count> out;
  for (int k = 1; k <= n; ++k) {
    out.push_back(rule == GenRule::PaperResults ? Count{1} << k : Count{2} * k);
  }
  return out;
}

}  // namespace

std::vector<Count> gen_sa_columns(int Q, GenRule rule) {
  return gen_pe_dimension(Q, rule);
}

std::vector<Count> gen_sa_channels(int R, GenRule rule) {
  return gen_pe_dimension(R, rule);
}

Count sa_rows(Count ch_sa, const NetworkModel& net) {
  return ch_sa * net.max_filter_rows();
}

std::vector<DesignPoint> enumerate(const NetworkModel& net,
                                   const ExplorationParams& params) {
  params.validate();
  std::vector<TraversalOrder> orders;
  for (auto t : params.traversals) {
    if (std::find(orders.begin(), orders.end(), t) == orders.end()) {
      orders.push_back(t);
    }
  }

  const auto tiles = gen_tile_schedules(net, params.F, params.P, params.rule);
  const auto cols = gen_sa_columns(params.Q, params.rule);
  const auto chans = gen_sa_channels(params.R, params.rule);

  std::vector<DesignPoint> out;
  out.reserve(orders.size() * tiles.size() * cols.size() * chans.size());
  int id = 1;
  for (auto order : orders) {
    for (const auto& ts : tiles) {
      for (std::size_t q = 0; q < cols.size(); ++q) {
        for (std::size_t r = 0; r < chans.size(); ++r) {
          DesignPoint dp;
          dp.id = id++;
          dp.tile = ts;
          dp.q = static_cast<int>(q) + 1;
          dp.r = static_cast<int>(r) + 1;
          dp.c_sa = cols[q];
          dp.ch_sa = chans[r];
          dp.r_sa = sa_rows(dp.ch_sa, net);
          dp.traversal = order;
          out.push_back(std::move(dp));
        }
      }
    }
  }
  return out;
}

DesignPoint make_point(const NetworkModel& net, Count tile_rows, Count c_sa,
                       Count ch_sa, TraversalOrder traversal) {
  if (tile_rows < 1 || c_sa < 1 || ch_sa < 1) {
    throw ConfigError("tile rows, c_sa and ch_sa must be >= 1");
  }
  DesignPoint dp;
  dp.c_sa = c_sa;
  dp.ch_sa = ch_sa;
  dp.r_sa = sa_rows(ch_sa, net);
  dp.traversal = traversal;
  for (const auto& l : net.layers) {
    dp.tile.rows.push_back(std::min(tile_rows, l.r));
    dp.tile.cols.push_back(l.c);
  }
  return dp;
}

}  // namespace sadse
