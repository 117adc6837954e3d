#include "sadse/perf_model.hpp"

namespace sadse {

TilingFactors tiling_factors(const DesignPoint& dp, const LayerSpec& layer) {
  TilingFactors f;
  f.alpha = ceil_div(layer.n_f, dp.c_sa);
  f.beta = ceil_div(layer.r, dp.tile_rows(layer));
  f.gamma = ceil_div(layer.ch, dp.ch_sa);
  f.omega = f.alpha * f.beta * f.gamma;
  return f;
}

// Feature-map reuse brings each (tile, channel group) in once; filter reuse
// re-fetches the tile for every filter group.
Cycles cycles_ifm(const DesignPoint& dp, const LayerSpec& layer,
                  const HardwareBudget& budget) {
  const auto f = tiling_factors(dp, layer);
  const Count fetches = dp.traversal == TraversalOrder::FeatureMapReuse
                            ? f.beta * f.gamma
                            : f.alpha * f.beta * f.gamma;
  return ceil_div(fetches * mem_ifm(dp, layer), budget.w_words_per_cycle);
}

// Filter reuse keeps the beta*gamma multiplier of the cost model as written.
Cycles cycles_weights(const DesignPoint& dp, const LayerSpec& layer,
                      const HardwareBudget& budget) {
  const auto f = tiling_factors(dp, layer);
  const Count fetches = dp.traversal == TraversalOrder::FeatureMapReuse
                            ? f.alpha * f.beta * f.gamma
                            : f.beta * f.gamma;
  return ceil_div(fetches * mem_weights(dp, layer), budget.w_words_per_cycle);
}

Cycles cycles_scratchpad(const DesignPoint& dp, const LayerSpec& layer) {
  const auto f = tiling_factors(dp, layer);
  const Count k = layer.kind == LayerKind::Convolutional ? layer.r_f : 1;
  return f.omega * (slide_counts(layer).plane() + dp.r_sa - 1) * k;
}

Cycles cycles_sa(const DesignPoint& dp, const LayerSpec& layer) {
  return tiling_factors(dp, layer).omega * dp.c_sa +
         cycles_scratchpad(dp, layer);
}

Cycles cycles_writeback(const DesignPoint& dp, const LayerSpec& layer,
                        const HardwareBudget& budget) {
  const auto f = tiling_factors(dp, layer);
  const Words pooled = ceil_div(slide_counts(layer).plane(), layer.s * layer.s);
  return ceil_div(f.alpha * f.beta * pooled, budget.w_words_per_cycle);
}

LayerPerf layer_perf(const DesignPoint& dp, const LayerSpec& layer,
                     const HardwareBudget& budget) {
  LayerPerf lp;
  lp.t_fm = cycles_ifm(dp, layer, budget);
  lp.t_w = cycles_weights(dp, layer, budget);
  lp.t_sp = cycles_scratchpad(dp, layer);
  lp.t_sa = cycles_sa(dp, layer);
  lp.t_out = cycles_writeback(dp, layer, budget);
  lp.t_layer = lp.t_fm + lp.t_w + lp.t_sp + lp.t_sa + lp.t_out;
  return lp;
}

PerfEstimate perf(const DesignPoint& dp, const NetworkModel& net,
                  const HardwareBudget& budget) {
  PerfEstimate pe;
  pe.per_layer.reserve(net.layers.size());
  for (const auto& layer : net.layers) {
    pe.per_layer.push_back(layer_perf(dp, layer, budget));
    pe.t_total += pe.per_layer.back().t_layer;
  }
  return pe;
}

}  // namespace sadse
