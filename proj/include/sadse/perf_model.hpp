#pragma once

#include <vector>

#include "sadse/common.hpp"
#include "sadse/designspace.hpp"
#include "sadse/netmodel.hpp"
#include "sadse/resource_model.hpp"

namespace sadse {

// Loop-tiling multiplicities of one layer on one design point.
struct TilingFactors {
  Count alpha = 1;  // filter groups:  ceil(n_f / c_sa)
  Count beta = 1;   // IFM row tiles:  ceil(r / r_t)
  Count gamma = 1;  // channel groups: ceil(ch / ch_sa)
  Count omega = 1;  // alpha * beta * gamma

  bool operator==(const TilingFactors&) const = default;
};

struct LayerPerf {
  Cycles t_fm = 0;     // IFM tile transfers
  Cycles t_w = 0;      // weight transfers
  Cycles t_sp = 0;     // scratchpad fill
  Cycles t_sa = 0;     // systolic array passes (includes t_sp)
  Cycles t_out = 0;    // OFM write-back
  Cycles t_layer = 0;

  bool operator==(const LayerPerf&) const = default;
};

struct PerfEstimate {
  std::vector<LayerPerf> per_layer;
  Cycles t_total = 0;

  bool operator==(const PerfEstimate&) const = default;
};

TilingFactors tiling_factors(const DesignPoint& dp, const LayerSpec& layer);

// Every division by the DRAM throughput rounds up to whole cycles.
Cycles cycles_ifm(const DesignPoint& dp, const LayerSpec& layer,
                  const HardwareBudget& budget);
Cycles cycles_weights(const DesignPoint& dp, const LayerSpec& layer,
                      const HardwareBudget& budget);
Cycles cycles_scratchpad(const DesignPoint& dp, const LayerSpec& layer);
Cycles cycles_sa(const DesignPoint& dp, const LayerSpec& layer);
Cycles cycles_writeback(const DesignPoint& dp, const LayerSpec& layer,
                        const HardwareBudget& budget);

LayerPerf layer_perf(const DesignPoint& dp, const LayerSpec& layer,
                     const HardwareBudget& budget);
PerfEstimate perf(const DesignPoint& dp, const NetworkModel& net,
                  const HardwareBudget& budget);

}  // namespace sadse
