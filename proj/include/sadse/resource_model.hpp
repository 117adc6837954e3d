#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "sadse/common.hpp"
#include "sadse/designspace.hpp"
#include "sadse/json.hpp"
#include "sadse/netmodel.hpp"

namespace sadse {

struct HardwareBudget {
  Count n_dsp_avail = 220;
  std::int64_t m_bram_bits = 4900 * 1024;
  std::int64_t word_bits = 16;
  Count w_words_per_cycle = 1;

  // On-chip memory expressed in datum words.
  Words capacity_words() const { return m_bram_bits / word_bits; }

  void validate() const;

  bool operator==(const HardwareBudget&) const = default;
};

Json budget_to_json(const HardwareBudget& b);
HardwareBudget budget_from_json(const Json& doc);
HardwareBudget parse_budget(std::string_view text);
HardwareBudget load_budget(const std::filesystem::path& path);

struct LayerResource {
  Words m_fm = 0;     // IFM buffer
  Words m_ps = 0;     // partial sums in the accumulation block
  Words m_pool = 0;   // pooling/activation FIFOs
  Words m_wsa = 0;    // one resident weight set
  Words m_t = 0;      // total
  Words m_delta = 0;  // capacity - m_t (negative when the layer does not fit)

  bool operator==(const LayerResource&) const = default;
};

struct ResourceEstimate {
  std::vector<LayerResource> per_layer;
  Words mu = 0;                // min over layers of m_delta
  Count n_dsp = 0;
  bool dsp_ok = false;
  bool memory_ok = false;
  bool feasible = false;       // memory_ok && dsp_ok
  int worst_layer = 1;         // 1-based layer attaining mu (first on ties)
  Words worst_layer_m_t = 0;

  bool operator==(const ResourceEstimate&) const = default;
};

Words mem_ifm(const DesignPoint& dp, const LayerSpec& layer);
Words mem_partial_sums(const DesignPoint& dp, const LayerSpec& layer);
Words mem_pool(const DesignPoint& dp, const LayerSpec& layer);
Words mem_weights(const DesignPoint& dp, const LayerSpec& layer);
LayerResource mem_total(const DesignPoint& dp, const LayerSpec& layer,
                        const HardwareBudget& budget);

ResourceEstimate assess(const DesignPoint& dp, const NetworkModel& net,
                        const HardwareBudget& budget);

}  // namespace sadse
