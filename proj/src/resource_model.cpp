#include "sadse/resource_model.hpp"

#include "json_util.hpp"

namespace sadse {

void HardwareBudget::validate() const {
  // A zero DSP budget is accepted so that DSP-starved studies stay expressible.
  if (n_dsp_avail < 0) throw ConfigError("budget: n_dsp must be >= 0");
  if (m_bram_bits < 1) throw ConfigError("budget: m_bram_bits must be >= 1");
  if (word_bits < 1) throw ConfigError("budget: word_bits must be >= 1");
  if (w_words_per_cycle < 1) {
    throw ConfigError("budget: w_words_per_cycle must be >= 1");
  }
}

Json budget_to_json(const HardwareBudget& b) {
  return Json{{"n_dsp", b.n_dsp_avail},
              {"m_bram_bits", b.m_bram_bits},
              {"word_bits", b.word_bits},
              {"w_words_per_cycle", b.w_words_per_cycle}};
}

HardwareBudget budget_from_json(const Json& doc) {
  const std::string where = "budget";
  detail::reject_unknown_keys(
      doc, {"n_dsp", "m_bram_bits", "word_bits", "w_words_per_cycle"}, where);
  HardwareBudget b;
  b.n_dsp_avail = detail::require_int(doc, "n_dsp", where);
  b.m_bram_bits = detail::require_int(doc, "m_bram_bits", where);
  b.word_bits = detail::require_int(doc, "word_bits", where);
  b.w_words_per_cycle = detail::require_int(doc, "w_words_per_cycle", where);
  b.validate();
  return b;
}

HardwareBudget parse_budget(std::string_view text) {
  return budget_from_json(detail::parse_json(text, "budget"));
}

HardwareBudget load_budget(const std::filesystem::path& path) {
  return parse_budget(detail::read_text_file(path));
}

Words mem_ifm(const DesignPoint& dp, const LayerSpec& layer) {
  return dp.tile_rows(layer) * dp.tile_cols(layer) * dp.ch_sa;
}

// Partial sums cover the full OFM plane. Under feature-map reuse every filter's
// plane stays live while the tile is reused; under filter reuse only the
// resident c_sa filters' planes do.
Words mem_partial_sums(const DesignPoint& dp, const LayerSpec& layer) {
  const Count planes = dp.traversal == TraversalOrder::FeatureMapReuse
                           ? layer.n_f
                           : dp.c_sa;
  return planes * slide_counts(layer).plane();
}

Words mem_pool(const DesignPoint& dp, const LayerSpec& layer) {
  return ceil_div(mem_partial_sums(dp, layer), layer.s * layer.s);
}

Words mem_weights(const DesignPoint& dp, const LayerSpec& layer) {
  return dp.c_sa * dp.ch_sa * layer.r_f * layer.c_f;
}

LayerResource mem_total(const DesignPoint& dp, const LayerSpec& layer,
                        const HardwareBudget& budget) {
  LayerResource res;
  res.m_fm = mem_ifm(dp, layer);
  res.m_ps = mem_partial_sums(dp, layer);
  res.m_pool = ceil_div(res.m_ps, layer.s * layer.s);
  res.m_wsa = mem_weights(dp, layer);
  res.m_t = res.m_fm + res.m_ps + res.m_pool + res.m_wsa;
  res.m_delta = budget.capacity_words() - res.m_t;
  return res;
}

ResourceEstimate assess(const DesignPoint& dp, const NetworkModel& net,
                        const HardwareBudget& budget) {
  if (net.layers.empty()) throw ConfigError("network has no layers");
  ResourceEstimate est;
  est.per_layer.reserve(net.layers.size());
  for (const auto& layer : net.layers) {
    est.per_layer.push_back(mem_total(dp, layer, budget));
  }
  est.mu = est.per_layer.front().m_delta;
  est.worst_layer = 1;
  for (std::size_t k = 1; k < est.per_layer.size(); ++k) {
    if (est.per_layer[k].m_delta < est.mu) {
      est.mu = est.per_layer[k].m_delta;
      est.worst_layer = static_cast<int>(k) + 1;
    }
  }
  est.worst_layer_m_t = est.per_layer[est.worst_layer - 1].m_t;
  est.n_dsp = dp.n_dsp();
  est.dsp_ok = est.n_dsp <= budget.n_dsp_avail;
  est.memory_ok = est.mu > 0;
  est.feasible = est.dsp_ok && est.memory_ok;
  return est;
}

}  // namespace sadse
