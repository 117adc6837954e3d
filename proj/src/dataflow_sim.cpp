#include "sadse/dataflow_sim.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace sadse {

std::string format_trace_line(const TraceEvent& ev) {
  auto field = [](Count v) { return v < 0 ? std::string("-") : std::to_string(v); };
  return ev.kind + "," + std::to_string(ev.layer) + "," + field(ev.tile) + "," +
         field(ev.filter_group) + "," + field(ev.channel_group) + "," +
         std::to_string(ev.words);
}

double activate(double x, const Activation& act) {
  switch (act.kind) {
    case Activation::Kind::None: return x;
    case Activation::Kind::Relu: return std::max(0.0, x);
    case Activation::Kind::LeakyRelu: return x >= 0.0 ? x : act.param * x;
    case Activation::Kind::Elu:
      return x >= 0.0 ? x : act.param * std::expm1(x);
  }
  return x;
}

template <typename T>
T activation(T x, const Activation& act) {
  if constexpr (std::is_integral_v<T>) {
    if (act.kind == Activation::Kind::None) return x;
    if (act.kind == Activation::Kind::Relu) return std::max<T>(0, x);
    return static_cast<T>(std::floor(activate(static_cast<double>(x), act)));
  } else {
    return static_cast<T>(activate(static_cast<double>(x), act));
  }
}

template <typename T>
Plane<T> maxpool(const Plane<T>& plane, Count s) {
  if (s < 1) throw ConfigError("maxpool: stride must be >= 1");
  Plane<T> out;
  out.rows = ceil_div(plane.rows, s);
  out.cols = ceil_div(plane.cols, s);
  out.data.resize(static_cast<std::size_t>(out.rows * out.cols));
  for (Count r = 0; r < out.rows; ++r) {
    for (Count c = 0; c < out.cols; ++c) {
      T best = plane.at(r * s, c * s);
      for (Count y = r * s; y < std::min((r + 1) * s, plane.rows); ++y) {
        for (Count x = c * s; x < std::min((c + 1) * s, plane.cols); ++x) {
          best = std::max(best, plane.at(y, x));
        }
      }
      out.at(r, c) = best;
    }
  }
  return out;
}

namespace {

template <typename T>
void check_shapes(const LayerSpec& layer, const Tensor3<T>& ifm,
                  const FilterBank<T>& filters) {
  validate_layer(layer);
  if (ifm.rows != layer.r || ifm.cols != layer.c || ifm.channels != layer.ch) {
    throw ConfigError("IFM shape does not match layer " +
                      std::to_string(layer.index));
  }
  if (filters.n_f != layer.n_f || filters.r_f != layer.r_f ||
      filters.c_f != layer.c_f || filters.ch != layer.ch) {
    throw ConfigError("filter bank shape does not match layer " +
                      std::to_string(layer.index));
  }
  if (ifm.data.size() != static_cast<std::size_t>(ifm.rows * ifm.cols * ifm.channels) ||
      filters.data.size() !=
          static_cast<std::size_t>(filters.n_f * filters.filter_size())) {
    throw ConfigError("tensor storage does not match its extents");
  }
}

// Pool and activate each filter's full pre-activation plane into the OFM.
template <typename T>
Tensor3<T> finish_ofm(const LayerSpec& layer, const std::vector<T>& acc,
                      Count d_h, Count d_v) {
  Tensor3<T> ofm(ceil_div(d_h, layer.s), ceil_div(d_v, layer.s), layer.n_f);
  for (Count f = 0; f < layer.n_f; ++f) {
    Plane<T> plane{d_h, d_v, {}};
    const auto first = acc.begin() + static_cast<std::ptrdiff_t>(f * d_h * d_v);
    plane.data.assign(first, first + static_cast<std::ptrdiff_t>(d_h * d_v));
    const auto pooled = maxpool(plane, layer.s);
    for (Count r = 0; r < pooled.rows; ++r) {
      for (Count c = 0; c < pooled.cols; ++c) {
        ofm.at(f, r, c) = activation(pooled.at(r, c), layer.activation);
      }
    }
  }
  return ofm;
}

}  // namespace

template <typename T>
Tensor3<T> reference_layer(const LayerSpec& layer, const Tensor3<T>& ifm,
                           const FilterBank<T>& filters) {
  check_shapes(layer, ifm, filters);
  const auto [d_h, d_v] = slide_counts(layer);
  std::vector<T> conv(static_cast<std::size_t>(layer.n_f * d_h * d_v), T{});
  for (Count f = 0; f < layer.n_f; ++f) {
    for (Count y = 0; y < d_h; ++y) {
      for (Count x = 0; x < d_v; ++x) {
        T sum{};
        for (Count c = 0; c < layer.ch; ++c) {
          for (Count ky = 0; ky < layer.r_f; ++ky) {
            for (Count kx = 0; kx < layer.c_f; ++kx) {
              const Count iy = y + ky - layer.pad;
              const Count ix = x + kx - layer.pad;
              if (iy < 0 || iy >= layer.r || ix < 0 || ix >= layer.c) continue;
              sum += ifm.at(c, iy, ix) * filters.at(f, c, ky, kx);
            }
          }
        }
        conv[static_cast<std::size_t>((f * d_h + y) * d_v + x)] = sum;
      }
    }
  }
  return finish_ofm(layer, conv, d_h, d_v);
}

namespace {

struct Range {
  Count begin = 0;
  Count end = 0;
  Count size() const { return end - begin; }
};

// Contiguous groups of `step` over [0, total); the last one may be ragged.
std::vector<Range> split(Count total, Count step) {
  std::vector<Range> out;
  for (Count b = 0; b < total; b += step) out.push_back({b, std::min(b + step, total)});
  return out;
}

template <typename T>
class LayerSimulator {
 public:
  LayerSimulator(const LayerSpec& layer, const DesignPoint& dp,
                 const Tensor3<T>& ifm, const FilterBank<T>& filters,
                 const SimOptions& options)
      : layer_(layer), dp_(dp), ifm_(ifm), filters_(filters), options_(options) {
    const auto sc = slide_counts(layer);
    d_h_ = sc.d_h;
    d_v_ = sc.d_v;
    const Count r_t = dp.tile_rows(layer);
    if (r_t < 1) throw ConfigError("tile rows must be >= 1");
    if (dp.tile_cols(layer) != layer.c) {
      throw ConfigError("tile schedule must span the full IFM width");
    }
    if (dp.c_sa < 1 || dp.ch_sa < 1) {
      throw ConfigError("c_sa and ch_sa must be >= 1");
    }
    tiles_ = split(layer.r, r_t);
    filter_groups_ = split(layer.n_f, dp.c_sa);
    channel_groups_ = split(layer.ch, dp.ch_sa);
    pooled_plane_ = ceil_div(d_h_ * d_v_, layer.s * layer.s);
    // Accumulation block: one partial sum per (filter, output position).
    acc_.assign(static_cast<std::size_t>(layer.n_f * d_h_ * d_v_), T{});
  }

  SimResult<T> run() {
    if (dp_.traversal == TraversalOrder::FeatureMapReuse) {
      for (std::size_t t = 0; t < tiles_.size(); ++t) {
        for (std::size_t g = 0; g < channel_groups_.size(); ++g) {
          fetch_tile(t, g);
          for (std::size_t fg = 0; fg < filter_groups_.size(); ++fg) {
            fetch_weights(static_cast<Count>(fg), g, filter_groups_[fg].size(), t);
            sa_pass(fg, g, t);
            if (g + 1 == channel_groups_.size()) flush(fg, t);
          }
        }
      }
    } else {
      // The resident weight set is reloaded once per (channel group, tile);
      // the tile is re-fetched for every filter group.
      for (std::size_t g = 0; g < channel_groups_.size(); ++g) {
        for (std::size_t t = 0; t < tiles_.size(); ++t) {
          fetch_weights(-1, g, std::min(dp_.c_sa, layer_.n_f), t);
          for (std::size_t fg = 0; fg < filter_groups_.size(); ++fg) {
            fetch_tile(t, g);
            sa_pass(fg, g, t);
            if (g + 1 == channel_groups_.size()) flush(fg, t);
          }
        }
      }
    }
    result_.ofm = finish_ofm(layer_, acc_, d_h_, d_v_);
    return std::move(result_);
  }

 private:
  void record(const char* kind, Count tile, Count fg, Count g, Words words) {
    if (options_.trace) {
      result_.trace.push_back({kind, layer_.index, tile, fg, g, words});
    }
  }

  void fetch_tile(std::size_t t, std::size_t g) {
    const Words words = tiles_[t].size() * layer_.c * channel_groups_[g].size();
    result_.counts.ifm_words_fetched += words;
    record("ifm_fetch", static_cast<Count>(t), -1, static_cast<Count>(g), words);
  }

  void fetch_weights(Count fg, std::size_t g, Count n_filters, std::size_t t) {
    const Words words =
        n_filters * channel_groups_[g].size() * layer_.r_f * layer_.c_f;
    result_.counts.weight_words_fetched += words;
    record("weight_fetch", static_cast<Count>(t), fg, static_cast<Count>(g), words);
  }

  void flush(std::size_t fg, std::size_t t) {
    result_.counts.ofm_words_written += pooled_plane_;
    record("ofm_write", static_cast<Count>(t), static_cast<Count>(fg), -1,
           pooled_plane_);
  }

  const T& weight(Count f, Count c, Count ky, Count kx) const {
    if (!options_.corrupt_weight_order) return filters_.at(f, c, ky, kx);
    const auto base = static_cast<std::size_t>(f * filters_.filter_size());
    const auto off = filters_.index(f, c, ky, kx) - base;
    return filters_.data[base + static_cast<std::size_t>(filters_.filter_size()) -
                         1 - off];
  }

  // One systolic pass: every filter of the group against every channel of the
  // group, restricted to filter taps whose input row lies in this tile. Rows of
  // the zero padding belong to the first and last tile.
  void sa_pass(std::size_t fg, std::size_t g, std::size_t t) {
    const Range rows{t == 0 ? -layer_.pad : tiles_[t].begin,
                     t + 1 == tiles_.size() ? layer_.r + layer_.pad : tiles_[t].end};
    const Range filters = filter_groups_[fg];
    const Range chans = channel_groups_[g];
    for (Count f = filters.begin; f < filters.end; ++f) {
      for (Count y = 0; y < d_h_; ++y) {
        const Count ky_lo = std::max<Count>(0, rows.begin - y + layer_.pad);
        const Count ky_hi = std::min(layer_.r_f, rows.end - y + layer_.pad);
        if (ky_lo >= ky_hi) continue;
        for (Count x = 0; x < d_v_; ++x) {
          // Column partial sum handed to the accumulation block.
          T psum{};
          for (Count c = chans.begin; c < chans.end; ++c) {
            for (Count ky = ky_lo; ky < ky_hi; ++ky) {
              const Count iy = y + ky - layer_.pad;
              for (Count kx = 0; kx < layer_.c_f; ++kx) {
                const Count ix = x + kx - layer_.pad;
                ++result_.counts.macs_executed;
                if (iy < 0 || iy >= layer_.r || ix < 0 || ix >= layer_.c) continue;
                psum += ifm_.at(c, iy, ix) * weight(f, c, ky, kx);
              }
            }
          }
          acc_[static_cast<std::size_t>((f * d_h_ + y) * d_v_ + x)] += psum;
        }
      }
    }
  }

  const LayerSpec& layer_;
  const DesignPoint& dp_;
  const Tensor3<T>& ifm_;
  const FilterBank<T>& filters_;
  const SimOptions& options_;

  Count d_h_ = 0;
  Count d_v_ = 0;
  Words pooled_plane_ = 0;
  std::vector<Range> tiles_;
  std::vector<Range> filter_groups_;
  std::vector<Range> channel_groups_;
  std::vector<T> acc_;
  SimResult<T> result_;
};

}  // namespace

template <typename T>
SimResult<T> simulate_layer(const LayerSpec& layer, const DesignPoint& dp,
                            const Tensor3<T>& ifm, const FilterBank<T>& filters,
                            const SimOptions& options) {
  check_shapes(layer, ifm, filters);
  return LayerSimulator<T>(layer, dp, ifm, filters, options).run();
}

Tensor3<std::int64_t> random_ifm(const LayerSpec& layer, std::mt19937_64& rng,
                                 std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  Tensor3<std::int64_t> t(layer.r, layer.c, layer.ch);
  for (auto& v : t.data) v = dist(rng);
  return t;
}

FilterBank<std::int64_t> random_filters(const LayerSpec& layer,
                                        std::mt19937_64& rng, std::int64_t lo,
                                        std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  FilterBank<std::int64_t> fb(layer.n_f, layer.r_f, layer.c_f, layer.ch);
  for (auto& v : fb.data) v = dist(rng);
  return fb;
}

template std::int64_t activation(std::int64_t, const Activation&);
template double activation(double, const Activation&);
template Plane<std::int64_t> maxpool(const Plane<std::int64_t>&, Count);
template Plane<double> maxpool(const Plane<double>&, Count);
template Tensor3<std::int64_t> reference_layer(const LayerSpec&,
                                               const Tensor3<std::int64_t>&,
                                               const FilterBank<std::int64_t>&);
template Tensor3<double> reference_layer(const LayerSpec&, const Tensor3<double>&,
                                         const FilterBank<double>&);
template SimResult<std::int64_t> simulate_layer(const LayerSpec&,
                                                const DesignPoint&,
                                                const Tensor3<std::int64_t>&,
                                                const FilterBank<std::int64_t>&,
                                                const SimOptions&);
template SimResult<double> simulate_layer(const LayerSpec&, const DesignPoint&,
                                          const Tensor3<double>&,
                                          const FilterBank<double>&,
                                          const SimOptions&);

}  // namespace sadse
