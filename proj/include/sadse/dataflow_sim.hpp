#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sadse/common.hpp"
#include "sadse/designspace.hpp"
#include "sadse/netmodel.hpp"

namespace sadse {

// Dense feature map, channel-major then row-major.
template <typename T>
struct Tensor3 {
  Count rows = 0;
  Count cols = 0;
  Count channels = 0;
  std::vector<T> data;

  Tensor3() = default;
  Tensor3(Count rows_, Count cols_, Count channels_)
      : rows(rows_), cols(cols_), channels(channels_),
        data(static_cast<std::size_t>(rows_ * cols_ * channels_), T{}) {}

  T& at(Count ch, Count r, Count c) { return data[index(ch, r, c)]; }
  const T& at(Count ch, Count r, Count c) const { return data[index(ch, r, c)]; }

  std::size_t index(Count ch, Count r, Count c) const {
    return static_cast<std::size_t>((ch * rows + r) * cols + c);
  }

  bool operator==(const Tensor3&) const = default;
};

// n_f filters of r_f x c_f x ch, stored filter-major then channel, row, col.
template <typename T>
struct FilterBank {
  Count n_f = 0;
  Count r_f = 0;
  Count c_f = 0;
  Count ch = 0;
  std::vector<T> data;

  FilterBank() = default;
  FilterBank(Count n_f_, Count r_f_, Count c_f_, Count ch_)
      : n_f(n_f_), r_f(r_f_), c_f(c_f_), ch(ch_),
        data(static_cast<std::size_t>(n_f_ * r_f_ * c_f_ * ch_), T{}) {}

  Count filter_size() const { return ch * r_f * c_f; }

  T& at(Count f, Count c, Count ky, Count kx) { return data[index(f, c, ky, kx)]; }
  const T& at(Count f, Count c, Count ky, Count kx) const {
    return data[index(f, c, ky, kx)];
  }

  std::size_t index(Count f, Count c, Count ky, Count kx) const {
    return static_cast<std::size_t>(((f * ch + c) * r_f + ky) * c_f + kx);
  }
};

template <typename T>
struct Plane {
  Count rows = 0;
  Count cols = 0;
  std::vector<T> data;

  T& at(Count r, Count c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  const T& at(Count r, Count c) const {
    return data[static_cast<std::size_t>(r * cols + c)];
  }

  bool operator==(const Plane&) const = default;
};

struct SimCounts {
  Words ifm_words_fetched = 0;
  Words weight_words_fetched = 0;
  Words ofm_words_written = 0;
  Count macs_executed = 0;

  bool operator==(const SimCounts&) const = default;
};

struct TraceEvent {
  std::string kind;          // ifm_fetch | weight_fetch | ofm_write
  int layer = 1;
  Count tile = 0;
  Count filter_group = -1;   // -1 when the event is not tied to one group
  Count channel_group = -1;
  Words words = 0;
};

// "kind,layer,tile,filter_group,channel_group,words"; '-' marks n/a fields.
std::string format_trace_line(const TraceEvent& ev);

template <typename T>
struct SimResult {
  Tensor3<T> ofm;
  SimCounts counts;
  std::vector<TraceEvent> trace;
};

struct SimOptions {
  bool trace = false;
  // Test hook: reads each filter's weights in reverse order.
  bool corrupt_weight_order = false;
};

double activate(double x, const Activation& act);

// Integral types take the floor of the real-valued activation.
template <typename T>
T activation(T x, const Activation& act);

// Non-overlapping s x s max reduction; ragged edges pool what is available.
template <typename T>
Plane<T> maxpool(const Plane<T>& plane, Count s);

// Direct convolution + max-pool + activation with no tiling.
template <typename T>
Tensor3<T> reference_layer(const LayerSpec& layer, const Tensor3<T>& ifm,
                           const FilterBank<T>& filters);

// Tile-ordered, traversal-ordered evaluation of one layer with DRAM word and
// MAC accounting.
template <typename T>
SimResult<T> simulate_layer(const LayerSpec& layer, const DesignPoint& dp,
                            const Tensor3<T>& ifm, const FilterBank<T>& filters,
                            const SimOptions& options = {});

Tensor3<std::int64_t> random_ifm(const LayerSpec& layer, std::mt19937_64& rng,
                                 std::int64_t lo, std::int64_t hi);
FilterBank<std::int64_t> random_filters(const LayerSpec& layer,
                                        std::mt19937_64& rng, std::int64_t lo,
                                        std::int64_t hi);

extern template std::int64_t activation(std::int64_t, const Activation&);
extern template double activation(double, const Activation&);
extern template Plane<std::int64_t> maxpool(const Plane<std::int64_t>&, Count);
extern template Plane<double> maxpool(const Plane<double>&, Count);
extern template Tensor3<std::int64_t> reference_layer(
    const LayerSpec&, const Tensor3<std::int64_t>&,
    const FilterBank<std::int64_t>&);
extern template Tensor3<double> reference_layer(const LayerSpec&,
                                                const Tensor3<double>&,
                                                const FilterBank<double>&);
extern template SimResult<std::int64_t> simulate_layer(
    const LayerSpec&, const DesignPoint&, const Tensor3<std::int64_t>&,
    const FilterBank<std::int64_t>&, const SimOptions&);
extern template SimResult<double> simulate_layer(const LayerSpec&,
                                                 const DesignPoint&,
                                                 const Tensor3<double>&,
                                                 const FilterBank<double>&,
                                                 const SimOptions&);

}  // namespace sadse
