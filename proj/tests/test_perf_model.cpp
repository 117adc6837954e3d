#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sadse/perf_model.hpp"
#include "test_support.hpp"

using namespace sadse;
using testing_support::config;
using testing_support::conv_layer;
using testing_support::single;

namespace {

HardwareBudget with_w(Count w) { return HardwareBudget{220, 5017600, 16, w}; }

struct YoloLayer1 {
  NetworkModel net = load_network(config("tiny_yolo_pad0.json"));
  const LayerSpec& layer = net.layers[0];
  DesignPoint fm = make_point(net, 104, 16, 2, TraversalOrder::FeatureMapReuse);
  DesignPoint fr = make_point(net, 104, 16, 2, TraversalOrder::FilterReuse);
};

}  // namespace

TEST_SUITE("equations") {
  TEST_CASE("tiling factors") {
    YoloLayer1 y;
    const auto f = tiling_factors(y.fm, y.layer);
    CHECK(f.alpha == 1);
    CHECK(f.beta == 4);
    CHECK(f.gamma == 2);
    CHECK(f.omega == 8);

    const auto l = conv_layer(16, 3, 8, 8, 4);
    const auto unit = tiling_factors(make_point(single(l), 8, 16, 4,
                                                TraversalOrder::FilterReuse), l);
    CHECK(unit.omega == 1);
  }

  TEST_CASE("IFM transfer cycles") {
    YoloLayer1 y;
    CHECK(cycles_ifm(y.fm, y.layer, with_w(1)) == 692224);
    // alpha = 1 here, so filter reuse fetches the same number of tiles.
    CHECK(cycles_ifm(y.fr, y.layer, with_w(1)) == 692224);
    CHECK(cycles_ifm(y.fm, y.layer, with_w(2)) == 346112);
    CHECK(cycles_ifm(y.fm, y.layer, with_w(3)) == oracle::ceil_div(692224, 3));
  }

  TEST_CASE("weight transfer cycles") {
    YoloLayer1 y;
    CHECK(cycles_weights(y.fm, y.layer, with_w(1)) == 2304);
    CHECK(cycles_weights(y.fr, y.layer, with_w(1)) == 2304);

    const auto l = conv_layer(16, 3, 8, 8, 4);
    for (auto order : {TraversalOrder::FeatureMapReuse, TraversalOrder::FilterReuse}) {
      const auto dp = make_point(single(l), 8, 16, 4, order);
      CHECK(cycles_weights(dp, l, with_w(1)) == 16 * 4 * 9);
      CHECK(cycles_weights(dp, l, with_w(4)) == 16 * 4 * 9 / 4);
    }
  }

  TEST_CASE("scratchpad fill cycles") {
    YoloLayer1 y;
    REQUIRE(y.fm.r_sa == 6);
    CHECK(cycles_scratchpad(y.fm, y.layer) == 8 * (171396 + 5) * 3);
    CHECK(cycles_scratchpad(y.fm, y.layer) == 4113624);

    auto fc = conv_layer(10, 1, 1, 1, 2);
    fc.kind = LayerKind::FullyConnected;
    const auto fc_dp = make_point(single(fc), 1, 16, 2, TraversalOrder::FilterReuse);
    REQUIRE(fc_dp.r_sa == 2);
    CHECK(cycles_scratchpad(fc_dp, fc) == 2);

    const auto tiny = conv_layer(1, 1, 1, 1, 1);
    const auto tiny_dp = make_point(single(tiny), 1, 2, 1, TraversalOrder::FilterReuse);
    REQUIRE(tiny_dp.r_sa == 1);
    CHECK(cycles_scratchpad(tiny_dp, tiny) == 1);
    CHECK(cycles_sa(tiny_dp, tiny) == 3);
  }

  TEST_CASE("systolic array cycles") {
    YoloLayer1 y;
    CHECK(cycles_sa(y.fm, y.layer) == 4113752);
    CHECK(cycles_sa(y.fm, y.layer) - cycles_scratchpad(y.fm, y.layer) == 8 * 16);
  }

  TEST_CASE("write-back cycles") {
    YoloLayer1 y;
    CHECK(cycles_writeback(y.fm, y.layer, with_w(1)) == 171396);

    auto l = conv_layer(32, 3, 20, 20, 4, 1);
    const auto dp = make_point(single(l), 5, 16, 2, TraversalOrder::FeatureMapReuse);
    CHECK(cycles_writeback(dp, l, with_w(1)) == 2 * 4 * 18 * 18);

    const auto small = conv_layer(2, 3, 4, 4, 1, 2);
    const auto sdp = make_point(single(small), 4, 2, 2, TraversalOrder::FilterReuse);
    CHECK(cycles_writeback(sdp, small, with_w(1)) == 1);
  }

  TEST_CASE("layer and network totals") {
    const auto net = load_network(config("tiny_yolo_pad0.json"));
    const auto dp = make_point(net, 52, 8, 4, TraversalOrder::FilterReuse);
    const auto pe = perf(dp, net, with_w(1));
    Cycles sum = 0;
    for (const auto& lp : pe.per_layer) {
      CHECK(lp.t_layer == lp.t_fm + lp.t_w + lp.t_sp + lp.t_sa + lp.t_out);
      sum += lp.t_layer;
    }
    CHECK(pe.t_total == sum);

    const auto one = load_network(config("small_layer.json"));
    const auto single_pe =
        perf(make_point(one, 3, 2, 2, TraversalOrder::FeatureMapReuse), one, with_w(1));
    REQUIRE(single_pe.per_layer.size() == 1);
    CHECK(single_pe.t_total == single_pe.per_layer[0].t_layer);
  }
}

TEST_CASE("property: cost model against the rho-literal oracle") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<Count> dim(1, 80), n(1, 300), kern(1, 5), pad(0, 2),
      stride(1, 3), pe(1, 24), w(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    auto l = conv_layer(n(rng), kern(rng), 0, 0, n(rng), stride(rng), pad(rng));
    l.r = l.r_f + dim(rng);
    l.c = l.c_f + dim(rng);
    if (trial % 9 == 0) l.kind = LayerKind::FullyConnected;
    const auto order =
        trial % 2 ? TraversalOrder::FilterReuse : TraversalOrder::FeatureMapReuse;
    const auto dp = make_point(single(l), dim(rng), pe(rng), pe(rng), order);
    const Count W = w(rng);
    const auto budget = with_w(W);

    const oracle::Layer ol{l.n_f, l.r_f, l.c_f, l.r, l.c, l.ch, l.s, l.pad};
    const oracle::Point op{dp.tile_rows(l), dp.c_sa, dp.ch_sa, dp.r_sa,
                           order == TraversalOrder::FeatureMapReuse};
    const auto f = tiling_factors(dp, l);
    CHECK(f.alpha == oracle::alpha(ol, op));
    CHECK(f.beta == oracle::beta(ol, op));
    CHECK(f.gamma == oracle::gamma(ol, op));
    CHECK(f.omega == f.alpha * f.beta * f.gamma);
    CHECK(f.beta * dp.tile_rows(l) >= l.r);
    CHECK(f.alpha * dp.c_sa >= l.n_f);
    CHECK(f.gamma * dp.ch_sa >= l.ch);

    CHECK(cycles_ifm(dp, l, budget) == oracle::t_fm(ol, op, W));
    CHECK(cycles_weights(dp, l, budget) == oracle::t_w(ol, op, W));
    CHECK(cycles_writeback(dp, l, budget) == oracle::t_out(ol, op, W));
    const oracle::i64 k = l.kind == LayerKind::Convolutional ? l.r_f : 1;
    const oracle::i64 t_sp =
        f.omega * (oracle::d_h(ol) * oracle::d_v(ol) + dp.r_sa - 1) * k;
    CHECK(cycles_scratchpad(dp, l) == t_sp);
    CHECK(cycles_sa(dp, l) == t_sp + f.omega * dp.c_sa);

    const auto lp = layer_perf(dp, l, budget);
    CHECK(lp.t_layer == lp.t_fm + lp.t_w + lp.t_sp + lp.t_sa + lp.t_out);
    CHECK(lp.t_sa >= lp.t_sp);

    // Faster DRAM never costs cycles.
    const auto faster = with_w(W + 1);
    CHECK(cycles_ifm(dp, l, faster) <= cycles_ifm(dp, l, budget));
    CHECK(cycles_weights(dp, l, faster) <= cycles_weights(dp, l, budget));

    if (f.alpha == 1) {
      auto other = dp;
      other.traversal = order == TraversalOrder::FilterReuse
                            ? TraversalOrder::FeatureMapReuse
                            : TraversalOrder::FilterReuse;
      CHECK(layer_perf(other, l, budget) == lp);
    }
  }
}
