#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sadse/resource_model.hpp"
#include "test_support.hpp"

using namespace sadse;
using testing_support::artix7;
using testing_support::config;
using testing_support::conv_layer;
using testing_support::single;

namespace {

DesignPoint point_for(const LayerSpec& l, Count r_t, Count c_sa, Count ch_sa,
                      TraversalOrder t = TraversalOrder::FilterReuse) {
  return make_point(single(l), r_t, c_sa, ch_sa, t);
}

}  // namespace

TEST_SUITE("equations") {
  TEST_CASE("IFM buffer words") {
    const auto big = conv_layer(16, 3, 416, 416, 3);
    CHECK(mem_ifm(point_for(big, 104, 2, 2), big) == 86528);
    const auto unit = conv_layer(1, 1, 1, 1, 1);
    CHECK(mem_ifm(point_for(unit, 1, 2, 1), unit) == 1);
    const auto small = conv_layer(16, 3, 13, 13, 16);
    CHECK(mem_ifm(point_for(small, 13, 2, 16), small) == 2704);
  }

  TEST_CASE("partial-sum words by traversal order") {
    const auto l = conv_layer(16, 3, 13, 13, 4);
    CHECK(mem_partial_sums(point_for(l, 13, 4, 2, TraversalOrder::FilterReuse), l) == 484);
    CHECK(mem_partial_sums(point_for(l, 13, 4, 2, TraversalOrder::FeatureMapReuse), l) ==
          1936);
    const auto one = conv_layer(8, 3, 3, 3, 2);
    CHECK(mem_partial_sums(point_for(one, 3, 2, 2), one) == 2);
  }

  TEST_CASE("pooling buffer words round up") {
    auto l = conv_layer(16, 3, 13, 13, 4, 2);
    CHECK(mem_pool(point_for(l, 13, 4, 2), l) == 121);
    l.s = 1;
    CHECK(mem_pool(point_for(l, 13, 4, 2), l) == 484);
    l.s = 2;
    // c_sa = 1 leaves a single 121-word plane; ceil(121 / 4) = 31.
    CHECK(mem_partial_sums(point_for(l, 13, 1, 2), l) == 121);
    CHECK(mem_pool(point_for(l, 13, 1, 2), l) == 31);
  }

  TEST_CASE("resident weight-set words") {
    const auto k3 = conv_layer(16, 3, 13, 13, 4);
    CHECK(mem_weights(point_for(k3, 13, 16, 2), k3) == 288);
    CHECK(mem_weights(point_for(k3, 13, 4, 8), k3) == 288);
    const auto k1 = conv_layer(16, 1, 13, 13, 4);
    CHECK(mem_weights(point_for(k1, 13, 2, 2), k1) == 4);
  }

  TEST_CASE("total and margin against the Artix-7 budget") {
    // 4,900 Kb of BRAM in 16-bit words.
    const Words capacity = 4900LL * 1024 / 16;
    CHECK(capacity == 313600);
    CHECK(artix7().capacity_words() == capacity);
    const Words m_t = 86528 + 1936 + 484 + 288;
    CHECK(m_t == 89236);
    CHECK(capacity - m_t == 224364);

    const auto l = conv_layer(16, 3, 13, 13, 4, 2);
    const auto dp = point_for(l, 13, 4, 2);
    const auto res = mem_total(dp, l, artix7());
    CHECK(res.m_t == res.m_fm + res.m_ps + res.m_pool + res.m_wsa);
    CHECK(res.m_delta == capacity - res.m_t);

    HardwareBudget tiny{220, 160, 16, 1};
    CHECK(mem_total(dp, l, tiny).m_delta < 0);
  }

  TEST_CASE("DSP feasibility from r_sa * c_sa") {
    const auto net = load_network(config("tiny_yolo_pad0.json"));
    auto dp = make_point(net, 104, 16, 2, TraversalOrder::FilterReuse);
    REQUIRE(dp.r_sa == 6);
    HardwareBudget roomy{220, 1LL << 40, 16, 1};
    auto est = assess(dp, net, roomy);
    CHECK(est.n_dsp == 96);
    CHECK(est.dsp_ok);
    CHECK(est.feasible);

    dp = make_point(net, 104, 16, 16, TraversalOrder::FilterReuse);
    REQUIRE(dp.r_sa == 48);
    est = assess(dp, net, roomy);
    CHECK(est.n_dsp == 768);
    CHECK_FALSE(est.dsp_ok);
    CHECK_FALSE(est.feasible);

    // Layer 1's partial sums alone exceed the Artix-7 memory.
    est = assess(make_point(net, 104, 2, 2, TraversalOrder::FilterReuse), net, artix7());
    CHECK(est.dsp_ok);
    CHECK_FALSE(est.memory_ok);
    CHECK_FALSE(est.feasible);
    CHECK(est.worst_layer == 1);
  }
}

TEST_CASE("budget documents") {
  const auto b = load_budget(config("artix7.json"));
  CHECK(b == artix7());
  CHECK(parse_budget(budget_to_json(b).dump()) == b);
  CHECK_THROWS_AS(parse_budget(R"({"n_dsp":1,"m_bram_bits":1,"word_bits":16})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_budget(R"({"n_dsp":1,"m_bram_bits":1,"word_bits":16,"w_words_per_cycle":1,"x":1})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_budget(R"({"n_dsp":1,"m_bram_bits":1,"word_bits":0,"w_words_per_cycle":1})"),
      ConfigError);
  CHECK_NOTHROW(
      parse_budget(R"({"n_dsp":0,"m_bram_bits":1,"word_bits":1,"w_words_per_cycle":1})"));
}

TEST_CASE("property: resource estimates against the rho-literal oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Count> dim(1, 60), chans(1, 64), kern(1, 5), pad(0, 2),
      stride(1, 3), pe(1, 20);
  for (int trial = 0; trial < 400; ++trial) {
    NetworkModel net{"rand", {}};
    const int count = 1 + trial % 4;
    for (int k = 1; k <= count; ++k) {
      auto l = conv_layer(chans(rng), kern(rng), 0, 0, chans(rng), stride(rng), pad(rng));
      l.index = k;
      l.r = l.r_f + dim(rng);
      l.c = l.c_f + dim(rng);
      net.layers.push_back(l);
    }
    const auto order =
        trial % 2 ? TraversalOrder::FilterReuse : TraversalOrder::FeatureMapReuse;
    const auto dp = make_point(net, dim(rng), pe(rng), pe(rng), order);
    HardwareBudget budget{pe(rng) * 20, dim(rng) * 400000, 8 * (1 + trial % 3), 1};
    const auto est = assess(dp, net, budget);

    REQUIRE(est.per_layer.size() == net.layers.size());
    bool attained = false;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
      const auto& l = net.layers[k];
      const auto& r = est.per_layer[k];
      const oracle::Layer ol{l.n_f, l.r_f, l.c_f, l.r, l.c, l.ch, l.s, l.pad};
      const oracle::Point op{dp.tile_rows(l), dp.c_sa, dp.ch_sa, dp.r_sa,
                             order == TraversalOrder::FeatureMapReuse};
      CHECK(r.m_fm == oracle::m_fm(ol, op));
      CHECK(r.m_ps == oracle::m_ps(ol, op));
      CHECK(r.m_pool == oracle::ceil_div(oracle::m_ps(ol, op), l.s * l.s));
      CHECK(r.m_wsa == oracle::m_wsa(ol, op));
      CHECK(r.m_t == r.m_fm + r.m_ps + r.m_pool + r.m_wsa);
      CHECK(est.mu <= r.m_delta);
      attained = attained || est.mu == r.m_delta;
    }
    CHECK(attained);
    CHECK(est.feasible == (est.mu > 0 && est.n_dsp <= budget.n_dsp_avail));

    // Larger budgets never turn a feasible point infeasible.
    auto more = budget;
    more.m_bram_bits *= 2;
    more.n_dsp_avail += 50;
    if (est.feasible) CHECK(assess(dp, net, more).feasible);
  }
}

TEST_CASE("property: feature-map reuse holds at least as many partial sums") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Count> dim(3, 50), n(1, 64);
  for (int trial = 0; trial < 300; ++trial) {
    const auto l = conv_layer(n(rng), 3, dim(rng), dim(rng), n(rng));
    const Count c_sa = std::uniform_int_distribution<Count>(1, l.n_f)(rng);
    const auto fm = point_for(l, 1, c_sa, 2, TraversalOrder::FeatureMapReuse);
    const auto fr = point_for(l, 1, c_sa, 2, TraversalOrder::FilterReuse);
    CHECK(mem_partial_sums(fm, l) >= mem_partial_sums(fr, l));
  }
}

TEST_CASE("property: IFM words strictly increase in each factor") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<Count> v(1, 100);
  for (int trial = 0; trial < 300; ++trial) {
    auto l = conv_layer(4, 1, 0, v(rng), 4);
    l.r = 200;
    const Count r_t = v(rng), ch_sa = v(rng);
    const Words base = mem_ifm(point_for(l, r_t, 2, ch_sa), l);
    CHECK(mem_ifm(point_for(l, r_t + 1, 2, ch_sa), l) > base);
    CHECK(mem_ifm(point_for(l, r_t, 2, ch_sa + 1), l) > base);
    auto wider = l;
    ++wider.c;
    CHECK(mem_ifm(point_for(wider, r_t, 2, ch_sa), wider) > base);
  }
}
