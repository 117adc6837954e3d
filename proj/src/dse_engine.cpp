#include "sadse/dse_engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

namespace sadse {

const EvaluatedPoint* ExplorationReport::find(int id) const {
  auto it = std::find_if(points.begin(), points.end(),
                         [id](const auto& e) { return e.point.id == id; });
  return it == points.end() ? nullptr : &*it;
}

namespace {

auto rank_key(const EvaluatedPoint& e) {
  return std::make_tuple(e.perf->t_total, e.resources.n_dsp,
                         e.resources.worst_layer_m_t, e.point.id);
}

bool dominates(const EvaluatedPoint& a, const EvaluatedPoint& b) {
  const Cycles ta = a.perf->t_total, tb = b.perf->t_total;
  const Count da = a.resources.n_dsp, db = b.resources.n_dsp;
  const Words ma = a.resources.worst_layer_m_t, mb = b.resources.worst_layer_m_t;
  const bool no_worse = ta <= tb && da <= db && ma <= mb;
  const bool better = ta < tb || da < db || ma < mb;
  return no_worse && better;
}

void evaluate_all(std::vector<EvaluatedPoint>& out, const NetworkModel& net,
                  const HardwareBudget& budget, const ExploreOptions& options) {
  unsigned workers = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1,
                                 static_cast<unsigned>(std::max<std::size_t>(
                                     out.size(), 1)));

  // Each slot is written by exactly one worker; order follows enumeration.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < out.size(); k = next++) {
      auto& e = out[k];
      e.resources = assess(e.point, net, budget);
      if (e.resources.feasible || options.perf_all) {
        e.perf = perf(e.point, net, budget);
      }
    }
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
}

}  // namespace

std::vector<EvaluatedPoint> rank(std::vector<EvaluatedPoint> points) {
  for (const auto& e : points) {
    if (!e.perf) {
      throw ConfigError("rank: design point " + std::to_string(e.point.id) +
                        " has no performance estimate");
    }
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return rank_key(a) < rank_key(b); });
  return points;
}

std::vector<EvaluatedPoint> pareto(const std::vector<EvaluatedPoint>& points) {
  std::vector<EvaluatedPoint> out;
  for (const auto& cand : points) {
    if (!cand.perf) {
      throw ConfigError("pareto: design point " + std::to_string(cand.point.id) +
                        " has no performance estimate");
    }
    const bool dominated = std::any_of(
        points.begin(), points.end(),
        [&](const auto& other) { return dominates(other, cand); });
    if (!dominated) out.push_back(cand);
  }
  return out;
}

ExplorationReport explore(const NetworkModel& net, const HardwareBudget& budget,
                          const ExplorationParams& params,
                          const ExploreOptions& options) {
  validate_network(net);
  budget.validate();

  ExplorationReport rep;
  rep.network = net;
  rep.budget = budget;
  rep.params = params;
  rep.perf_all = options.perf_all;

  for (auto& dp : enumerate(net, params)) {
    rep.points.push_back(EvaluatedPoint{std::move(dp), {}, {}, {}, {}});
  }
  evaluate_all(rep.points, net, budget, options);

  rep.failures.memory_by_layer.assign(net.layers.size(), 0);
  std::vector<EvaluatedPoint> feasible;
  for (const auto& e : rep.points) {
    const auto& r = e.resources;
    if (r.feasible) {
      rep.feasible_ids.push_back(e.point.id);
      feasible.push_back(e);
      continue;
    }
    if (!r.dsp_ok && !r.memory_ok) {
      ++rep.failures.dsp_and_memory;
    } else if (!r.dsp_ok) {
      ++rep.failures.dsp_only;
    } else {
      ++rep.failures.memory_only;
    }
    if (!r.memory_ok) ++rep.failures.memory_by_layer[r.worst_layer - 1];
  }

  const auto ordered = rank(feasible);
  auto slot = [&](int id) -> EvaluatedPoint& {
    // Ids are contiguous from 1 in enumeration order.
    return rep.points[static_cast<std::size_t>(id - 1)];
  };
  int global = 1;
  for (const auto& e : ordered) slot(e.point.id).rank = global++;
  if (!ordered.empty()) rep.global_best = ordered.front().point.id;

  std::vector<TraversalOrder> orders;
  for (const auto& e : rep.points) {
    if (std::find(orders.begin(), orders.end(), e.point.traversal) == orders.end()) {
      orders.push_back(e.point.traversal);
    }
  }
  for (auto order : orders) {
    TraversalBest tb{order, std::nullopt};
    int local = 1;
    for (const auto& e : ordered) {
      if (e.point.traversal != order) continue;
      if (!tb.best_id) tb.best_id = e.point.id;
      slot(e.point.id).rank_in_traversal = local++;
    }
    rep.best_per_traversal.push_back(tb);
  }

  for (const auto& e : pareto(feasible)) rep.pareto_ids.push_back(e.point.id);
  return rep;
}

}  // namespace sadse
