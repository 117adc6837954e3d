#pragma once

#include <optional>
#include <vector>

#include "sadse/designspace.hpp"
#include "sadse/netmodel.hpp"
#include "sadse/perf_model.hpp"
#include "sadse/resource_model.hpp"

namespace sadse {

struct EvaluatedPoint {
  DesignPoint point;
  ResourceEstimate resources;
  std::optional<PerfEstimate> perf;        // feasible points, or all with perf_all
  std::optional<int> rank;                 // global, feasible points only
  std::optional<int> rank_in_traversal;    // within point.traversal

  bool feasible() const { return resources.feasible; }

  bool operator==(const EvaluatedPoint&) const = default;
};

// Why infeasible points failed. memory_by_layer[l-1] counts memory failures
// whose binding (minimum-margin) layer is l.
struct ConstraintHistogram {
  Count dsp_only = 0;
  Count memory_only = 0;
  Count dsp_and_memory = 0;
  std::vector<Count> memory_by_layer;

  bool operator==(const ConstraintHistogram&) const = default;
};

struct TraversalBest {
  TraversalOrder traversal = TraversalOrder::FeatureMapReuse;
  std::optional<int> best_id;

  bool operator==(const TraversalBest&) const = default;
};

struct ExplorationReport {
  NetworkModel network;
  HardwareBudget budget;
  ExplorationParams params;
  bool perf_all = false;

  std::vector<EvaluatedPoint> points;     // enumeration order
  std::vector<int> feasible_ids;          // the feasible set, ascending id
  std::vector<TraversalBest> best_per_traversal;
  std::optional<int> global_best;
  std::vector<int> pareto_ids;
  ConstraintHistogram failures;

  const EvaluatedPoint* find(int id) const;

  bool operator==(const ExplorationReport&) const = default;
};

struct ExploreOptions {
  bool perf_all = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

ExplorationReport explore(const NetworkModel& net, const HardwareBudget& budget,
                          const ExplorationParams& params,
                          const ExploreOptions& options = {});

// Ascending t_total, then n_dsp, worst-layer m_t, id. Points must carry perf.
std::vector<EvaluatedPoint> rank(std::vector<EvaluatedPoint> points);

// Non-dominated subset under (t_total, n_dsp, worst-layer m_t), all minimised.
// Input order is preserved.
std::vector<EvaluatedPoint> pareto(const std::vector<EvaluatedPoint>& points);

}  // namespace sadse
