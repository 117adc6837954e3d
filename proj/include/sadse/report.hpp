#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sadse/dse_engine.hpp"
#include "sadse/json.hpp"

namespace sadse {

// One CSV line per evaluated point.
struct ReportRow {
  int id = 0;
  TraversalOrder traversal = TraversalOrder::FeatureMapReuse;
  int p = 0;
  int q = 0;
  int r = 0;
  Count r_t_first = 0;
  Count c_sa = 0;
  Count ch_sa = 0;
  Count r_sa = 0;
  Count n_dsp = 0;
  Words mu_words = 0;
  Words worst_layer_m_t_words = 0;
  std::optional<Cycles> t_total_cycles;
  bool feasible = false;
  std::optional<int> rank;
};

ReportRow make_row(const EvaluatedPoint& e);

// All emitters use LF line endings and integer-only numeric fields.
std::string report_csv(const ExplorationReport& rep);
std::string plot_csv(const ExplorationReport& rep);
std::string layers_csv(const EvaluatedPoint& e);

Json report_to_json(const ExplorationReport& rep);
ExplorationReport report_from_json(const Json& doc);
std::string serialize_report(const ExplorationReport& rep);
ExplorationReport load_report(const std::filesystem::path& path);

}  // namespace sadse
