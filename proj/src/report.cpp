#include "sadse/report.hpp"

#include <sstream>

#include "json_util.hpp"

namespace sadse {

namespace {

constexpr const char* kFormat = "sadse-report/1";

template <typename T>
Json opt_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

template <typename T>
std::string opt_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

const char* bool_cell(bool b) { return b ? "1" : "0"; }

TraversalOrder traversal_from_json(const Json& j) {
  auto t = traversal_from_string(j.get<std::string>());
  if (!t) throw ConfigError("report: unknown traversal '" + j.get<std::string>() + "'");
  return *t;
}

Json layer_resource_to_json(const LayerResource& r) {
  return Json{{"m_fm", r.m_fm},     {"m_ps", r.m_ps}, {"m_pool", r.m_pool},
              {"m_wsa", r.m_wsa},   {"m_t", r.m_t},   {"m_delta", r.m_delta}};
}

LayerResource layer_resource_from_json(const Json& j) {
  return {j.at("m_fm").get<Words>(),  j.at("m_ps").get<Words>(),
          j.at("m_pool").get<Words>(), j.at("m_wsa").get<Words>(),
          j.at("m_t").get<Words>(),    j.at("m_delta").get<Words>()};
}

Json layer_perf_to_json(const LayerPerf& p) {
  return Json{{"t_fm", p.t_fm}, {"t_w", p.t_w},     {"t_sp", p.t_sp},
              {"t_sa", p.t_sa}, {"t_out", p.t_out}, {"t_layer", p.t_layer}};
}

LayerPerf layer_perf_from_json(const Json& j) {
  return {j.at("t_fm").get<Cycles>(), j.at("t_w").get<Cycles>(),
          j.at("t_sp").get<Cycles>(), j.at("t_sa").get<Cycles>(),
          j.at("t_out").get<Cycles>(), j.at("t_layer").get<Cycles>()};
}

Json point_to_json(const EvaluatedPoint& e) {
  const auto& dp = e.point;
  const auto& res = e.resources;
  Json res_layers = Json::array();
  for (const auto& l : res.per_layer) res_layers.push_back(layer_resource_to_json(l));

  Json perf_json = nullptr;
  if (e.perf) {
    Json layers = Json::array();
    for (const auto& l : e.perf->per_layer) layers.push_back(layer_perf_to_json(l));
    perf_json = Json{{"t_total", e.perf->t_total}, {"layers", std::move(layers)}};
  }

  return Json{{"id", dp.id},
              {"traversal", to_string(dp.traversal)},
              {"p", dp.tile.p},
              {"q", dp.q},
              {"r", dp.r},
              {"tile_rows", dp.tile.rows},
              {"tile_cols", dp.tile.cols},
              {"c_sa", dp.c_sa},
              {"ch_sa", dp.ch_sa},
              {"r_sa", dp.r_sa},
              {"resources",
               {{"n_dsp", res.n_dsp},
                {"mu", res.mu},
                {"dsp_ok", res.dsp_ok},
                {"memory_ok", res.memory_ok},
                {"feasible", res.feasible},
                {"worst_layer", res.worst_layer},
                {"worst_layer_m_t", res.worst_layer_m_t},
                {"layers", std::move(res_layers)}}},
              {"perf", std::move(perf_json)},
              {"rank", opt_to_json(e.rank)},
              {"rank_in_traversal", opt_to_json(e.rank_in_traversal)}};
}

EvaluatedPoint point_from_json(const Json& j) {
  EvaluatedPoint e;
  auto& dp = e.point;
  dp.id = j.at("id").get<int>();
  dp.traversal = traversal_from_json(j.at("traversal"));
  dp.tile.p = j.at("p").get<int>();
  dp.q = j.at("q").get<int>();
  dp.r = j.at("r").get<int>();
  dp.tile.rows = j.at("tile_rows").get<std::vector<Count>>();
  dp.tile.cols = j.at("tile_cols").get<std::vector<Count>>();
  dp.c_sa = j.at("c_sa").get<Count>();
  dp.ch_sa = j.at("ch_sa").get<Count>();
  dp.r_sa = j.at("r_sa").get<Count>();

  const auto& rj = j.at("resources");
  auto& res = e.resources;
  res.n_dsp = rj.at("n_dsp").get<Count>();
  res.mu = rj.at("mu").get<Words>();
  res.dsp_ok = rj.at("dsp_ok").get<bool>();
  res.memory_ok = rj.at("memory_ok").get<bool>();
  res.feasible = rj.at("feasible").get<bool>();
  res.worst_layer = rj.at("worst_layer").get<int>();
  res.worst_layer_m_t = rj.at("worst_layer_m_t").get<Words>();
  for (const auto& l : rj.at("layers")) {
    res.per_layer.push_back(layer_resource_from_json(l));
  }

  const auto& pj = j.at("perf");
  if (!pj.is_null()) {
    PerfEstimate pe;
    pe.t_total = pj.at("t_total").get<Cycles>();
    for (const auto& l : pj.at("layers")) pe.per_layer.push_back(layer_perf_from_json(l));
    e.perf = std::move(pe);
  }
  e.rank = opt_from_json<int>(j.at("rank"));
  e.rank_in_traversal = opt_from_json<int>(j.at("rank_in_traversal"));
  return e;
}

}  // namespace

ReportRow make_row(const EvaluatedPoint& e) {
  ReportRow row;
  row.id = e.point.id;
  row.traversal = e.point.traversal;
  row.p = e.point.tile.p;
  row.q = e.point.q;
  row.r = e.point.r;
  row.r_t_first = e.point.tile.rows.empty() ? 0 : e.point.tile.rows.front();
  row.c_sa = e.point.c_sa;
  row.ch_sa = e.point.ch_sa;
  row.r_sa = e.point.r_sa;
  row.n_dsp = e.resources.n_dsp;
  row.mu_words = e.resources.mu;
  row.worst_layer_m_t_words = e.resources.worst_layer_m_t;
  if (e.perf) row.t_total_cycles = e.perf->t_total;
  row.feasible = e.resources.feasible;
  row.rank = e.rank;
  return row;
}

std::string report_csv(const ExplorationReport& rep) {
  std::ostringstream out;
  out << "# word_bits=" << rep.budget.word_bits
      << " capacity_words=" << rep.budget.capacity_words() << "\n";
  out << "id,traversal,p,q,r,r_t,c_sa,ch_sa,r_sa,n_dsp,mu_words,"
         "worst_layer_m_t_words,t_total_cycles,feasible,rank\n";
  for (const auto& e : rep.points) {
    const auto row = make_row(e);
    out << row.id << ',' << to_string(row.traversal) << ',' << row.p << ','
        << row.q << ',' << row.r << ',' << row.r_t_first << ',' << row.c_sa << ','
        << row.ch_sa << ',' << row.r_sa << ',' << row.n_dsp << ','
        << row.mu_words << ',' << row.worst_layer_m_t_words << ','
        << opt_cell(row.t_total_cycles) << ',' << bool_cell(row.feasible) << ','
        << opt_cell(row.rank) << '\n';
  }
  return out.str();
}

std::string plot_csv(const ExplorationReport& rep) {
  std::ostringstream out;
  out << "# word_bits=" << rep.budget.word_bits
      << " n_dsp_cutoff=" << rep.budget.n_dsp_avail
      << " capacity_words=" << rep.budget.capacity_words() << "\n";
  out << "id,traversal,r_t,n_dsp,worst_layer_m_t_words,t_total_cycles,feasible\n";
  for (const auto& e : rep.points) {
    out << e.point.id << ',' << to_string(e.point.traversal) << ','
        << (e.point.tile.rows.empty() ? 0 : e.point.tile.rows.front()) << ','
        << e.resources.n_dsp << ',' << e.resources.worst_layer_m_t << ','
        << (e.perf ? std::to_string(e.perf->t_total) : std::string()) << ','
        << bool_cell(e.resources.feasible) << '\n';
  }
  return out.str();
}

std::string layers_csv(const EvaluatedPoint& e) {
  std::ostringstream out;
  out << "layer,m_fm,m_ps,m_pool,m_wsa,m_t,m_delta\n";
  int l = 1;
  for (const auto& r : e.resources.per_layer) {
    out << l++ << ',' << r.m_fm << ',' << r.m_ps << ',' << r.m_pool << ','
        << r.m_wsa << ',' << r.m_t << ',' << r.m_delta << '\n';
  }
  return out.str();
}

Json report_to_json(const ExplorationReport& rep) {
  Json traversals = Json::array();
  for (auto t : rep.params.traversals) traversals.push_back(to_string(t));

  Json points = Json::array();
  for (const auto& e : rep.points) points.push_back(point_to_json(e));

  Json best = Json::array();
  for (const auto& b : rep.best_per_traversal) {
    best.push_back({{"traversal", to_string(b.traversal)},
                    {"best_id", opt_to_json(b.best_id)}});
  }

  return Json{
      {"format", kFormat},
      {"network", network_to_json(rep.network)},
      {"budget", budget_to_json(rep.budget)},
      {"capacity_words", rep.budget.capacity_words()},
      {"params",
       {{"F", rep.params.F},
        {"P", rep.params.P},
        {"Q", rep.params.Q},
        {"R", rep.params.R},
        {"traversals", std::move(traversals)},
        {"gen_rule", to_string(rep.params.rule)},
        {"perf_all", rep.perf_all}}},
      {"points", std::move(points)},
      {"feasible_ids", rep.feasible_ids},
      {"best_per_traversal", std::move(best)},
      {"global_best", opt_to_json(rep.global_best)},
      {"pareto_ids", rep.pareto_ids},
      {"failures",
       {{"dsp_only", rep.failures.dsp_only},
        {"memory_only", rep.failures.memory_only},
        {"dsp_and_memory", rep.failures.dsp_and_memory},
        {"memory_by_layer", rep.failures.memory_by_layer}}}};
}

ExplorationReport report_from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      throw ConfigError("report: unsupported format tag");
    }
    ExplorationReport rep;
    rep.network = network_from_json(doc.at("network"));
    rep.budget = budget_from_json(doc.at("budget"));

    const auto& pj = doc.at("params");
    rep.params.F = pj.at("F").get<Count>();
    rep.params.P = pj.at("P").get<int>();
    rep.params.Q = pj.at("Q").get<int>();
    rep.params.R = pj.at("R").get<int>();
    rep.params.traversals.clear();
    for (const auto& t : pj.at("traversals")) {
      rep.params.traversals.push_back(traversal_from_json(t));
    }
    auto rule = gen_rule_from_string(pj.at("gen_rule").get<std::string>());
    if (!rule) throw ConfigError("report: unknown gen_rule");
    rep.params.rule = *rule;
    rep.perf_all = pj.at("perf_all").get<bool>();

    for (const auto& p : doc.at("points")) rep.points.push_back(point_from_json(p));
    rep.feasible_ids = doc.at("feasible_ids").get<std::vector<int>>();
    for (const auto& b : doc.at("best_per_traversal")) {
      rep.best_per_traversal.push_back(
          {traversal_from_json(b.at("traversal")), opt_from_json<int>(b.at("best_id"))});
    }
    rep.global_best = opt_from_json<int>(doc.at("global_best"));
    rep.pareto_ids = doc.at("pareto_ids").get<std::vector<int>>();

    const auto& fj = doc.at("failures");
    rep.failures.dsp_only = fj.at("dsp_only").get<Count>();
    rep.failures.memory_only = fj.at("memory_only").get<Count>();
    rep.failures.dsp_and_memory = fj.at("dsp_and_memory").get<Count>();
    rep.failures.memory_by_layer = fj.at("memory_by_layer").get<std::vector<Count>>();
    return rep;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

std::string serialize_report(const ExplorationReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

ExplorationReport load_report(const std::filesystem::path& path) {
  return report_from_json(
      detail::parse_json(detail::read_text_file(path), "report"));
}

}  // namespace sadse
