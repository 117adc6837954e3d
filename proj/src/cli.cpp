#include "sadse/cli.hpp"

#include <fstream>
#include <numeric>
#include <ostream>

#include <CLI11.hpp>

#include "sadse/dataflow_sim.hpp"
#include "sadse/dse_engine.hpp"
#include "sadse/perf_model.hpp"
#include "sadse/report.hpp"

namespace sadse::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ConfigError("write failed for '" + path + "'");
}

std::vector<TraversalOrder> parse_traversals(const std::string& s) {
  if (s == "both") {
    return {TraversalOrder::FeatureMapReuse, TraversalOrder::FilterReuse};
  }
  if (auto t = traversal_from_string(s)) return {*t};
  throw ConfigError("unknown traversal '" + s + "' (featuremap|filter|both)");
}

ExplorationParams make_params(long long F, int P, int Q, int R,
                              const std::string& traversal,
                              const std::string& gen_rule) {
  ExplorationParams params;
  params.F = F;
  params.P = P;
  params.Q = Q;
  params.R = R;
  params.traversals = parse_traversals(traversal);
  auto rule = gen_rule_from_string(gen_rule);
  if (!rule) {
    throw ConfigError("unknown generator rule '" + gen_rule +
                      "' (paper-results|paper-equations)");
  }
  params.rule = *rule;
  params.validate();
  return params;
}

NetworkModel load_network_warn(const std::string& path, std::ostream& err) {
  auto net = load_network(path);
  for (const auto& w : consistency_warnings(net)) err << "warning: " << w << "\n";
  return net;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace

int cmd_explore(const ExploreArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto net = load_network_warn(args.network, err);
    const auto budget = load_budget(args.fpga);
    const auto params = make_params(args.F, args.P, args.Q, args.R,
                                    args.traversal, args.gen_rule);
    const auto rep = explore(net, budget, params, {args.perf_all, args.threads});

    write_file(args.out + ".csv", report_csv(rep));
    write_file(args.out + ".json", serialize_report(rep));
    write_file(args.out + ".plot.csv", plot_csv(rep));

    out << "network: " << net.name << " (" << net.layers.size() << " layers)\n"
        << "points: " << rep.points.size() << ", feasible: "
        << rep.feasible_ids.size() << "\n";
    for (const auto& b : rep.best_per_traversal) {
      out << "best " << to_string(b.traversal) << ": ";
      if (const auto* e = b.best_id ? rep.find(*b.best_id) : nullptr) {
        out << "id " << e->point.id << " r_t=" << e->point.tile.rows.front()
            << " c_sa=" << e->point.c_sa << " r_sa=" << e->point.r_sa
            << " ch_sa=" << e->point.ch_sa << " t_total=" << e->perf->t_total
            << "\n";
      } else {
        out << "none\n";
      }
    }
    if (rep.feasible_ids.empty()) {
      const auto& f = rep.failures;
      out << "no feasible point; failures: dsp_only=" << f.dsp_only
          << " memory_only=" << f.memory_only
          << " dsp_and_memory=" << f.dsp_and_memory << " memory_by_layer=[";
      for (std::size_t k = 0; k < f.memory_by_layer.size(); ++k) {
        out << (k ? "," : "") << f.memory_by_layer[k];
      }
      out << "]\n";
    }
    out << "wrote " << args.out << ".csv, " << args.out << ".json, " << args.out
        << ".plot.csv\n";
    return 0;
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<ExplorationReport> rep;
    if (args.point_id) {
      if (!args.report) throw ConfigError("--point-id requires --report");
      rep = load_report(*args.report);
    }
    NetworkModel net;
    if (!args.layer.empty()) {
      net = load_network_warn(args.layer, err);
    } else if (rep) {
      net = rep->network;
    } else {
      throw ConfigError("--layer is required");
    }
    if (args.layer_index < 1 ||
        args.layer_index > static_cast<int>(net.layers.size())) {
      throw ConfigError("--layer-index out of range");
    }
    const auto& layer = net.layers[static_cast<std::size_t>(args.layer_index - 1)];

    DesignPoint dp;
    if (rep) {
      const auto* e = rep->find(*args.point_id);
      if (!e) throw ConfigError("unknown point id " + std::to_string(*args.point_id));
      dp = e->point;
    } else {
      if (!args.r_t || !args.c_sa || !args.ch_sa) {
        throw ConfigError("give --r-t, --c-sa and --ch-sa, or --report with --point-id");
      }
      auto t = traversal_from_string(args.traversal);
      if (!t) throw ConfigError("unknown traversal '" + args.traversal + "'");
      dp = make_point(net, *args.r_t, *args.c_sa, *args.ch_sa, *t);
    }

    std::mt19937_64 rng(args.seed);
    const auto ifm = random_ifm(layer, rng, args.lo, args.hi);
    const auto filters = random_filters(layer, rng, args.lo, args.hi);
    SimOptions opts;
    opts.trace = args.trace.has_value();
    opts.corrupt_weight_order = args.corrupt_weights;
    const auto sim = simulate_layer(layer, dp, ifm, filters, opts);

    if (args.trace) {
      std::string text;
      for (const auto& ev : sim.trace) text += format_trace_line(ev) + "\n";
      write_file(*args.trace, text);
    }

    HardwareBudget unit_w;
    unit_w.w_words_per_cycle = 1;
    const auto checksum =
        std::accumulate(sim.ofm.data.begin(), sim.ofm.data.end(), std::int64_t{0});
    out << "layer=" << layer.index << " traversal=" << to_string(dp.traversal)
        << " r_t=" << dp.tile_rows(layer) << " c_sa=" << dp.c_sa
        << " ch_sa=" << dp.ch_sa << "\n"
        << "ifm_words_fetched=" << sim.counts.ifm_words_fetched << "\n"
        << "weight_words_fetched=" << sim.counts.weight_words_fetched << "\n"
        << "ofm_words_written=" << sim.counts.ofm_words_written << "\n"
        << "macs_executed=" << sim.counts.macs_executed << "\n"
        << "model_t_fm_w1=" << cycles_ifm(dp, layer, unit_w) << "\n"
        << "model_t_w_w1=" << cycles_weights(dp, layer, unit_w) << "\n"
        << "model_t_out_w1=" << cycles_writeback(dp, layer, unit_w) << "\n"
        << "ofm_checksum=" << checksum << "\n";

    if (args.check) {
      const bool ok = reference_layer(layer, ifm, filters) == sim.ofm;
      out << "check=" << (ok ? "pass" : "fail") << "\n";
      return ok ? 0 : 1;
    }
    return 0;
  });
}

int cmd_layers(const LayersArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto net = load_network_warn(args.network, err);
    const auto budget = load_budget(args.fpga);
    const auto params = make_params(args.F, args.P, args.Q, args.R,
                                    args.traversal, args.gen_rule);
    const auto rep = explore(net, budget, params);

    const EvaluatedPoint* e = nullptr;
    if (args.point_id) {
      e = rep.find(*args.point_id);
      if (!e) throw ConfigError("unknown point id " + std::to_string(*args.point_id));
    } else {
      if (!rep.global_best) throw ConfigError("no feasible point to report; pass --point-id");
      e = rep.find(*rep.global_best);
    }
    const auto csv = layers_csv(*e);
    if (args.out) {
      write_file(*args.out, csv);
    } else {
      out << csv;
    }
    return 0;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Systolic-array accelerator design space exploration"};
  app.require_subcommand(1);

  ExploreArgs ex;
  auto* explore_cmd = app.add_subcommand("explore", "Enumerate, filter and rank design points");
  explore_cmd->add_option("--network", ex.network, "Network JSON")->required();
  explore_cmd->add_option("--fpga", ex.fpga, "Hardware budget JSON")->required();
  explore_cmd->add_option("--F", ex.F, "Tile-bound divisor");
  explore_cmd->add_option("--P", ex.P, "Tile configurations");
  explore_cmd->add_option("--Q", ex.Q, "SA column configurations");
  explore_cmd->add_option("--R", ex.R, "SA channel configurations");
  explore_cmd->add_option("--traversal", ex.traversal)
      ->check(CLI::IsMember({"featuremap", "filter", "both"}));
  explore_cmd->add_option("--gen-rule", ex.gen_rule)
      ->check(CLI::IsMember({"paper-results", "paper-equations"}));
  explore_cmd->add_flag("--perf-all", ex.perf_all, "Estimate cycles for infeasible points too");
  explore_cmd->add_option("--out", ex.out, "Output prefix");
  explore_cmd->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the functional dataflow simulator on one layer");
  sim_cmd->add_option("--layer", sim.layer, "Network JSON holding the layer");
  sim_cmd->add_option("--layer-index", sim.layer_index, "1-based layer to simulate");
  sim_cmd->add_option("--r-t", sim.r_t, "Tile rows");
  sim_cmd->add_option("--c-sa", sim.c_sa, "SA columns");
  sim_cmd->add_option("--ch-sa", sim.ch_sa, "Parallel channels");
  sim_cmd->add_option("--traversal", sim.traversal)
      ->check(CLI::IsMember({"featuremap", "filter"}));
  sim_cmd->add_option("--report", sim.report, "Report JSON from a prior explore run");
  sim_cmd->add_option("--point-id", sim.point_id, "Design point id within --report");
  sim_cmd->add_option("--seed", sim.seed, "Seed for random IFM and weights");
  sim_cmd->add_option("--min", sim.lo, "Smallest random value");
  sim_cmd->add_option("--max", sim.hi, "Largest random value");
  sim_cmd->add_flag("--check", sim.check, "Compare against the untiled reference");
  sim_cmd->add_option("--trace", sim.trace, "Write the fetch/write event log here");
  sim_cmd->add_flag("--corrupt-weights", sim.corrupt_weights)->group("");

  LayersArgs lay;
  auto* layers_cmd = app.add_subcommand("layers", "Per-layer memory table for one design point");
  layers_cmd->add_option("--network", lay.network, "Network JSON")->required();
  layers_cmd->add_option("--fpga", lay.fpga, "Hardware budget JSON")->required();
  layers_cmd->add_option("--F", lay.F);
  layers_cmd->add_option("--P", lay.P);
  layers_cmd->add_option("--Q", lay.Q);
  layers_cmd->add_option("--R", lay.R);
  layers_cmd->add_option("--traversal", lay.traversal)
      ->check(CLI::IsMember({"featuremap", "filter", "both"}));
  layers_cmd->add_option("--gen-rule", lay.gen_rule)
      ->check(CLI::IsMember({"paper-results", "paper-equations"}));
  layers_cmd->add_option("--point-id", lay.point_id, "Design point id (default: best)");
  layers_cmd->add_option("--out", lay.out, "CSV destination (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (explore_cmd->parsed()) return cmd_explore(ex, out, err);
  if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
  return cmd_layers(lay, out, err);
}

}  // namespace sadse::cli
