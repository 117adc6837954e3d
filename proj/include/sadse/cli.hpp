#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace sadse::cli {

struct ExploreArgs {
  std::string network;
  std::string fpga;
  long long F = 4;
  int P = 6;
  int Q = 4;
  int R = 4;
  std::string traversal = "both";   // featuremap | filter | both
  std::string gen_rule = "paper-results";
  bool perf_all = false;
  std::string out = "sadse_report";
  unsigned threads = 0;
};

struct SimulateArgs {
  std::string layer;                 // network file holding the layer
  int layer_index = 1;
  std::optional<long long> r_t;
  std::optional<long long> c_sa;
  std::optional<long long> ch_sa;
  std::string traversal = "featuremap";
  std::optional<std::string> report;  // --point-id source
  std::optional<int> point_id;
  unsigned long long seed = 1;
  long long lo = -8;
  long long hi = 8;
  bool check = false;
  std::optional<std::string> trace;
  bool corrupt_weights = false;
};

struct LayersArgs {
  std::string network;
  std::string fpga;
  long long F = 4;
  int P = 6;
  int Q = 4;
  int R = 4;
  std::string traversal = "both";
  std::string gen_rule = "paper-results";
  std::optional<int> point_id;       // default: global best feasible point
  std::optional<std::string> out;    // default: stdout
};

int cmd_explore(const ExploreArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_layers(const LayersArgs& args, std::ostream& out, std::ostream& err);

// Full command-line entry point: `sadse {explore|simulate|layers} ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sadse::cli
