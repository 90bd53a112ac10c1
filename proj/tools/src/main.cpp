#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "waternet/error.hpp"
#include "waternet_app/app.hpp"

namespace {

using namespace waternet;
using namespace waternet::app;

struct Flags {
  std::vector<std::string> inputs;
  std::string format = "auto";
  std::string species = "OW";
  double cutoff = 0.35;
  std::string strategy = "auto";
  std::string measures = "tc";
  double beta = 1.0;
  std::string alpha = "auto";
  double gamma = 1.1;
  std::size_t bins = 200;
  bool normalize = false;
  std::string threshold_mode = "mean";
  double threshold = 0.0;
  std::string out;
  std::size_t threads = 1;
  std::string low_ref;
  std::string high_ref;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-i,--input", f.inputs, "Frame files or directories (sorted by name)")->required();
  cmd->add_option("--format", f.format, "gro, json, edgelist or auto (by extension)")->capture_default_str();
  cmd->add_option("--species", f.species, "Particle label kept as graph nodes")->capture_default_str();
  cmd->add_option("--cutoff", f.cutoff, "Neighbour cutoff in nm")->capture_default_str();
  cmd->add_option("--neighbor-strategy", f.strategy, "auto, all_pairs or cell_list")->capture_default_str();
  cmd->add_option("-o,--out", f.out, "Output directory");
  cmd->add_option("--threads", f.threads, "Frame-level workers, 0 = all cores")->capture_default_str();
}

void add_measure_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--measures", f.measures, "Comma separated: degree,cl,bc,katz,ec,sub,tc")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Inverse temperature for sub and tc")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Katz alpha, or auto = 1/(gamma max rho)")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Safety factor for automatic alpha")->capture_default_str();
  cmd->add_flag("--normalize-by-edges", f.normalize, "Divide scores by the frame's edge count");
}

std::vector<Measure> split_measures(const std::string& list) {
  std::vector<Measure> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_measure(item));
  }
  return out;
}

RunConfig to_config(const Flags& f) {
  RunConfig c;
  for (const auto& p : f.inputs) c.inputs.emplace_back(p);
  c.format = parse_input_format(f.format);
  c.species = f.species;
  c.cutoff.r_cut = f.cutoff;
  c.cutoff.strategy = parse_neighbor_strategy(f.strategy);
  c.measures = split_measures(f.measures);
  c.beta = f.beta;
  if (f.alpha == "auto") {
    c.alpha = KatzPolicy::automatic_with(f.gamma);
  } else {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(f.alpha, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.alpha.size()) throw ConfigError("--alpha must be 'auto' or a number, got '" + f.alpha + "'");
    c.alpha = KatzPolicy::fixed(a);
  }
  c.bins = f.bins;
  c.normalize_by_edges = f.normalize;
  if (f.threshold_mode == "mean") {
    c.threshold = PatchThreshold::mean();
  } else if (f.threshold_mode == "value") {
    c.threshold = PatchThreshold::at(f.threshold);
  } else {
    throw ConfigError("--threshold-mode must be mean or value");
  }
  if (!f.out.empty()) c.out = f.out;
  c.threads = f.threads;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hydrogen-bond network analysis of water trajectories"};
  app.require_subcommand(1);
  Flags f;

  auto* build = app.add_subcommand("build", "Per-frame graph size, density and beta index");
  add_common(build, f);

  auto* centrality = app.add_subcommand("centrality", "Per-node scores and pooled histograms");
  add_common(centrality, f);
  add_measure_flags(centrality, f);
  centrality->add_option("--bins", f.bins, "Histogram bins")->capture_default_str();

  auto* metrics = app.add_subcommand("metrics", "Global metrics table with a mean row");
  add_common(metrics, f);

  auto* classify = app.add_subcommand("classify", "LDL/HDL labels from two reference histograms");
  add_common(classify, f);
  add_measure_flags(classify, f);
  classify->add_option("--low-ref", f.low_ref, "Histogram JSON of the low-temperature reference")->required();
  classify->add_option("--high-ref", f.high_ref, "Histogram JSON of the high-temperature reference")->required();

  auto* patch = app.add_subcommand("patches", "Connected high-score patches");
  add_common(patch, f);
  add_measure_flags(patch, f);
  patch->add_option("--threshold-mode", f.threshold_mode, "mean or value")->capture_default_str();
  patch->add_option("--threshold", f.threshold, "Threshold for --threshold-mode value");

  auto* bench = app.add_subcommand("bench", "Wall time per measure and frame");
  add_common(bench, f);
  add_measure_flags(bench, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::config);
  }

  try {
    const auto config = to_config(f);
    if (build->parsed()) return cmd_build(config, std::cout, std::cerr);
    if (centrality->parsed()) return cmd_centrality(config, std::cout, std::cerr);
    if (metrics->parsed()) return cmd_metrics(config, std::cout, std::cerr);
    if (classify->parsed()) return cmd_classify(config, f.low_ref, f.high_ref, std::cout, std::cerr);
    if (patch->parsed()) return cmd_patches(config, std::cout, std::cerr);
    if (bench->parsed()) return cmd_bench(config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::config);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::config);
  } catch (const CrossingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::partial);
  }
  return static_cast<int>(ExitCode::config);
}
