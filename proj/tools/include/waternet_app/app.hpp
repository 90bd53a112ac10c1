#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waternet/centrality.hpp"
#include "waternet/graph.hpp"
#include "waternet/netbuild.hpp"
#include "waternet/phase.hpp"
#include "waternet/walkers.hpp"

namespace waternet::app {

enum class InputFormat {
  automatic,  ///< by extension: .gro, .json, anything else is an edge list
  gro,
  json,
  edgelist,
};

InputFormat parse_input_format(std::string_view name);

enum class ExitCode : int { ok = 0, partial = 1, config = 2 };

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  InputFormat format = InputFormat::automatic;
  std::string species = "OW";
  CutoffConfig cutoff{};
  std::vector<Measure> measures{Measure::total_communicability};
  KatzPolicy alpha = KatzPolicy::automatic_with(1.1);
  double beta = 1.0;
  std::size_t bins = 200;
  bool normalize_by_edges = false;
  PatchThreshold threshold = PatchThreshold::mean();
  /// Table commands print to the output stream when this is empty.
  std::optional<std::filesystem::path> out;
  std::size_t threads = 1;

  /// Throws ConfigError on an unusable combination of values.
  void validate() const;
};

/// One graph to analyse, with the id used in every output row.
struct Source {
  std::string id;
  MolecularGraph graph;
};

struct LoadResult {
  std::vector<Source> sources;
  std::vector<std::string> errors;  ///< "<file>: <message>", in file order
};

/// "u v" per line; '#' starts a comment; "nodes N" fixes the order so that
/// isolated trailing nodes survive. Throws ParseError.
MolecularGraph parse_edge_list(std::string_view text);

/// Expands directories (regular files, sorted by name), reads and parses every
/// file and builds its graphs. Unreadable or malformed files are reported in
/// `errors` and skipped. Throws ConfigError when nothing could be listed.
LoadResult load_sources(const RunConfig& config);

/// Computes one measure with the resolved alpha (ignored unless katz).
CentralityVector compute_measure(const MolecularGraph& g, Measure m, double alpha, double beta);

/// %.12g, the precision used for every floating column.
std::string format_number(double x);

struct MeasureTiming {
  Measure measure = Measure::total_communicability;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct TimingReport {
  std::vector<MeasureTiming> measures;  ///< request order
  std::size_t frames = 0;
  double mean_order = 0.0;
  double mean_edges = 0.0;
};

/// Wall time of each measure on each source, single threaded.
TimingReport time_measures(const RunConfig& config, const std::vector<Source>& sources);

/// Subcommands. Each returns the process exit code and reports per-frame
/// failures on `err`; ConfigError and ParameterError escape for main to map.
int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_centrality(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, const std::filesystem::path& low_ref,
                 const std::filesystem::path& high_ref, std::ostream& out, std::ostream& err);
int cmd_patches(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace waternet::app
