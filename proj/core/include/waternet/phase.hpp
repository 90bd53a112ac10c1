#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "waternet/centrality.hpp"
#include "waternet/graph.hpp"

namespace waternet {

enum class HistogramMode { raw, per_edge };

std::string_view histogram_mode_name(HistogramMode m);

struct Histogram {
  std::vector<double> edges;  ///< bins + 1 uniform, strictly increasing
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  HistogramMode mode = HistogramMode::raw;
  std::optional<Measure> measure;
  CentralityParams params;

  std::size_t bins() const noexcept { return counts.size(); }
  double lo() const { return edges.front(); }
  double hi() const { return edges.back(); }
  double width() const { return (hi() - lo()) / static_cast<double>(bins()); }
};

/// Uniform bins over [lo, hi]; values outside are an error. A degenerate
/// range (lo == hi) is widened by 0.5 on either side.
Histogram make_histogram(std::span<const double> values, std::size_t bins, double lo, double hi);

/// Uniform bins over the pooled min-max of all scores. In per_edge mode each
/// vector is divided by its own edge count first. Throws ParameterError on an
/// empty list, mixed measures or parameters, or bins == 0.
Histogram pool_distribution(std::span<const CentralityVector> vectors, std::size_t bins = 200,
                            HistogramMode mode = HistogramMode::raw);

std::string histogram_to_json(const Histogram& h);
/// Throws ParseError on malformed input.
Histogram histogram_from_json(std::string_view text);

struct CrossingOptions {
  /// Moving-average window over bins; odd values keep it centred.
  std::size_t smoothing_window = 5;
};

/// Equal-density point of two distributions, searched strictly between their
/// modes. Histograms on different grids are re-binned onto a common one.
/// Throws CrossingError when the densities do not cross there.
double crossing_point(const Histogram& low, const Histogram& high, const CrossingOptions& opts = {});

enum class PhaseLabel : std::uint8_t { LDL, HDL };

struct PhaseReport {
  double x_star = 0.0;
  std::vector<std::vector<PhaseLabel>> labels;  ///< per frame, per node
  std::uint64_t ldl_count = 0;
  std::uint64_t total = 0;
  double ldl_fraction = 0.0;
  std::optional<Measure> measure;
  CentralityParams params;
};

/// LDL iff score <= x_star; fraction pooled over all nodes of all frames.
PhaseReport classify(std::span<const CentralityVector> vectors, double x_star);

struct PatchThreshold {
  enum class Kind { mean, value };
  Kind kind = Kind::mean;
  double value = 0.0;

  static PatchThreshold mean() { return {}; }
  static PatchThreshold at(double x) { return {Kind::value, x}; }
};

struct Patch {
  std::vector<NodeId> nodes;  ///< ascending
  std::size_t size = 0;
  double internal_density = 0.0;
  double external_density = 0.0;
  double mean_score = 0.0;
};

struct PatchResult {
  double threshold = 0.0;
  std::vector<Patch> patches;     ///< size descending
  std::vector<NodeId> singletons;  ///< above threshold but isolated from the rest
};

/// Connected components (size >= 2) of the subgraph induced by nodes whose
/// score is strictly above the threshold.
PatchResult patches(const MolecularGraph& g, std::span<const double> scores,
                    PatchThreshold threshold = PatchThreshold::mean());

}  // namespace waternet
