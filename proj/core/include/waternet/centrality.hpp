#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waternet/graph.hpp"

namespace waternet {

enum class Measure { degree, closeness, betweenness, katz, eigenvector, subgraph, total_communicability };

/// Short CLI names: degree, cl, bc, katz, ec, sub, tc.
std::string_view measure_name(Measure m);
/// Accepts the short names and the long enum spellings. Throws ConfigError.
Measure parse_measure(std::string_view name);

struct CentralityParams {
  std::optional<double> alpha;
  std::optional<double> beta;
  bool normalized_by_edges = false;
  /// Eigenvector centrality only: set when the graph was disconnected and the
  /// scores were computed component by component.
  bool per_component = false;

  friend bool operator==(const CentralityParams&, const CentralityParams&) = default;
};

struct CentralityVector {
  Measure measure = Measure::degree;
  std::vector<double> scores;
  CentralityParams params;
  /// m of the graph the scores came from; used by per-edge normalisation.
  std::size_t edge_count = 0;

  std::size_t size() const noexcept { return scores.size(); }
};

/// Divides every score by m (explicit output option, never applied implicitly).
/// Throws ParameterError when the graph has no edges or the vector is
/// already normalised.
CentralityVector normalize_by_edges(CentralityVector v);

CentralityVector degree_centrality(const MolecularGraph& g);

}  // namespace waternet
