#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "waternet/centrality.hpp"
#include "waternet/graph.hpp"

namespace waternet {

struct PathOptions {
  std::size_t threads = 1;
};

/// Closeness with the Wasserman-Faust correction for disconnected graphs:
/// (N' - 1)^2 / (s(v) (N - 1)) with N' the size of v's component and s(v)
/// its farness inside it. Isolated nodes score 0.
CentralityVector closeness(const MolecularGraph& g, const PathOptions& opts = {});

/// Brandes betweenness over unordered pairs, endpoints excluded.
CentralityVector betweenness(const MolecularGraph& g, const PathOptions& opts = {});

struct DistanceSummary {
  std::size_t n = 0;
  /// Row-major hop counts, -1 for unreachable. Empty unless requested.
  std::vector<std::int32_t> hops;
  /// Sum of finite distances from each node.
  std::vector<std::uint64_t> farness;
  /// Mean over connected ordered pairs; absent when no two nodes are connected.
  std::optional<double> aspl;
  std::uint32_t diameter = 0;
  std::uint64_t connected_pairs = 0;

  /// nullopt when unreachable. Requires the matrix to have been stored.
  std::optional<std::uint32_t> distance(NodeId a, NodeId b) const;
};

DistanceSummary distance_summary(const MolecularGraph& g, bool store_distances = true,
                                 const PathOptions& opts = {});

}  // namespace waternet
