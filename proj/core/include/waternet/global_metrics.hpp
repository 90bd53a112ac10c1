#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waternet/graph.hpp"

namespace waternet {

struct CycleCounts {
  std::int64_t s3 = 0;
  std::int64_t s4 = 0;
  std::int64_t s5 = 0;
  friend bool operator==(const CycleCounts&, const CycleCounts&) = default;
};

struct FragmentCounts {
  std::int64_t p1 = 0;
  std::int64_t p2 = 0;
  std::int64_t p3 = 0;
  std::int64_t s13 = 0;  ///< star fragments with three leaves
  friend bool operator==(const FragmentCounts&, const FragmentCounts&) = default;
};

/// Triangles through each node, t_i = [A^3]_ii / 2.
std::vector<std::int64_t> triangles(const MolecularGraph& g);

/// Cycles of length 3, 4 and 5 from the closed-walk moments. Throws
/// InternalError if a division that must be exact is not.
CycleCounts cycle_counts(const MolecularGraph& g);

FragmentCounts fragment_counts(const MolecularGraph& g);

struct Clustering {
  double mean_local = 0.0;             ///< Watts-Strogatz C_bar
  std::optional<double> transitivity;  ///< 3 S3 / P2; absent when P2 = 0
  std::vector<double> local;           ///< C_i, 0 when k_i < 2
};

Clustering clustering(const MolecularGraph& g);

struct Assortativity {
  std::optional<double> value;
  /// Why value is absent ("regular graph" or "no edges").
  std::string reason;
};

/// Degree assortativity from path and star fragment counts. Evaluated in
/// exact integer arithmetic after clearing the P1 denominators.
Assortativity assortativity(const MolecularGraph& g);

struct GlobalMetrics {
  std::int64_t m = 0;
  CycleCounts cycles;
  FragmentCounts fragments;
  std::vector<std::int64_t> triangles;
  double mean_clustering = 0.0;
  std::optional<double> transitivity;
  Assortativity assortativity;
};

GlobalMetrics global_metrics(const MolecularGraph& g);

enum class ProfileScope {
  global,     ///< one maximum over every frame and length of every group
  per_group,  ///< each group normalised by its own maximum
};

/// Divides each cycle count by the maximum count across the comparison set,
/// then averages per length over the frames. All-zero counts give zeros.
std::array<double, 3> relative_cycle_profile(std::span<const GlobalMetrics> frames);

std::vector<std::array<double, 3>> relative_cycle_profiles(
    const std::vector<std::vector<GlobalMetrics>>& groups, ProfileScope scope = ProfileScope::global);

}  // namespace waternet
