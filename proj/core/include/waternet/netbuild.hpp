#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "waternet/frame_io.hpp"
#include "waternet/graph.hpp"

namespace waternet {

enum class NeighborStrategy {
  automatic,  ///< cell_list when N > 1000, else all_pairs
  all_pairs,
  cell_list,
};

NeighborStrategy parse_neighbor_strategy(std::string_view name);

struct CutoffConfig {
  double r_cut = 0.35;  // nm
  NeighborStrategy strategy = NeighborStrategy::automatic;
};

/// Minimum-image distance in a rectangular periodic box. Each axis
/// difference is wrapped into [0, L) and folded to L - d when d > L/2.
double pbc_distance(const Vec3& p, const Vec3& q, const Vec3& box);

/// Throws ConfigError unless 0 < r_cut < min(box)/2.
void validate_cutoff(const CutoffConfig& cfg, const Vec3& box);

/// Edge (i, j) iff pbc_distance(i, j) <= r_cut, boundary inclusive.
MolecularGraph build_graph(const Frame& frame, const CutoffConfig& cfg = {});

/// Dense matrix of minimum-image distances. O(N^2) memory; meant for small
/// frames and diagnostics.
Eigen::MatrixXd distance_matrix(const Frame& frame);

}  // namespace waternet
