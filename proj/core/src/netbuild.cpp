#include "waternet/netbuild.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "waternet/error.hpp"

namespace waternet {
namespace {

double wrap(double x, double L) {
  double w = x - L * std::floor(x / L);
  if (w >= L) w = 0.0;  // x/L just below an integer can round up
  return w;
}

std::vector<Edge> edges_all_pairs(const Frame& frame, double r_cut) {
  std::vector<Edge> edges;
  const auto n = frame.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pbc_distance(frame.positions[i], frame.positions[j], frame.box) <= r_cut) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  return edges;
}

std::vector<Edge> edges_cell_list(const Frame& frame, double r_cut) {
  const auto n = frame.size();
  std::array<std::size_t, 3> ncell{};
  std::array<double, 3> side{};
  for (std::size_t a = 0; a < 3; ++a) {
    ncell[a] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(frame.box[a] / r_cut)));
    side[a] = frame.box[a] / static_cast<double>(ncell[a]);
  }
  const std::size_t total_cells = ncell[0] * ncell[1] * ncell[2];

  std::vector<std::array<std::size_t, 3>> coord(n);
  std::vector<std::size_t> cell_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < 3; ++a) {
      const double w = wrap(frame.positions[i][a], frame.box[a]);
      coord[i][a] = std::min(ncell[a] - 1, static_cast<std::size_t>(w / side[a]));
    }
    cell_of[i] = (coord[i][0] * ncell[1] + coord[i][1]) * ncell[2] + coord[i][2];
  }

  // Counting sort of particles into cells.
  std::vector<std::size_t> start(total_cells + 1, 0);
  for (auto c : cell_of) ++start[c + 1];
  for (std::size_t c = 0; c < total_cells; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> members(n);
  {
    auto fill = start;
    for (std::size_t i = 0; i < n; ++i) members[fill[cell_of[i]]++] = i;
  }

  // Distinct neighbour indices along one axis (fewer than 3 when the axis has
  // fewer than 3 cells, so no cell is scanned twice).
  auto axis_neighbors = [&](std::size_t a, std::size_t c) {
    std::vector<std::size_t> out;
    for (long d = -1; d <= 1; ++d) {
      const auto m = static_cast<long>(ncell[a]);
      const auto k = static_cast<std::size_t>(((static_cast<long>(c) + d) % m + m) % m);
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
  };

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nx = axis_neighbors(0, coord[i][0]);
    const auto ny = axis_neighbors(1, coord[i][1]);
    const auto nz = axis_neighbors(2, coord[i][2]);
    for (auto cx : nx) {
      for (auto cy : ny) {
        for (auto cz : nz) {
          const auto c = (cx * ncell[1] + cy) * ncell[2] + cz;
          for (std::size_t k = start[c]; k < start[c + 1]; ++k) {
            const auto j = members[k];
            if (j <= i) continue;
            if (pbc_distance(frame.positions[i], frame.positions[j], frame.box) <= r_cut) {
              edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
            }
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace

NeighborStrategy parse_neighbor_strategy(std::string_view name) {
  if (name == "auto" || name == "automatic") return NeighborStrategy::automatic;
  if (name == "all_pairs" || name == "all-pairs") return NeighborStrategy::all_pairs;
  if (name == "cell_list" || name == "cell-list") return NeighborStrategy::cell_list;
  throw ConfigError("unknown neighbor strategy '" + std::string(name) + "'");
}

double pbc_distance(const Vec3& p, const Vec3& q, const Vec3& box) {
  double sum = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const double L = box[a];
    if (!(L > 0.0)) throw ConfigError("non-positive box length");
    double d = std::fmod(std::abs(p[a] - q[a]), L);
    if (d > 0.5 * L) d = L - d;
    sum += d * d;
  }
  return std::sqrt(sum);
}

void validate_cutoff(const CutoffConfig& cfg, const Vec3& box) {
  if (!(cfg.r_cut > 0.0)) throw ConfigError("cutoff must be positive");
  const double shortest = std::min({box[0], box[1], box[2]});
  if (!(shortest > 0.0)) throw ConfigError("non-positive box length");
  if (!(cfg.r_cut < 0.5 * shortest)) {
    throw ConfigError("cutoff " + std::to_string(cfg.r_cut) +
                      " nm must be below half the shortest box length (" +
                      std::to_string(0.5 * shortest) + " nm)");
  }
}

MolecularGraph build_graph(const Frame& frame, const CutoffConfig& cfg) {
  validate_cutoff(cfg, frame.box);
  auto strategy = cfg.strategy;
  if (strategy == NeighborStrategy::automatic) {
    strategy = frame.size() > 1000 ? NeighborStrategy::cell_list : NeighborStrategy::all_pairs;
  }
  auto edges = strategy == NeighborStrategy::cell_list ? edges_cell_list(frame, cfg.r_cut)
                                                       : edges_all_pairs(frame, cfg.r_cut);
  std::vector<std::size_t> node_map(frame.particle_index.begin(), frame.particle_index.end());
  return MolecularGraph::from_edges(frame.size(), std::move(edges), std::move(node_map));
}

Eigen::MatrixXd distance_matrix(const Frame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = pbc_distance(frame.positions[static_cast<std::size_t>(i)],
                                    frame.positions[static_cast<std::size_t>(j)], frame.box);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

}  // namespace waternet
