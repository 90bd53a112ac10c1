#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "waternet/graph.hpp"

namespace waternet {

struct SpectralOptions {
  /// Full dense eigendecomposition up to this many nodes.
  std::size_t dense_threshold = 2048;
  double tol = 1e-10;
  /// Relative error target of the stochastic trace fallback (95 % level).
  double trace_rel_tol = 1e-3;
  std::uint64_t seed = 0x5eed;
};

struct Spectrum {
  /// Descending. Full when the dense path was taken, otherwise {lambda_1, lambda_N}.
  Eigen::VectorXd values;
  /// Column k belongs to values(k); empty unless requested.
  Eigen::MatrixXd vectors;
  bool full = false;
};

Spectrum adjacency_spectrum(const MolecularGraph& g, bool with_vectors = false,
                            const SpectralOptions& opts = {});

/// Largest adjacency eigenvalue rho(A) (= lambda_1 for nonnegative A).
double spectral_radius(const MolecularGraph& g, const SpectralOptions& opts = {});

/// Exact number of closed walks of length k starting at each node, [A^k]_ii.
/// Throws InternalError on 64-bit overflow.
std::vector<std::int64_t> closed_walks_per_node(const MolecularGraph& g, int k);

/// mu_k = Tr(A^k) in exact integer arithmetic.
std::int64_t spectral_moment(const MolecularGraph& g, int k);

/// E(G) = sum |lambda_i|.
double graph_energy(const MolecularGraph& g, const SpectralOptions& opts = {});

/// Tr cosh(A) / Tr exp(A).
double bipartivity(const MolecularGraph& g, const SpectralOptions& opts = {});

/// Second-smallest Laplacian eigenvalue; 0 for disconnected graphs.
double algebraic_connectivity(const MolecularGraph& g, const SpectralOptions& opts = {});

struct SpectralSummary {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  /// Present only when the dense path was used.
  std::optional<Eigen::VectorXd> spectrum;
  std::vector<std::int64_t> moments;  ///< mu_1 .. mu_kmax
  double energy = 0.0;
  double bipartivity = 1.0;
  double algebraic_connectivity = 0.0;
  /// True when energy and bipartivity came from stochastic trace estimation.
  bool estimated = false;
};

SpectralSummary spectral_summary(const MolecularGraph& g, int max_moment = 5,
                                 const SpectralOptions& opts = {});

}  // namespace waternet
