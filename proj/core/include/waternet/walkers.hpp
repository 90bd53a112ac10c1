#pragma once

#include <cstddef>
#include <span>

#include "waternet/centrality.hpp"
#include "waternet/graph.hpp"
#include "waternet/krylov.hpp"
#include "waternet/spectral.hpp"

namespace waternet {

/// Katz centrality (I - alpha A)^{-1} 1 by sparse LDL^T. Throws
/// ParameterError (quoting rho(A)) unless 0 < alpha < 1/rho(A).
CentralityVector katz(const MolecularGraph& g, double alpha, const SpectralOptions& opts = {});

/// Dominant unit eigenvector of A, largest-magnitude entry positive. On a
/// disconnected graph each component gets its own Perron vector, scaled by
/// sqrt(|component| / N) so the whole vector still has unit norm, and
/// params.per_component is set.
CentralityVector eigenvector_centrality(const MolecularGraph& g, const SpectralOptions& opts = {});

enum class SubgraphMethod {
  automatic,   ///< dense below the threshold, quadrature above
  dense,       ///< spectral formula from a full eigendecomposition
  quadrature,  ///< Lanczos Gauss quadrature of e_i^T exp(beta A) e_i per node
};

struct SubgraphOptions {
  SubgraphMethod method = SubgraphMethod::automatic;
  std::size_t dense_threshold = 2048;
  krylov::QuadratureOptions quadrature{};
  std::size_t threads = 1;
};

/// [exp(beta A)]_ii. Throws ParameterError for beta <= 0.
CentralityVector subgraph_centrality(const MolecularGraph& g, double beta = 1.0,
                                     const SubgraphOptions& opts = {});

/// exp(beta A) 1 by Krylov action. Throws ParameterError for beta <= 0.
CentralityVector total_communicability(const MolecularGraph& g, double beta = 1.0,
                                       const krylov::ExpActionOptions& opts = {});

/// alpha = 1 / (gamma * max rho). Throws ParameterError on an empty list, a
/// non-positive radius maximum, or gamma <= 1.
double choose_alpha(std::span<const double> spectral_radii, double gamma = 1.1);

struct KatzPolicy {
  enum class Mode { fixed_alpha, automatic };
  Mode mode = Mode::automatic;
  double gamma = 1.1;
  double alpha = 0.0;

  static KatzPolicy fixed(double a) { return {Mode::fixed_alpha, 1.1, a}; }
  static KatzPolicy automatic_with(double gamma) { return {Mode::automatic, gamma, 0.0}; }
};

/// Fixed mode returns policy.alpha; automatic mode applies choose_alpha.
double resolve_alpha(const KatzPolicy& policy, std::span<const double> spectral_radii);

}  // namespace waternet
