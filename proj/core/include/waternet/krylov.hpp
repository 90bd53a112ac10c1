#pragma once

// Lanczos-based kernels for symmetric sparse matrices: action of the matrix
// exponential on a vector, Gauss quadrature for quadratic forms v^T f(A) v,
// extremal eigenpairs, and stochastic trace estimation.
//
// All routines use full reorthogonalisation; the Krylov dimensions involved
// here (tens to a few hundred) make that affordable and it keeps the Ritz
// values free of spurious copies.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "waternet/graph.hpp"

namespace waternet::krylov {

struct ExpActionOptions {
  std::size_t max_dim = 60;
  /// Stop when the coefficient update between successive Krylov dimensions
  /// is below tol * ||result||.
  double tol = 1e-12;
  std::size_t max_substeps = 1u << 12;
};

struct ExpActionStats {
  std::size_t substeps = 0;
  std::size_t matvecs = 0;
};

/// y = exp(t A) v. When the tolerance is not met within max_dim vectors the
/// time step is halved and the action applied in several substeps.
Eigen::VectorXd expm_action(const SparseMatrix& A, const Eigen::VectorXd& v, double t,
                            const ExpActionOptions& opts = {}, ExpActionStats* stats = nullptr);

struct QuadratureOptions {
  std::size_t max_dim = 60;
  double tol = 1e-12;
};

struct QuadratureResult {
  double value = 0.0;
  std::size_t steps = 0;
  bool converged = false;
};

/// Gauss quadrature estimate of v^T f(A) v from the Lanczos tridiagonal.
QuadratureResult quadratic_form(const SparseMatrix& A, const Eigen::VectorXd& v,
                                const std::function<double(double)>& f,
                                const QuadratureOptions& opts = {});

enum class Extremal { largest, smallest };

struct EigenOptions {
  double tol = 1e-10;
  /// 0 means 10 * N.
  std::size_t max_iterations = 0;
  std::size_t restart_dim = 150;
  /// Unit vector to project out (e.g. the constant vector for a Laplacian).
  std::optional<Eigen::VectorXd> deflate;
  std::uint64_t seed = 0x5eed;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Extremal eigenpair of symmetric M by explicitly restarted Lanczos.
/// Throws ConvergenceError (carrying the residual norm) at the iteration cap.
EigenPair extremal_eigenpair(const SparseMatrix& M, Extremal which,
                             const EigenOptions& opts = {});

struct TraceOptions {
  double rel_tol = 1e-3;
  double z_score = 1.96;  // 95 % two-sided
  std::size_t min_samples = 32;
  std::size_t max_samples = 50000;
  QuadratureOptions quadrature{.max_dim = 80, .tol = 1e-8};
  std::uint64_t seed = 0x7ace;
};

struct TraceEstimate {
  /// One estimate per requested function, sharing the probe vectors.
  std::vector<double> values;
  std::vector<double> half_widths;
  std::size_t samples = 0;
  bool reached_tolerance = false;
};

/// Hutchinson estimator of tr f_k(A) with Rademacher probes and Lanczos
/// quadrature per probe. Sampling continues until every half-width of the
/// confidence interval is below rel_tol * |estimate| or max_samples is hit.
TraceEstimate stochastic_trace(const SparseMatrix& A,
                               const std::vector<std::function<double(double)>>& fs,
                               const TraceOptions& opts = {});

}  // namespace waternet::krylov
