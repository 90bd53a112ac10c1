#include "waternet/walkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "waternet/error.hpp"
#include "waternet/parallel.hpp"

namespace waternet {
namespace {

CentralityVector make_vector(const MolecularGraph& g, Measure m) {
  CentralityVector v;
  v.measure = m;
  v.edge_count = g.edge_count();
  return v;
}

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("beta must be positive and finite, got " + std::to_string(beta));
  }
}

/// Unit Perron vector of a connected graph, entries made nonnegative.
Eigen::VectorXd perron_vector(const MolecularGraph& g, const SpectralOptions& opts) {
  if (g.order() == 1) return Eigen::VectorXd::Ones(1);
  krylov::EigenOptions eo;
  eo.tol = opts.tol;
  eo.seed = opts.seed;
  Eigen::VectorXd p = krylov::extremal_eigenpair(g.adjacency(), krylov::Extremal::largest, eo).vector;
  Eigen::Index arg = 0;
  p.cwiseAbs().maxCoeff(&arg);
  if (p(arg) < 0) p = -p;
  // The Perron vector of a connected graph is strictly positive; anything
  // else is rounding noise around an already positive entry.
  return p.cwiseAbs().normalized();
}

}  // namespace

CentralityVector katz(const MolecularGraph& g, double alpha, const SpectralOptions& opts) {
  auto out = make_vector(g, Measure::katz);
  out.params.alpha = alpha;
  const auto n = static_cast<Eigen::Index>(g.order());
  const double rho = spectral_radius(g, opts);
  // rho carries eigensolver rounding, so alpha == 1/rho must not slip through.
  if (!(alpha > 0.0) || !(alpha * rho < 1.0 - 64 * std::numeric_limits<double>::epsilon())) {
    throw ParameterError("katz alpha " + std::to_string(alpha) + " outside (0, 1/rho) with rho(A) = " +
                         std::to_string(rho));
  }
  if (g.edge_count() == 0) {
    out.scores.assign(g.order(), 1.0);
    return out;
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setIdentity();
  m -= alpha * Eigen::SparseMatrix<double>(g.adjacency());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
  if (solver.info() != Eigen::Success) throw ConvergenceError("katz factorisation failed", 0.0);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd x = solver.solve(b);
  const double residual = (m * x - b).norm() / b.norm();
  if (!(residual <= 1e-10)) throw ConvergenceError("katz solve residual too large", residual);
  out.scores.assign(x.data(), x.data() + n);
  return out;
}

CentralityVector eigenvector_centrality(const MolecularGraph& g, const SpectralOptions& opts) {
  auto out = make_vector(g, Measure::eigenvector);
  const auto n = g.order();
  if (n == 0) return out;
  const auto parts = connected_components(g);
  if (parts.count() == 1) {
    const auto p = perron_vector(g, opts);
    out.scores.assign(p.data(), p.data() + p.size());
    return out;
  }

  out.params.per_component = true;
  out.scores.assign(n, 0.0);
  std::vector<std::vector<NodeId>> members(parts.count());
  for (NodeId i = 0; i < n; ++i) members[parts.component_id[i]].push_back(i);
  std::vector<NodeId> local(n, 0);
  for (const auto& nodes : members) {
    for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = static_cast<NodeId>(k);
    std::vector<Edge> edges;
    for (NodeId u : nodes) {
      for (NodeId w : g.neighbors(u)) {
        if (u < w) edges.push_back({local[u], local[w]});
      }
    }
    const auto sub = MolecularGraph::from_edges(nodes.size(), std::move(edges));
    const auto p = perron_vector(sub, opts);
    const double scale = std::sqrt(static_cast<double>(nodes.size()) / static_cast<double>(n));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      out.scores[nodes[k]] = scale * p(static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

CentralityVector subgraph_centrality(const MolecularGraph& g, double beta, const SubgraphOptions& opts) {
  check_beta(beta);
  auto out = make_vector(g, Measure::subgraph);
  out.params.beta = beta;
  const auto n = g.order();
  if (g.edge_count() == 0) {
    out.scores.assign(n, 1.0);
    return out;
  }
  auto method = opts.method;
  if (method == SubgraphMethod::automatic) {
    method = n <= opts.dense_threshold ? SubgraphMethod::dense : SubgraphMethod::quadrature;
  }
  out.scores.assign(n, 0.0);
  if (method == SubgraphMethod::dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(g.adjacency()));
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
    const Eigen::VectorXd w = (beta * es.eigenvalues().array()).exp();
    const Eigen::VectorXd sub = es.eigenvectors().array().square().matrix() * w;
    out.scores.assign(sub.data(), sub.data() + sub.size());
    return out;
  }
  const auto& A = g.adjacency();
  const auto f = [beta](double x) { return std::exp(beta * x); };
  parallel_for(n, opts.threads, [&](std::size_t i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(i)) = 1.0;
    const auto q = krylov::quadratic_form(A, e, f, opts.quadrature);
    if (!q.converged) {
      throw ConvergenceError("subgraph centrality quadrature did not converge at node " + std::to_string(i),
                             0.0);
    }
    out.scores[i] = q.value;
  });
  return out;
}

CentralityVector total_communicability(const MolecularGraph& g, double beta,
                                       const krylov::ExpActionOptions& opts) {
  check_beta(beta);
  auto out = make_vector(g, Measure::total_communicability);
  out.params.beta = beta;
  const auto n = static_cast<Eigen::Index>(g.order());
  if (g.edge_count() == 0) {
    out.scores.assign(g.order(), 1.0);
    return out;
  }
  const Eigen::VectorXd tc = krylov::expm_action(g.adjacency(), Eigen::VectorXd::Ones(n), beta, opts);
  out.scores.assign(tc.data(), tc.data() + n);
  return out;
}

double choose_alpha(std::span<const double> spectral_radii, double gamma) {
  if (spectral_radii.empty()) throw ParameterError("choose_alpha needs at least one spectral radius");
  if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1, got " + std::to_string(gamma));
  const double rho = *std::max_element(spectral_radii.begin(), spectral_radii.end());
  if (!(rho > 0.0)) throw ParameterError("maximum spectral radius is zero; alpha is unbounded");
  return 1.0 / (gamma * rho);
}

double resolve_alpha(const KatzPolicy& policy, std::span<const double> spectral_radii) {
  if (policy.mode == KatzPolicy::Mode::fixed_alpha) return policy.alpha;
  return choose_alpha(spectral_radii, policy.gamma);
}

}  // namespace waternet
