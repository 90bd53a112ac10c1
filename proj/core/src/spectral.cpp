#include "waternet/spectral.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "waternet/error.hpp"
#include "waternet/krylov.hpp"

namespace waternet {
namespace {

bool dense_path(const MolecularGraph& g, const SpectralOptions& opts) {
  return g.order() <= opts.dense_threshold;
}

Eigen::VectorXd dense_eigenvalues_desc(const MolecularGraph& g) {
  const Eigen::MatrixXd a = Eigen::MatrixXd(g.adjacency());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
  return es.eigenvalues().reverse();
}

krylov::EigenOptions eigen_options(const SpectralOptions& opts) {
  krylov::EigenOptions eo;
  eo.tol = opts.tol;
  eo.seed = opts.seed;
  return eo;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("closed-walk count overflows 64 bits");
  return r;
}

}  // namespace

Spectrum adjacency_spectrum(const MolecularGraph& g, bool with_vectors, const SpectralOptions& opts) {
  Spectrum s;
  if (g.order() == 0) {
    s.full = true;
    return s;
  }
  if (dense_path(g, opts)) {
    const Eigen::MatrixXd a = Eigen::MatrixXd(g.adjacency());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
    s.values = es.eigenvalues().reverse();
    if (with_vectors) s.vectors = es.eigenvectors().rowwise().reverse();
    s.full = true;
    return s;
  }
  const auto eo = eigen_options(opts);
  const auto top = krylov::extremal_eigenpair(g.adjacency(), krylov::Extremal::largest, eo);
  const auto bottom = krylov::extremal_eigenpair(g.adjacency(), krylov::Extremal::smallest, eo);
  s.values.resize(2);
  s.values << top.value, bottom.value;
  if (with_vectors) {
    s.vectors.resize(static_cast<Eigen::Index>(g.order()), 2);
    s.vectors.col(0) = top.vector;
    s.vectors.col(1) = bottom.vector;
  }
  return s;
}

double spectral_radius(const MolecularGraph& g, const SpectralOptions& opts) {
  if (g.order() == 0 || g.edge_count() == 0) return 0.0;
  return krylov::extremal_eigenpair(g.adjacency(), krylov::Extremal::largest, eigen_options(opts)).value;
}

std::vector<std::int64_t> closed_walks_per_node(const MolecularGraph& g, int k) {
  if (k < 1) throw ParameterError("walk length must be positive");
  const auto n = g.order();
  std::vector<std::int64_t> out(n, 0);
  // Walk counts from a single source, only touching its k-neighbourhood.
  std::vector<std::int64_t> cur(n, 0);
  std::vector<std::int64_t> next(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> support;
  std::vector<NodeId> grown;
  for (NodeId s = 0; s < n; ++s) {
    support.assign(1, s);
    seen[s] = 1;
    cur[s] = 1;
    for (int step = 0; step < k; ++step) {
      grown = support;
      for (NodeId u : support) {
        if (cur[u] == 0) continue;
        for (NodeId w : g.neighbors(u)) {
          if (!seen[w]) {
            seen[w] = 1;
            grown.push_back(w);
          }
          next[w] = checked_add(next[w], cur[u]);
        }
      }
      support.swap(grown);
      for (NodeId u : support) {
        cur[u] = next[u];
        next[u] = 0;
      }
    }
    out[s] = cur[s];
    for (NodeId u : support) {
      cur[u] = 0;
      seen[u] = 0;
    }
  }
  return out;
}

std::int64_t spectral_moment(const MolecularGraph& g, int k) {
  std::int64_t total = 0;
  for (auto w : closed_walks_per_node(g, k)) total = checked_add(total, w);
  return total;
}

double graph_energy(const MolecularGraph& g, const SpectralOptions& opts) {
  if (g.edge_count() == 0) return 0.0;
  if (dense_path(g, opts)) return dense_eigenvalues_desc(g).cwiseAbs().sum();
  krylov::TraceOptions to;
  to.rel_tol = opts.trace_rel_tol;
  to.seed = opts.seed;
  return krylov::stochastic_trace(g.adjacency(), {[](double x) { return std::abs(x); }}, to).values[0];
}

double bipartivity(const MolecularGraph& g, const SpectralOptions& opts) {
  if (g.order() == 0) throw ParameterError("bipartivity of an empty graph");
  if (g.edge_count() == 0) return 1.0;
  if (dense_path(g, opts)) {
    const auto ev = dense_eigenvalues_desc(g);
    // Shift by lambda_1 so the exponentials cannot overflow; the ratio is unchanged.
    const double shift = ev(0);
    const double num = 0.5 * ((ev.array() - shift).exp() + (-ev.array() - shift).exp()).sum();
    const double den = (ev.array() - shift).exp().sum();
    return num / den;
  }
  krylov::TraceOptions to;
  to.rel_tol = opts.trace_rel_tol;
  to.seed = opts.seed;
  const auto est = krylov::stochastic_trace(
      g.adjacency(), {[](double x) { return std::cosh(x); }, [](double x) { return std::exp(x); }}, to);
  return est.values[0] / est.values[1];
}

double algebraic_connectivity(const MolecularGraph& g, const SpectralOptions& opts) {
  const auto n = g.order();
  if (n < 2) throw ParameterError("algebraic connectivity needs at least 2 nodes");
  if (connected_components(g).count() > 1) return 0.0;
  const SparseMatrix L = laplacian(g);
  if (dense_path(g, opts)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(L), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
    return std::max(0.0, es.eigenvalues()(1));
  }
  auto eo = eigen_options(opts);
  eo.deflate = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  return std::max(0.0, krylov::extremal_eigenpair(L, krylov::Extremal::smallest, eo).value);
}

SpectralSummary spectral_summary(const MolecularGraph& g, int max_moment, const SpectralOptions& opts) {
  SpectralSummary s;
  for (int k = 1; k <= max_moment; ++k) s.moments.push_back(spectral_moment(g, k));
  if (g.order() == 0) return s;
  if (dense_path(g, opts)) {
    const auto ev = dense_eigenvalues_desc(g);
    s.lambda_max = ev(0);
    s.lambda_min = ev(ev.size() - 1);
    s.energy = ev.cwiseAbs().sum();
    const double shift = ev(0);
    s.bipartivity = 0.5 * ((ev.array() - shift).exp() + (-ev.array() - shift).exp()).sum() /
                    (ev.array() - shift).exp().sum();
    s.spectrum = ev;
  } else {
    const auto sp = adjacency_spectrum(g, false, opts);
    s.lambda_max = sp.values(0);
    s.lambda_min = sp.values(1);
    s.energy = graph_energy(g, opts);
    s.bipartivity = bipartivity(g, opts);
    s.estimated = true;
  }
  if (g.order() >= 2) s.algebraic_connectivity = algebraic_connectivity(g, opts);
  return s;
}

}  // namespace waternet
