#include "waternet/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "waternet/error.hpp"

namespace waternet::krylov {
namespace {

/// Lanczos recurrence with full (two-pass classical Gram-Schmidt)
/// reorthogonalisation, optionally restricted to the complement of a unit
/// vector.
class Lanczos {
 public:
  Lanczos(const SparseMatrix& A, std::size_t max_dim, const Eigen::VectorXd* deflate = nullptr)
      : A_(A), deflate_(deflate), V_(A.rows(), static_cast<Eigen::Index>(max_dim + 1)) {}

  void start(const Eigen::VectorXd& unit) {
    V_.col(0) = unit;
    alpha_.clear();
    beta_.clear();
    dim_ = 0;
    broke_down_ = false;
  }

  /// Extends the basis by one vector. Returns false on (happy) breakdown, in
  /// which case the current Krylov space is invariant.
  bool step() {
    const auto j = static_cast<Eigen::Index>(dim_);
    Eigen::VectorXd w = A_ * V_.col(j);
    project(w);
    const double scale = w.norm();
    const double a = V_.col(j).dot(w);
    w -= a * V_.col(j);
    if (j > 0) w -= beta_.back() * V_.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd h = V_.leftCols(j + 1).transpose() * w;
      w -= V_.leftCols(j + 1) * h;
      project(w);
    }
    alpha_.push_back(a);
    ++dim_;
    const double b = w.norm();
    // The whole space is spanned once dim reaches N.
    if (b == 0.0 || b <= 1e-12 * scale || j + 1 >= A_.rows()) {
      broke_down_ = true;
      return false;
    }
    beta_.push_back(b);
    if (j + 1 < V_.cols()) V_.col(j + 1) = w / b;
    return true;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool broke_down() const noexcept { return broke_down_; }
  double last_beta() const noexcept { return broke_down_ || beta_.size() < dim_ ? 0.0 : beta_[dim_ - 1]; }
  const Eigen::MatrixXd& basis() const noexcept { return V_; }

  /// Eigen-decomposition of the current dim x dim tridiagonal matrix.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz() const {
    const auto k = static_cast<Eigen::Index>(dim_);
    Eigen::VectorXd diag(k);
    Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i < k; ++i) diag(i) = alpha_[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub(i) = beta_[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (k == 1) {
      Eigen::MatrixXd t(1, 1);
      t(0, 0) = diag(0);
      es.compute(t);
    } else {
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    }
    return es;
  }

 private:
  void project(Eigen::VectorXd& w) const {
    if (deflate_ != nullptr) w -= deflate_->dot(w) * (*deflate_);
  }

  const SparseMatrix& A_;
  const Eigen::VectorXd* deflate_;
  Eigen::MatrixXd V_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  std::size_t dim_ = 0;
  bool broke_down_ = false;
};

/// One exp(t A) w step; nullopt when max_dim vectors are not enough.
std::optional<Eigen::VectorXd> expm_step(const SparseMatrix& A, const Eigen::VectorXd& w, double t,
                                         const ExpActionOptions& opts, std::size_t& matvecs) {
  const double b0 = w.norm();
  if (b0 == 0.0) return Eigen::VectorXd::Zero(w.size());
  const std::size_t max_dim = std::min<std::size_t>(opts.max_dim, static_cast<std::size_t>(A.rows()));
  Lanczos lz(A, max_dim);
  lz.start(w / b0);
  Eigen::VectorXd prev;
  for (std::size_t j = 0; j < max_dim; ++j) {
    const bool extended = lz.step();
    ++matvecs;
    const auto es = lz.ritz();
    const Eigen::VectorXd first = es.eigenvectors().row(0).transpose();
    const Eigen::VectorXd c =
        es.eigenvectors() * ((t * es.eigenvalues().array()).exp() * first.array()).matrix();
    const auto k = c.size();
    bool done = !extended;
    if (!done && k >= 2) {
      Eigen::VectorXd diff = c;
      diff.head(k - 1) -= prev;
      done = diff.norm() <= opts.tol * c.norm();
    }
    if (done) return b0 * (lz.basis().leftCols(k) * c);
    prev = c;
  }
  return std::nullopt;
}

std::vector<QuadratureResult> quadrature_multi(const SparseMatrix& A, const Eigen::VectorXd& v,
                                               const std::vector<std::function<double(double)>>& fs,
                                               const QuadratureOptions& opts) {
  std::vector<QuadratureResult> out(fs.size());
  const double nrm2 = v.squaredNorm();
  if (nrm2 == 0.0 || A.rows() == 0) {
    for (auto& r : out) r.converged = true;
    return out;
  }
  const std::size_t max_dim = std::min<std::size_t>(opts.max_dim, static_cast<std::size_t>(A.rows()));
  Lanczos lz(A, max_dim);
  lz.start(v / std::sqrt(nrm2));
  std::vector<double> prev(fs.size(), 0.0);
  for (std::size_t j = 0; j < max_dim; ++j) {
    const bool extended = lz.step();
    // The Ritz solve is cubic in the basis size, so past a short warm-up
    // the rule is only evaluated every few steps.
    if (extended && j + 1 < max_dim && j >= 8 && (j + 1) % 4 != 0) continue;
    const auto es = lz.ritz();
    bool all = true;
    for (std::size_t f = 0; f < fs.size(); ++f) {
      double value = 0.0;
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double w = es.eigenvectors()(0, k);
        value += w * w * fs[f](es.eigenvalues()(k));
      }
      value *= nrm2;
      out[f].value = value;
      out[f].steps = j + 1;
      out[f].converged = !extended || (j >= 1 && std::abs(value - prev[f]) <= opts.tol * std::abs(value));
      all = all && out[f].converged;
      prev[f] = value;
    }
    if (all) break;
  }
  return out;
}

Eigen::VectorXd seeded_unit_vector(Eigen::Index n, std::uint64_t seed, const Eigen::VectorXd* deflate) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = u(rng);
  if (deflate != nullptr) x -= deflate->dot(x) * (*deflate);
  return x.normalized();
}

EigenPair dense_extremal(const SparseMatrix& M, Extremal which, const EigenOptions& opts) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(M);
  if (opts.deflate) {
    // Push the deflated direction to the far end of the spectrum.
    const auto& d = *opts.deflate;
    const double shift = dense.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(dense.rows(), dense.cols()) - d * d.transpose();
    dense = P * dense * P;
    dense += (which == Extremal::smallest ? shift : -shift) * (d * d.transpose());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const Eigen::Index k = which == Extremal::largest ? dense.rows() - 1 : 0;
  EigenPair pair;
  pair.value = es.eigenvalues()(k);
  pair.vector = es.eigenvectors().col(k);
  pair.residual = (dense * pair.vector - pair.value * pair.vector).norm();
  return pair;
}

}  // namespace

Eigen::VectorXd expm_action(const SparseMatrix& A, const Eigen::VectorXd& v, double t,
                            const ExpActionOptions& opts, ExpActionStats* stats) {
  ExpActionStats local;
  Eigen::VectorXd w = v;
  if (A.rows() == 0 || t == 0.0) {
    if (stats) *stats = local;
    return w;
  }
  double remaining = t;
  double step = t;
  std::size_t halvings = 0;
  while (remaining != 0.0) {
    if (std::abs(step) > std::abs(remaining)) step = remaining;
    auto next = expm_step(A, w, step, opts, local.matvecs);
    if (!next) {
      step *= 0.5;
      if (++halvings > 40 || local.substeps > opts.max_substeps) {
        throw ConvergenceError("Krylov exponential action did not converge", std::abs(step));
      }
      continue;
    }
    if (!next->allFinite()) throw ConvergenceError("Krylov breakdown: non-finite iterate", 0.0);
    w = std::move(*next);
    remaining -= step;
    if (std::abs(remaining) <= 1e-15 * std::abs(t)) remaining = 0.0;
    ++local.substeps;
  }
  if (stats) *stats = local;
  return w;
}

QuadratureResult quadratic_form(const SparseMatrix& A, const Eigen::VectorXd& v,
                                const std::function<double(double)>& f,
                                const QuadratureOptions& opts) {
  return quadrature_multi(A, v, {f}, opts).front();
}

EigenPair extremal_eigenpair(const SparseMatrix& M, Extremal which, const EigenOptions& opts) {
  const auto n = M.rows();
  if (n == 0) throw ParameterError("eigenpair of an empty matrix");
  if (n <= 64) return dense_extremal(M, which, opts);

  const Eigen::VectorXd* deflate = opts.deflate ? &*opts.deflate : nullptr;
  const std::size_t cap = opts.max_iterations != 0 ? opts.max_iterations : 10 * static_cast<std::size_t>(n);
  const std::size_t room = static_cast<std::size_t>(n) - (deflate != nullptr ? 1 : 0);
  const std::size_t m = std::max<std::size_t>(2, std::min(opts.restart_dim, room));

  Lanczos lz(M, m, deflate);
  Eigen::VectorXd x = seeded_unit_vector(n, opts.seed, deflate);
  EigenPair pair;
  std::size_t used = 0;
  double residual = std::numeric_limits<double>::infinity();
  while (used < cap) {
    lz.start(x);
    for (std::size_t j = 0; j < m && used < cap; ++j) {
      ++used;
      if (!lz.step()) break;
    }
    const auto es = lz.ritz();
    const Eigen::Index k = which == Extremal::largest ? es.eigenvalues().size() - 1 : 0;
    const double theta = es.eigenvalues()(k);
    const Eigen::VectorXd s = es.eigenvectors().col(k);
    x = (lz.basis().leftCols(s.size()) * s).normalized();
    const double estimate = std::abs(lz.last_beta() * s(s.size() - 1));
    const double bound = opts.tol * std::max(1.0, std::abs(theta));
    if (estimate <= bound || lz.broke_down()) {
      Eigen::VectorXd r = M * x - theta * x;
      if (deflate != nullptr) r -= deflate->dot(r) * (*deflate);
      residual = r.norm();
      if (residual <= bound) {
        pair.value = theta;
        pair.vector = std::move(x);
        pair.residual = residual;
        pair.iterations = used;
        return pair;
      }
    } else {
      residual = estimate;
    }
  }
  throw ConvergenceError("Lanczos eigensolver hit its iteration cap", residual);
}

TraceEstimate stochastic_trace(const SparseMatrix& A,
                               const std::vector<std::function<double(double)>>& fs,
                               const TraceOptions& opts) {
  TraceEstimate est;
  const auto nf = fs.size();
  est.values.assign(nf, 0.0);
  est.half_widths.assign(nf, 0.0);
  if (A.rows() == 0 || nf == 0) {
    est.reached_tolerance = true;
    return est;
  }
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> mean(nf, 0.0);
  std::vector<double> m2(nf, 0.0);
  Eigen::VectorXd z(A.rows());
  std::size_t s = 0;
  while (s < opts.max_samples) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = coin(rng) ? 1.0 : -1.0;
    const auto q = quadrature_multi(A, z, fs, opts.quadrature);
    ++s;
    for (std::size_t f = 0; f < nf; ++f) {
      const double delta = q[f].value - mean[f];
      mean[f] += delta / static_cast<double>(s);
      m2[f] += delta * (q[f].value - mean[f]);
    }
    if (s < opts.min_samples) continue;
    bool ok = true;
    for (std::size_t f = 0; f < nf; ++f) {
      const double var = m2[f] / static_cast<double>(s - 1);
      est.half_widths[f] = opts.z_score * std::sqrt(var / static_cast<double>(s));
      ok = ok && est.half_widths[f] <= opts.rel_tol * std::abs(mean[f]);
    }
    if (ok) {
      est.reached_tolerance = true;
      break;
    }
  }
  est.values = mean;
  est.samples = s;
  return est;
}

}  // namespace waternet::krylov
