#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "generators.hpp"
#include "oracles.hpp"
#include "waternet/error.hpp"
#include "waternet/krylov.hpp"

using namespace waternet;
using namespace waternet::krylov;

namespace {

Eigen::VectorXd dense_expv(const MolecularGraph& g, const Eigen::VectorXd& v, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_adjacency(g));
  const Eigen::VectorXd w = (t * es.eigenvalues().array()).exp();
  return es.eigenvectors() * w.cwiseProduct(es.eigenvectors().transpose() * v);
}

}  // namespace

TEST_CASE("expm_action matches the dense exponential") {
  wtest::Rng rng(21);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 15; ++rep) {
    const auto g = wtest::gnp(80 + 10 * rep, 0.06, rng);
    Eigen::VectorXd v(g.order());
    for (auto i = 0; i < v.size(); ++i) v(i) = z(rng);
    for (double t : {0.3, 1.0, -0.7}) {
      const auto y = expm_action(g.adjacency(), v, t);
      const auto ref = dense_expv(g, v, t);
      CHECK((y - ref).norm() <= 1e-10 * ref.norm());
    }
  }
}

TEST_CASE("expm_action subdivides the time step when the basis is too small") {
  wtest::Rng rng(2);
  const auto g = wtest::gnp(300, 0.05, rng);
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(300);
  ExpActionOptions opts;
  opts.max_dim = 12;
  ExpActionStats stats;
  const auto y = expm_action(g.adjacency(), v, 2.0, opts, &stats);
  CHECK(stats.substeps > 1);
  const auto ref = dense_expv(g, v, 2.0);
  CHECK((y - ref).norm() <= 1e-9 * ref.norm());
}

TEST_CASE("expm_action on invariant subspaces") {
  // K2: the Krylov space of the ones vector is one-dimensional.
  const auto k2 = wtest::complete_graph(2);
  const auto y = expm_action(k2.adjacency(), Eigen::VectorXd::Ones(2), 1.0);
  CHECK(std::abs(y(0) - std::exp(1.0)) < 1e-14);
  const auto e = wtest::empty_graph(5);
  CHECK(expm_action(e.adjacency(), Eigen::VectorXd::Ones(5), 1.0).isApprox(Eigen::VectorXd::Ones(5)));
  CHECK(expm_action(e.adjacency(), Eigen::VectorXd::Zero(5), 1.0).norm() == 0.0);
}

TEST_CASE("quadratic_form recovers diagonal entries of exp(A)") {
  wtest::Rng rng(5);
  const auto g = wtest::gnp(120, 0.05, rng);
  const auto ref = oracle::dense_exponential(g, 1.0);
  for (Eigen::Index i = 0; i < 120; i += 7) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(120);
    e(i) = 1.0;
    const auto q = quadratic_form(g.adjacency(), e, [](double x) { return std::exp(x); });
    CHECK(q.converged);
    CHECK(std::abs(q.value - ref.subgraph(i)) <= 1e-10 * ref.subgraph(i));
  }
}

TEST_CASE("extremal_eigenpair with and without deflation") {
  wtest::Rng rng(13);
  for (int rep = 0; rep < 6; ++rep) {
    const auto g = wtest::connected_gnp(150, 0.06, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_adjacency(g));
    const auto top = extremal_eigenpair(g.adjacency(), Extremal::largest);
    const auto bottom = extremal_eigenpair(g.adjacency(), Extremal::smallest);
    CHECK(std::abs(top.value - es.eigenvalues()(149)) < 1e-9);
    CHECK(std::abs(bottom.value - es.eigenvalues()(0)) < 1e-9);
    CHECK(top.residual <= 1e-10 * std::max(1.0, std::abs(top.value)));

    const SparseMatrix l = laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ls((Eigen::MatrixXd(l)));
    EigenOptions opts;
    opts.deflate = Eigen::VectorXd::Constant(150, 1.0 / std::sqrt(150.0));
    const auto fiedler = extremal_eigenpair(l, Extremal::smallest, opts);
    CHECK(std::abs(fiedler.value - ls.eigenvalues()(1)) < 1e-8);
  }
}

TEST_CASE("extremal_eigenpair reports non-convergence with its residual") {
  wtest::Rng rng(1);
  const auto g = wtest::connected_gnp(400, 0.02, rng);
  const SparseMatrix l = laplacian(g);
  EigenOptions opts;
  opts.deflate = Eigen::VectorXd::Constant(400, 1.0 / 20.0);
  opts.max_iterations = 5;
  opts.restart_dim = 5;
  try {
    extremal_eigenpair(l, Extremal::smallest, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("stochastic_trace meets its relative error contract") {
  wtest::Rng rng(31);
  const auto g = wtest::gnp(400, 0.01, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_adjacency(g), Eigen::EigenvaluesOnly);
  const double exact_exp = es.eigenvalues().array().exp().sum();
  const double exact_abs = es.eigenvalues().array().abs().sum();
  TraceOptions opts;
  opts.rel_tol = 2e-2;
  const auto est = stochastic_trace(
      g.adjacency(), {[](double x) { return std::exp(x); }, [](double x) { return std::abs(x); }}, opts);
  CHECK(est.reached_tolerance);
  // Three half-widths keeps the check deterministic-seed safe.
  CHECK(std::abs(est.values[0] - exact_exp) <= 3 * est.half_widths[0]);
  CHECK(std::abs(est.values[1] - exact_abs) <= 3 * est.half_widths[1]);
  CHECK(est.half_widths[0] <= 2e-2 * est.values[0]);
}
