#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "generators.hpp"
#include "oracles.hpp"
#include "waternet/error.hpp"
#include "waternet/spectral.hpp"

using namespace waternet;

TEST_CASE("known spectra") {
  const auto k2 = adjacency_spectrum(wtest::complete_graph(2));
  CHECK(k2.values(0) == doctest::Approx(1.0));
  CHECK(k2.values(1) == doctest::Approx(-1.0));
  const auto c4 = adjacency_spectrum(wtest::cycle_graph(4));
  CHECK(c4.values(0) == doctest::Approx(2.0));
  CHECK(std::abs(c4.values(1)) < 1e-12);
  CHECK(std::abs(c4.values(2)) < 1e-12);
  CHECK(c4.values(3) == doctest::Approx(-2.0));

  const auto with = adjacency_spectrum(wtest::star_graph(3), true);
  const Eigen::MatrixXd a = oracle::dense_adjacency(wtest::star_graph(3));
  for (int k = 0; k < 4; ++k) {
    CHECK((a * with.vectors.col(k) - with.values(k) * with.vectors.col(k)).norm() < 1e-12);
  }
}

TEST_CASE("spectral moments count closed walks") {
  wtest::Rng rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto g = wtest::gnp(12, 0.3, rng);
    CHECK(spectral_moment(g, 1) == 0);
    CHECK(spectral_moment(g, 2) == static_cast<std::int64_t>(2 * g.edge_count()));
    const Eigen::MatrixXd a = oracle::dense_adjacency(g);
    Eigen::MatrixXd p = a;
    for (int k = 2; k <= 7; ++k) {
      p = p * a;
      CHECK(spectral_moment(g, k) == static_cast<std::int64_t>(std::llround(p.trace())));
    }
  }
  CHECK(spectral_moment(wtest::complete_graph(3), 3) == 6);
  CHECK_THROWS_AS(spectral_moment(wtest::complete_graph(3), 0), ParameterError);
  CHECK_THROWS_AS(spectral_moment(wtest::complete_graph(40), 14), InternalError);
}

TEST_CASE("energy, bipartivity and algebraic connectivity on small graphs") {
  CHECK(graph_energy(wtest::complete_graph(2)) == doctest::Approx(2.0));
  CHECK(graph_energy(wtest::complete_graph(3)) == doctest::Approx(4.0));
  CHECK(bipartivity(wtest::cycle_graph(4)) == doctest::Approx(1.0).epsilon(1e-14));
  const double e = std::exp(1.0);
  const double k3 = (std::cosh(2.0) + 2 * std::cosh(1.0)) / (e * e + 2 / e);
  CHECK(std::abs(bipartivity(wtest::complete_graph(3)) - k3) < 1e-12);
  CHECK(std::abs(k3 - 0.8429) < 1e-4);
  CHECK(algebraic_connectivity(wtest::complete_graph(2)) == doctest::Approx(2.0));
  CHECK(algebraic_connectivity(wtest::cycle_graph(4)) == doctest::Approx(2.0));
  CHECK(algebraic_connectivity(wtest::from_pairs(4, {{0, 1}, {2, 3}})) == 0.0);
  CHECK_THROWS_AS(algebraic_connectivity(wtest::empty_graph(1)), ParameterError);
}

TEST_CASE("spectral invariants on random graphs") {
  wtest::Rng rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    const auto g = wtest::gnp(60, 0.08, rng);
    const auto s = adjacency_spectrum(g);
    CHECK(std::abs(s.values.sum()) < 1e-8);
    CHECK(std::abs(s.values.squaredNorm() - 2.0 * g.edge_count()) <= 1e-6 * 2.0 * g.edge_count() + 1e-12);
    CHECK(s.values(0) >= std::abs(s.values(s.values.size() - 1)) - 1e-10);
    const double b = bipartivity(g);
    CHECK(b > 0.5);
    CHECK(b <= 1.0 + 1e-15);
    const double ac = algebraic_connectivity(g);
    CHECK(ac >= 0.0);
    CHECK((ac > 1e-10) == (connected_components(g).count() == 1));
  }
}

TEST_CASE("bipartivity is 1 exactly for bipartite graphs") {
  wtest::Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    CHECK(std::abs(bipartivity(wtest::random_tree(30, rng)) - 1.0) < 1e-10);
    CHECK(std::abs(bipartivity(wtest::cycle_graph(4 + 2 * rep)) - 1.0) < 1e-10);
    // Odd cycles beyond C7 differ from 1 by less than the rounding floor.
    if (rep < 3) CHECK(bipartivity(wtest::cycle_graph(3 + 2 * rep)) < 1.0 - 1e-6);
  }
  CHECK(std::abs(bipartivity(wtest::diamond_lattice(3)) - 1.0) < 1e-10);
}

TEST_CASE("algebraic connectivity is edge monotone") {
  wtest::Rng rng(40);
  for (int rep = 0; rep < 15; ++rep) {
    const auto g = wtest::gnp(40, 0.1, rng);
    auto extra = wtest::shuffled_second_neighbours(g, rep);
    auto prev = algebraic_connectivity(g);
    for (std::size_t k = 1; k <= std::min<std::size_t>(extra.size(), 12); k += 3) {
      const double next = algebraic_connectivity(wtest::with_extra_edges(g, extra, k));
      CHECK(prev <= next + 1e-10);
      prev = next;
    }
  }
}

TEST_CASE("large-graph path agrees with the dense path") {
  wtest::Rng rng(8);
  const auto g = wtest::connected_gnp(400, 0.015, rng);
  SpectralOptions dense;
  SpectralOptions sparse;
  sparse.dense_threshold = 100;
  sparse.trace_rel_tol = 2e-2;
  const auto a = spectral_summary(g, 5, dense);
  const auto b = spectral_summary(g, 5, sparse);
  CHECK_FALSE(a.estimated);
  CHECK(b.estimated);
  CHECK(std::abs(a.lambda_max - b.lambda_max) < 1e-8);
  CHECK(std::abs(a.lambda_min - b.lambda_min) < 1e-8);
  CHECK(std::abs(a.algebraic_connectivity - b.algebraic_connectivity) < 1e-7);
  CHECK(std::abs(a.energy - b.energy) <= 3 * 2e-2 * a.energy);
  CHECK(std::abs(a.bipartivity - b.bipartivity) <= 6 * 2e-2 * a.bipartivity);
  CHECK(a.moments == b.moments);
  CHECK(std::abs(spectral_radius(g) - a.lambda_max) < 1e-8);
}
