#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "waternet/error.hpp"
#include "waternet/phase.hpp"

using namespace waternet;

namespace {

CentralityVector scores(std::vector<double> s, std::size_t m = 1, Measure measure = Measure::total_communicability) {
  CentralityVector v;
  v.measure = measure;
  v.scores = std::move(s);
  v.edge_count = m;
  v.params.beta = 1.0;
  return v;
}

CentralityVector gaussian(double mean, double sd, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(mean, sd);
  std::vector<double> s(n);
  for (auto& x : s) x = z(rng);
  return scores(std::move(s));
}

}  // namespace

TEST_CASE("pool_distribution") {
  const std::vector<CentralityVector> one{scores({1, 1, 3, 3})};
  const auto h = pool_distribution(one, 2);
  CHECK(h.counts == std::vector<std::uint64_t>{2, 2});
  CHECK(h.total == 4);
  CHECK(h.edges == std::vector<double>{1, 2, 3});

  const std::vector<CentralityVector> per{scores({10, 20}, 10)};
  const auto pe = pool_distribution(per, 1, HistogramMode::per_edge);
  CHECK(pe.lo() == 1.0);
  CHECK(pe.hi() == 2.0);
  CHECK(pe.params.normalized_by_edges);

  std::vector<CentralityVector> mixed{scores({1}), scores({2}, 1, Measure::katz)};
  CHECK_THROWS_AS(pool_distribution(mixed, 5), ParameterError);
  mixed[1] = scores({2});
  mixed[1].params.beta = 2.0;
  CHECK_THROWS_AS(pool_distribution(mixed, 5), ParameterError);
  CHECK_THROWS_AS(pool_distribution(std::vector<CentralityVector>{}, 5), ParameterError);
}

TEST_CASE("histogram JSON round trip") {
  const std::vector<CentralityVector> v{gaussian(3.0, 1.0, 1000, 1)};
  const auto h = pool_distribution(v, 50);
  const auto back = histogram_from_json(histogram_to_json(h));
  CHECK(back.edges == h.edges);
  CHECK(back.counts == h.counts);
  CHECK(back.total == h.total);
  CHECK(back.measure == h.measure);
  CHECK(back.params == h.params);
  CHECK_THROWS_AS(histogram_from_json("{\"edges\":[0,1],\"counts\":[1,2],\"total\":3}"), ParseError);
  CHECK_THROWS_AS(histogram_from_json("{\"edges\":[0,1],\"counts\":[2],\"total\":3}"), ParseError);
  CHECK_THROWS_AS(histogram_from_json("[1,"), ParseError);
}

TEST_CASE("crossing point of two symmetric Gaussians") {
  const std::vector<CentralityVector> lo{gaussian(4.0, 1.0, 50000, 2)};
  const std::vector<CentralityVector> hi{gaussian(6.0, 1.0, 50000, 3)};
  // Separate grids are re-binned onto a common one.
  auto hl = pool_distribution(lo, 200);
  auto hh = pool_distribution(hi, 200);
  const double x = crossing_point(hl, hh);
  CHECK(std::abs(x - 5.0) < std::max(hl.width(), hh.width()) * 2);
  CHECK(crossing_point(hh, hl) == x);

  std::vector<CentralityVector> both{lo[0], hi[0]};
  const auto grid = pool_distribution(both, 200);
  const auto sl = make_histogram(lo[0].scores, 200, grid.lo(), grid.hi());
  const auto sh = make_histogram(hi[0].scores, 200, grid.lo(), grid.hi());
  const double xs = crossing_point(sl, sh);
  CHECK(std::abs(xs - 5.0) < 2 * grid.width());
  CHECK(crossing_point(sh, sl) == xs);
}

TEST_CASE("crossing point errors") {
  const std::vector<CentralityVector> a{gaussian(4.0, 1.0, 5000, 2)};
  const auto h = pool_distribution(a, 100);
  CHECK_THROWS_AS(crossing_point(h, h), CrossingError);
  Histogram empty = h;
  empty.counts.assign(h.bins(), 0);
  empty.total = 0;
  CHECK_THROWS_AS(crossing_point(h, empty), ParameterError);
}

TEST_CASE("classify") {
  const std::vector<CentralityVector> v{scores({3, 5, 7})};
  const auto r = classify(v, 5.0);
  CHECK(r.labels[0] == std::vector<PhaseLabel>{PhaseLabel::LDL, PhaseLabel::LDL, PhaseLabel::HDL});
  CHECK(r.ldl_fraction == doctest::Approx(2.0 / 3.0));
  CHECK(classify(v, 1.0).ldl_fraction == 0.0);
  CHECK_THROWS_AS(classify(v, std::nan("")), ParameterError);

  const std::vector<CentralityVector> g{gaussian(0.0, 1.0, 2000, 9), gaussian(0.5, 1.0, 2000, 10)};
  double prev = -1.0;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    const double f = classify(g, x).ldl_fraction;
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("patches") {
  const auto p4 = wtest::path_graph(4);
  const std::vector<double> s{0, 1, 1, 0};
  const auto r = patches(p4, s);
  REQUIRE(r.patches.size() == 1);
  CHECK(r.patches[0].nodes == std::vector<NodeId>{1, 2});
  CHECK(r.patches[0].size == 2);
  CHECK(r.patches[0].internal_density == 1.0);
  CHECK(r.patches[0].external_density == doctest::Approx(2.0 / 4.0));
  CHECK(r.threshold == 0.5);

  const std::vector<double> flat{2, 2, 2, 2};
  CHECK(patches(p4, flat).patches.empty());

  const std::vector<double> single{5, 0, 0, 0};
  const auto sr = patches(p4, single);
  CHECK(sr.patches.empty());
  CHECK(sr.singletons == std::vector<NodeId>{0});

  CHECK_THROWS_AS(patches(p4, std::vector<double>{1, 2}), ParameterError);
  const auto explicit_threshold = patches(p4, s, PatchThreshold::at(-1.0));
  REQUIRE(explicit_threshold.patches.size() == 1);
  CHECK(explicit_threshold.patches[0].size == 4);
}

TEST_CASE("patches are sorted, connected, and shift invariant under the mean rule") {
  wtest::Rng rng(5);
  const auto g = wtest::gnp(200, 0.02, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(200);
  for (auto& x : s) x = u(rng);
  const auto r = patches(g, s);
  for (std::size_t k = 1; k < r.patches.size(); ++k) CHECK(r.patches[k - 1].size >= r.patches[k].size);
  for (const auto& p : r.patches) {
    CHECK(p.size >= 2);
    const auto sub = subgraph_densities(g, p.nodes);
    CHECK(sub.internal >= 2.0 / (p.size * (p.size - 1.0)) * (p.size - 1.0) - 1e-12);  // spanning tree
  }
  std::vector<double> shifted = s;
  for (auto& x : shifted) x += 17.25;
  const auto r2 = patches(g, shifted);
  REQUIRE(r2.patches.size() == r.patches.size());
  for (std::size_t k = 0; k < r.patches.size(); ++k) CHECK(r2.patches[k].nodes == r.patches[k].nodes);
}
