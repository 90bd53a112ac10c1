// Randomised invariants across modules. Each property runs on a stream of
// seeded cases; a failing case prints its seed so it can be replayed alone.

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "waternet/global_metrics.hpp"
#include "waternet/netbuild.hpp"
#include "waternet/paths.hpp"
#include "waternet/phase.hpp"
#include "waternet/spectral.hpp"
#include "waternet/walkers.hpp"

using namespace waternet;

namespace {

void for_all_seeds(int cases, std::uint64_t base, const std::function<void(wtest::Rng&)>& prop) {
  for (int c = 0; c < cases; ++c) {
    const auto seed = base + static_cast<std::uint64_t>(c);
    CAPTURE(seed);
    wtest::Rng rng(seed);
    prop(rng);
  }
}

MolecularGraph arbitrary_graph(wtest::Rng& rng) {
  std::uniform_int_distribution<std::size_t> n(2, 70);
  std::uniform_real_distribution<double> p(0.01, 0.3);
  return wtest::gnp(n(rng), p(rng), rng);
}

}  // namespace

TEST_CASE("geodesic centralities are permutation equivariant") {
  for_all_seeds(30, 100, [](wtest::Rng& rng) {
    const auto g = arbitrary_graph(rng);
    const auto perm = wtest::random_permutation(g.order(), rng);
    const auto h = wtest::relabel(g, perm);
    const auto cg = closeness(g).scores, ch = closeness(h).scores;
    const auto bg = betweenness(g).scores, bh = betweenness(h).scores;
    for (std::size_t i = 0; i < g.order(); ++i) {
      CHECK(std::abs(cg[i] - ch[perm[i]]) <= 1e-12);
      CHECK(std::abs(bg[i] - bh[perm[i]]) <= 1e-9 * (1 + bg[i]));
    }
  });
}

TEST_CASE("betweenness totals equal summed path interiors") {
  // Sum over nodes of BC = sum over connected unordered pairs of (d - 1).
  for_all_seeds(30, 200, [](wtest::Rng& rng) {
    const auto g = arbitrary_graph(rng);
    const auto d = distance_summary(g);
    double pairs = 0.0;
    for (NodeId i = 0; i < g.order(); ++i)
      for (NodeId j = i + 1; j < g.order(); ++j)
        if (auto x = d.distance(i, j)) pairs += *x - 1.0;
    double total = 0.0;
    for (double b : betweenness(g).scores) total += b;
    CHECK(total == doctest::Approx(pairs).epsilon(1e-12));
  });
}

TEST_CASE("global metric invariants") {
  for_all_seeds(40, 300, [](wtest::Rng& rng) {
    const auto g = arbitrary_graph(rng);
    const auto gm = global_metrics(g);
    CHECK(gm.cycles.s3 >= 0);
    CHECK(gm.cycles.s4 >= 0);
    CHECK(gm.cycles.s5 >= 0);
    CHECK(gm.fragments.p3 >= 0);
    std::int64_t p2 = 0;
    for (auto k : g.degrees()) p2 += static_cast<std::int64_t>(k * (k - 1) / 2);
    CHECK(gm.fragments.p2 == p2);
    if (gm.transitivity) {
      CHECK(*gm.transitivity >= 0.0);
      CHECK(*gm.transitivity <= 1.0);
    }
    if (gm.assortativity.value) {
      CHECK(*gm.assortativity.value >= -1.0 - 1e-12);
      CHECK(*gm.assortativity.value <= 1.0 + 1e-12);
    }
  });
}

TEST_CASE("spectral invariants") {
  for_all_seeds(30, 400, [](wtest::Rng& rng) {
    const auto g = arbitrary_graph(rng);
    const auto s = spectral_summary(g);
    CHECK(s.lambda_max >= std::abs(s.lambda_min) - 1e-10);
    CHECK(s.bipartivity > 0.5);
    CHECK(s.bipartivity <= 1.0 + 1e-15);
    CHECK(s.moments[0] == 0);
    CHECK(s.moments[1] == static_cast<std::int64_t>(2 * g.edge_count()));
    CHECK(std::abs(s.spectrum->sum()) < 1e-8);
    // mu_3 from the floating spectrum agrees with the exact count.
    CHECK(std::abs(s.spectrum->array().cube().sum() - static_cast<double>(s.moments[2])) < 1e-6 * (1 + s.moments[2]));
  });
}

TEST_CASE("walk centralities are at least one and TC dominates SUB") {
  for_all_seeds(20, 500, [](wtest::Rng& rng) {
    const auto g = arbitrary_graph(rng);
    const double rho = spectral_radius(g);
    const double alpha = rho > 0 ? 0.9 / rho : 0.5;
    const auto k = katz(g, alpha).scores;
    const auto sub = subgraph_centrality(g).scores;
    const auto tc = total_communicability(g).scores;
    for (std::size_t i = 0; i < g.order(); ++i) {
      CHECK(k[i] >= 1.0 - 1e-12);
      CHECK(sub[i] >= 1.0 - 1e-12);
      CHECK(tc[i] >= sub[i] * (1 - 1e-12));
    }
  });
}

TEST_CASE("crossing point is symmetric under swapping its inputs") {
  for_all_seeds(20, 600, [](wtest::Rng& rng) {
    std::uniform_real_distribution<double> sep(3.0, 6.0);
    std::normal_distribution<double> z;
    const double d = sep(rng);
    CentralityVector a, b;
    a.measure = b.measure = Measure::katz;
    for (int i = 0; i < 20000; ++i) {
      a.scores.push_back(z(rng));
      b.scores.push_back(d + 1.3 * z(rng));
    }
    const auto ha = pool_distribution(std::vector<CentralityVector>{a}, 120);
    const auto hb = pool_distribution(std::vector<CentralityVector>{b}, 160);
    CHECK(crossing_point(ha, hb) == crossing_point(hb, ha));
  });
}

TEST_CASE("neighbour strategies agree on random frames") {
  for_all_seeds(15, 700, [](wtest::Rng& rng) {
    std::uniform_real_distribution<double> side(0.75, 2.5);
    const Vec3 box{side(rng), side(rng), side(rng)};
    const auto f = wtest::random_frame(150, box, rng);
    const auto a = build_graph(f, {0.35, NeighborStrategy::all_pairs});
    const auto c = build_graph(f, {0.35, NeighborStrategy::cell_list});
    CHECK(std::equal(a.edges().begin(), a.edges().end(), c.edges().begin(), c.edges().end()));
  });
}
