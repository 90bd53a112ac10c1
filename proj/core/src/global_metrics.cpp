#include "waternet/global_metrics.hpp"

#include <algorithm>

#include "waternet/error.hpp"
#include "waternet/spectral.hpp"

namespace waternet {
namespace {

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) {
    throw InternalError(std::string("inexact division computing ") + what + ": " + std::to_string(num) +
                        " / " + std::to_string(den));
  }
  return num / den;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("fragment count overflows 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("fragment count overflows 64 bits");
  return r;
}

CycleCounts cycles_from(const MolecularGraph& g, const std::vector<std::int64_t>& t) {
  const auto deg = g.degrees();
  const auto m = static_cast<std::int64_t>(g.edge_count());
  CycleCounts c;
  std::int64_t mu3 = 0;
  for (auto ti : t) mu3 = checked_add(mu3, 2 * ti);
  c.s3 = exact_div(mu3, 6, "S3");

  std::int64_t sum_kk = 0;
  for (auto k : deg) {
    const auto ki = static_cast<std::int64_t>(k);
    sum_kk = checked_add(sum_kk, checked_mul(ki, ki - 1));
  }
  const auto mu4 = spectral_moment(g, 4);
  c.s4 = exact_div(mu4 - 2 * sum_kk - 2 * m, 8, "S4");

  std::int64_t tk = 0;
  for (NodeId i = 0; i < g.order(); ++i) {
    const auto ki = static_cast<std::int64_t>(deg[i]);
    if (ki > 2) tk = checked_add(tk, checked_mul(t[i], ki - 2));
  }
  const auto mu5 = spectral_moment(g, 5);
  c.s5 = exact_div(mu5 - 30 * c.s3 - 10 * tk, 10, "S5");
  return c;
}

FragmentCounts fragments_from(const MolecularGraph& g, std::int64_t s3) {
  const auto deg = g.degrees();
  FragmentCounts f;
  f.p1 = static_cast<std::int64_t>(g.edge_count());
  for (auto k : deg) {
    const auto ki = static_cast<std::int64_t>(k);
    f.p2 = checked_add(f.p2, ki * (ki - 1) / 2);
    f.s13 = checked_add(f.s13, ki * (ki - 1) * (ki - 2) / 6);
  }
  std::int64_t p3 = 0;
  for (const auto& e : g.edges()) {
    p3 = checked_add(p3, checked_mul(static_cast<std::int64_t>(deg[e.u]) - 1,
                                     static_cast<std::int64_t>(deg[e.v]) - 1));
  }
  f.p3 = p3 - 3 * s3;
  return f;
}

Assortativity assortativity_from(const FragmentCounts& f, std::int64_t s3) {
  Assortativity a;
  if (f.p1 == 0) {
    a.reason = "no edges";
    return a;
  }
  // r * P1 / P1 with the P2/P1 terms cleared:
  // num = P1 P3 + 3 S3 P1 - P2^2, den = 3 S13 P1 + P2 P1 - P2^2.
  const auto num = checked_add(checked_add(checked_mul(f.p1, f.p3), checked_mul(3 * s3, f.p1)),
                               -checked_mul(f.p2, f.p2));
  const auto den = checked_add(checked_add(checked_mul(3 * f.s13, f.p1), checked_mul(f.p2, f.p1)),
                               -checked_mul(f.p2, f.p2));
  if (den == 0) {
    a.reason = "regular graph";
    return a;
  }
  a.value = static_cast<double>(num) / static_cast<double>(den);
  return a;
}

Clustering clustering_from(const MolecularGraph& g, const std::vector<std::int64_t>& t, std::int64_t s3,
                           std::int64_t p2) {
  Clustering c;
  const auto n = g.order();
  c.local.assign(n, 0.0);
  double sum = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    const auto k = static_cast<double>(g.degree(i));
    if (g.degree(i) >= 2) c.local[i] = 2.0 * static_cast<double>(t[i]) / (k * (k - 1.0));
    sum += c.local[i];
  }
  if (n > 0) c.mean_local = sum / static_cast<double>(n);
  if (p2 > 0) c.transitivity = 3.0 * static_cast<double>(s3) / static_cast<double>(p2);
  return c;
}

}  // namespace

std::vector<std::int64_t> triangles(const MolecularGraph& g) {
  // Sorted adjacency lists: count common neighbours w > v of each edge (u, v).
  std::vector<std::int64_t> t(g.order(), 0);
  for (const auto& e : g.edges()) {
    const auto a = g.neighbors(e.u);
    const auto b = g.neighbors(e.v);
    auto ia = std::upper_bound(a.begin(), a.end(), e.v);
    auto ib = std::upper_bound(b.begin(), b.end(), e.v);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++t[e.u];
        ++t[e.v];
        ++t[*ia];
        ++ia;
        ++ib;
      }
    }
  }
  return t;
}

CycleCounts cycle_counts(const MolecularGraph& g) { return cycles_from(g, triangles(g)); }

FragmentCounts fragment_counts(const MolecularGraph& g) {
  std::int64_t s3 = 0;
  for (auto ti : triangles(g)) s3 += ti;
  return fragments_from(g, s3 / 3);
}

Clustering clustering(const MolecularGraph& g) {
  const auto t = triangles(g);
  std::int64_t s3 = 0;
  for (auto ti : t) s3 += ti;
  s3 /= 3;
  return clustering_from(g, t, s3, fragments_from(g, s3).p2);
}

Assortativity assortativity(const MolecularGraph& g) {
  std::int64_t s3 = 0;
  for (auto ti : triangles(g)) s3 += ti;
  s3 /= 3;
  return assortativity_from(fragments_from(g, s3), s3);
}

GlobalMetrics global_metrics(const MolecularGraph& g) {
  GlobalMetrics gm;
  gm.m = static_cast<std::int64_t>(g.edge_count());
  gm.triangles = triangles(g);
  gm.cycles = cycles_from(g, gm.triangles);
  gm.fragments = fragments_from(g, gm.cycles.s3);
  auto c = clustering_from(g, gm.triangles, gm.cycles.s3, gm.fragments.p2);
  gm.mean_clustering = c.mean_local;
  gm.transitivity = c.transitivity;
  gm.assortativity = assortativity_from(gm.fragments, gm.cycles.s3);
  return gm;
}

namespace {

std::array<double, 3> profile_with_max(std::span<const GlobalMetrics> frames, double max) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  if (frames.empty() || max <= 0.0) return out;
  for (const auto& f : frames) {
    out[0] += static_cast<double>(f.cycles.s3) / max;
    out[1] += static_cast<double>(f.cycles.s4) / max;
    out[2] += static_cast<double>(f.cycles.s5) / max;
  }
  for (auto& v : out) v /= static_cast<double>(frames.size());
  return out;
}

double max_count(std::span<const GlobalMetrics> frames) {
  std::int64_t mx = 0;
  for (const auto& f : frames) mx = std::max({mx, f.cycles.s3, f.cycles.s4, f.cycles.s5});
  return static_cast<double>(mx);
}

}  // namespace

std::array<double, 3> relative_cycle_profile(std::span<const GlobalMetrics> frames) {
  if (frames.empty()) throw ParameterError("relative cycle profile needs at least one frame");
  return profile_with_max(frames, max_count(frames));
}

std::vector<std::array<double, 3>> relative_cycle_profiles(const std::vector<std::vector<GlobalMetrics>>& groups,
                                                           ProfileScope scope) {
  if (groups.empty()) throw ParameterError("relative cycle profile needs at least one group");
  double global_max = 0.0;
  for (const auto& grp : groups) {
    if (grp.empty()) throw ParameterError("relative cycle profile: empty group");
    global_max = std::max(global_max, max_count(grp));
  }
  std::vector<std::array<double, 3>> out;
  for (const auto& grp : groups) {
    out.push_back(profile_with_max(grp, scope == ProfileScope::global ? global_max : max_count(grp)));
  }
  return out;
}

}  // namespace waternet
