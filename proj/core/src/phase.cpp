#include "waternet/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "waternet/error.hpp"

namespace waternet {
namespace {

using nlohmann::json;

bool same_params(const CentralityParams& a, const CentralityParams& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.normalized_by_edges == b.normalized_by_edges;
}

std::vector<double> uniform_edges(std::size_t bins, double lo, double hi) {
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  e.back() = hi;
  return e;
}

bool same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  const double tol = 1e-12 * std::max({1.0, std::abs(a.front()), std::abs(a.back())});
  return std::abs(a.front() - b.front()) <= tol && std::abs(a.back() - b.back()) <= tol;
}

/// Probability density on `edges`, redistributing each source bin's count in
/// proportion to its overlap with the target bins.
std::vector<double> density_on(const Histogram& h, const std::vector<double>& edges) {
  const auto bins = edges.size() - 1;
  std::vector<double> mass(bins, 0.0);
  const double total = static_cast<double>(h.total);
  if (total == 0.0) return mass;
  if (same_grid(h.edges, edges)) {
    for (std::size_t i = 0; i < bins; ++i) mass[i] = static_cast<double>(h.counts[i]);
  } else {
    const double tw = (edges.back() - edges.front()) / static_cast<double>(bins);
    for (std::size_t s = 0; s < h.bins(); ++s) {
      if (h.counts[s] == 0) continue;
      const double a = h.edges[s];
      const double b = h.edges[s + 1];
      const double first = std::floor((a - edges.front()) / tw);
      auto k = static_cast<std::size_t>(std::clamp(first - 1.0, 0.0, static_cast<double>(bins - 1)));
      for (; k < bins && edges[k] < b; ++k) {
        const double overlap = std::min(b, edges[k + 1]) - std::max(a, edges[k]);
        if (overlap > 0.0) mass[k] += static_cast<double>(h.counts[s]) * overlap / (b - a);
      }
    }
  }
  const double w = (edges.back() - edges.front()) / static_cast<double>(bins);
  for (auto& m : mass) m /= total * w;
  return mass;
}

std::vector<double> moving_average(const std::vector<double>& x, std::size_t window) {
  if (window <= 1) return x;
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto a = std::max<std::ptrdiff_t>(0, i - half);
    const auto b = std::min<std::ptrdiff_t>(n - 1, i + half);
    double s = 0.0;
    for (auto k = a; k <= b; ++k) s += x[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(b - a + 1);
  }
  return out;
}

std::size_t argmax(const std::vector<double>& x) {
  return static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
}

}  // namespace

std::string_view histogram_mode_name(HistogramMode m) {
  return m == HistogramMode::raw ? "raw" : "per_edge";
}

Histogram make_histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw ParameterError("histogram needs at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw ParameterError("invalid histogram range");
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges = uniform_edges(bins, lo, hi);
  h.counts.assign(bins, 0);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) throw ParameterError("value outside histogram range");
    auto k = static_cast<std::size_t>((v - lo) / w);
    k = std::min(k, bins - 1);
    ++h.counts[k];
  }
  h.total = values.size();
  return h;
}

Histogram pool_distribution(std::span<const CentralityVector> vectors, std::size_t bins, HistogramMode mode) {
  if (vectors.empty()) throw ParameterError("pool_distribution needs at least one score vector");
  const auto& first = vectors.front();
  std::vector<double> pooled;
  for (const auto& v : vectors) {
    if (v.measure != first.measure) throw ParameterError("cannot pool different measures");
    if (!same_params(v.params, first.params)) throw ParameterError("cannot pool different parameters");
    double scale = 1.0;
    if (mode == HistogramMode::per_edge) {
      if (v.params.normalized_by_edges) throw ParameterError("scores are already normalised by edges");
      if (v.edge_count == 0) throw ParameterError("per-edge pooling of a graph without edges");
      scale = 1.0 / static_cast<double>(v.edge_count);
    }
    for (double s : v.scores) {
      if (!std::isfinite(s)) throw ParameterError("non-finite score");
      pooled.push_back(s * scale);
    }
  }
  if (pooled.empty()) throw ParameterError("no scores to pool");
  const auto [mn, mx] = std::minmax_element(pooled.begin(), pooled.end());
  auto h = make_histogram(pooled, bins, *mn, *mx);
  h.mode = mode;
  h.measure = first.measure;
  h.params = first.params;
  if (mode == HistogramMode::per_edge) h.params.normalized_by_edges = true;
  return h;
}

std::string histogram_to_json(const Histogram& h) {
  json j;
  j["edges"] = h.edges;
  j["counts"] = h.counts;
  j["total"] = h.total;
  j["mode"] = std::string(histogram_mode_name(h.mode));
  if (h.measure) j["measure"] = std::string(measure_name(*h.measure));
  json p = json::object();
  if (h.params.alpha) p["alpha"] = *h.params.alpha;
  if (h.params.beta) p["beta"] = *h.params.beta;
  p["normalized_by_edges"] = h.params.normalized_by_edges;
  j["params"] = p;
  return j.dump(2);
}

Histogram histogram_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid histogram JSON: ") + e.what());
  }
  Histogram h;
  try {
    h.edges = j.at("edges").get<std::vector<double>>();
    h.counts = j.at("counts").get<std::vector<std::uint64_t>>();
    h.total = j.at("total").get<std::uint64_t>();
    const auto mode = j.value("mode", std::string("raw"));
    if (mode == "raw") {
      h.mode = HistogramMode::raw;
    } else if (mode == "per_edge") {
      h.mode = HistogramMode::per_edge;
    } else {
      throw ParseError(0, "unknown histogram mode '" + mode + "'");
    }
    if (j.contains("measure")) h.measure = parse_measure(j.at("measure").get<std::string>());
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (p.contains("alpha")) h.params.alpha = p.at("alpha").get<double>();
      if (p.contains("beta")) h.params.beta = p.at("beta").get<double>();
      h.params.normalized_by_edges = p.value("normalized_by_edges", false);
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid histogram JSON: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(0, e.what());
  }
  if (h.counts.empty() || h.edges.size() != h.counts.size() + 1) {
    throw ParseError(0, "histogram needs bins + 1 edges");
  }
  for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
    if (!(h.edges[i] < h.edges[i + 1])) throw ParseError(0, "histogram edges must be strictly increasing");
  }
  std::uint64_t sum = 0;
  for (auto c : h.counts) sum += c;
  if (sum != h.total) throw ParseError(0, "histogram counts do not sum to total");
  return h;
}

double crossing_point(const Histogram& low, const Histogram& high, const CrossingOptions& opts) {
  if (low.total == 0 || high.total == 0) throw ParameterError("crossing_point needs nonempty histograms");
  std::vector<double> edges;
  if (same_grid(low.edges, high.edges)) {
    edges = low.edges;
  } else {
    const double lo = std::min(low.lo(), high.lo());
    const double hi = std::max(low.hi(), high.hi());
    const double w = std::min(low.width(), high.width());
    const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / w - 1e-9));
    edges = uniform_edges(std::max<std::size_t>(bins, 1), lo, hi);
  }
  const auto dl = moving_average(density_on(low, edges), opts.smoothing_window);
  const auto dh = moving_average(density_on(high, edges), opts.smoothing_window);
  const auto bins = dl.size();
  std::vector<double> centre(bins);
  for (std::size_t i = 0; i < bins; ++i) centre[i] = 0.5 * (edges[i] + edges[i + 1]);

  const auto ml = argmax(dl);
  const auto mh = argmax(dh);
  const auto a = std::min(ml, mh);
  const auto b = std::max(ml, mh);
  if (a == b) throw CrossingError("distributions do not cross: modes coincide");

  // Differences within this band are treated as zero so that rounding in the
  // density estimate cannot fabricate sign changes.
  double scale = 0.0;
  for (std::size_t i = a; i <= b; ++i) scale = std::max({scale, dl[i], dh[i]});
  const double eps = 1e-12 * scale;
  auto sign = [&](std::size_t i) {
    const double d = dl[i] - dh[i];
    return d > eps ? 1 : (d < -eps ? -1 : 0);
  };

  double best_x = std::numeric_limits<double>::quiet_NaN();
  double best_density = -1.0;
  auto consider = [&](double x, double density) {
    if (!(x > centre[a] && x < centre[b])) return;
    if (density > best_density * (1.0 + 1e-12) || (std::abs(density - best_density) <= 1e-12 * density && x < best_x)) {
      best_x = x;
      best_density = density;
    }
  };

  std::size_t prev = a;
  int prev_sign = sign(a);
  for (std::size_t j = a + 1; j <= b; ++j) {
    const int s = sign(j);
    if (s == 0) continue;
    if (prev_sign != 0 && s != prev_sign) {
      if (j == prev + 1) {
        const double d0 = dl[prev] - dh[prev];
        const double d1 = dl[j] - dh[j];
        const double t = d0 / (d0 - d1);
        const double x = centre[prev] + t * (centre[j] - centre[prev]);
        const double density = (1.0 - t) * (dl[prev] + dh[prev]) + t * (dl[j] + dh[j]);
        consider(x, density);
      } else {
        // A run of equal densities: take the middle of the run.
        const double x = 0.5 * (centre[prev + 1] + centre[j - 1]);
        double density = 0.0;
        for (auto k = prev + 1; k < j; ++k) density += dl[k] + dh[k];
        consider(x, density / static_cast<double>(j - prev - 1));
      }
    }
    prev = j;
    prev_sign = s;
  }
  if (std::isnan(best_x)) throw CrossingError("distributions do not cross between their modes");
  return best_x;
}

PhaseReport classify(std::span<const CentralityVector> vectors, double x_star) {
  if (!std::isfinite(x_star)) throw ParameterError("x_star must be finite");
  PhaseReport r;
  r.x_star = x_star;
  if (!vectors.empty()) {
    r.measure = vectors.front().measure;
    r.params = vectors.front().params;
  }
  for (const auto& v : vectors) {
    auto& labels = r.labels.emplace_back(v.scores.size(), PhaseLabel::HDL);
    for (std::size_t i = 0; i < v.scores.size(); ++i) {
      if (v.scores[i] <= x_star) {
        labels[i] = PhaseLabel::LDL;
        ++r.ldl_count;
      }
    }
    r.total += v.scores.size();
  }
  if (r.total > 0) r.ldl_fraction = static_cast<double>(r.ldl_count) / static_cast<double>(r.total);
  return r;
}

PatchResult patches(const MolecularGraph& g, std::span<const double> scores, PatchThreshold threshold) {
  const auto n = g.order();
  if (scores.size() != n) throw ParameterError("score vector length differs from node count");
  PatchResult out;
  if (threshold.kind == PatchThreshold::Kind::mean) {
    double sum = 0.0;
    for (double s : scores) sum += s;
    out.threshold = n > 0 ? sum / static_cast<double>(n) : 0.0;
  } else {
    out.threshold = threshold.value;
  }
  std::vector<char> hot(n, 0);
  for (NodeId i = 0; i < n; ++i) hot[i] = scores[i] > out.threshold ? 1 : 0;

  std::vector<char> seen(n, 0);
  std::vector<NodeId> comp;
  for (NodeId s = 0; s < n; ++s) {
    if (!hot[s] || seen[s]) continue;
    comp.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId w : g.neighbors(comp[head])) {
        if (hot[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    if (comp.size() < 2) {
      out.singletons.push_back(s);
      continue;
    }
    Patch p;
    p.nodes = comp;
    std::sort(p.nodes.begin(), p.nodes.end());
    p.size = p.nodes.size();
    double sum = 0.0;
    for (NodeId v : p.nodes) sum += scores[v];
    p.mean_score = sum / static_cast<double>(p.size);
    if (p.size < n) {
      const auto d = subgraph_densities(g, p.nodes);
      p.internal_density = d.internal;
      p.external_density = d.external;
    } else {
      p.internal_density = density(g);
    }
    out.patches.push_back(std::move(p));
  }
  std::stable_sort(out.patches.begin(), out.patches.end(),
                   [](const Patch& x, const Patch& y) { return x.size > y.size; });
  return out;
}

}  // namespace waternet
