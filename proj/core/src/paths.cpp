#include "waternet/paths.hpp"

#include <algorithm>

#include "waternet/error.hpp"
#include "waternet/parallel.hpp"

namespace waternet {
namespace {

/// BFS hop counts from s into `dist` (-1 = unreached). Returns the visit order.
void bfs(const MolecularGraph& g, NodeId s, std::vector<std::int32_t>& dist, std::vector<NodeId>& order) {
  std::fill(dist.begin(), dist.end(), -1);
  order.clear();
  dist[s] = 0;
  order.push_back(s);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        order.push_back(w);
      }
    }
  }
}

/// Contiguous source blocks, one per worker, so each owns its accumulator.
std::vector<std::pair<std::size_t, std::size_t>> blocks(std::size_t n, std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t < threads; ++t) out.emplace_back(n * t / threads, n * (t + 1) / threads);
  return out;
}

}  // namespace

CentralityVector closeness(const MolecularGraph& g, const PathOptions& opts) {
  CentralityVector out;
  out.measure = Measure::closeness;
  out.edge_count = g.edge_count();
  const auto n = g.order();
  out.scores.assign(n, 0.0);
  if (n < 2) return out;
  const auto ranges = blocks(n, opts.threads);
  parallel_for(ranges.size(), ranges.size(), [&](std::size_t b) {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> order;
    for (auto s = ranges[b].first; s < ranges[b].second; ++s) {
      bfs(g, static_cast<NodeId>(s), dist, order);
      const auto reach = order.size();
      if (reach < 2) continue;
      std::uint64_t far = 0;
      for (NodeId v : order) far += static_cast<std::uint64_t>(dist[v]);
      const double r1 = static_cast<double>(reach - 1);
      out.scores[s] = r1 * r1 / (static_cast<double>(far) * static_cast<double>(n - 1));
    }
  });
  return out;
}

CentralityVector betweenness(const MolecularGraph& g, const PathOptions& opts) {
  CentralityVector out;
  out.measure = Measure::betweenness;
  out.edge_count = g.edge_count();
  const auto n = g.order();
  out.scores.assign(n, 0.0);
  if (n < 3) return out;
  const auto ranges = blocks(n, opts.threads);
  std::vector<std::vector<double>> partial(ranges.size(), std::vector<double>(n, 0.0));
  parallel_for(ranges.size(), ranges.size(), [&](std::size_t b) {
    auto& acc = partial[b];
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> order;
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    for (auto s = ranges[b].first; s < ranges[b].second; ++s) {
      bfs(g, static_cast<NodeId>(s), dist, order);
      for (NodeId v : order) sigma[v] = 0.0;
      sigma[s] = 1.0;
      for (NodeId u : order) {
        for (NodeId w : g.neighbors(u)) {
          if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
        }
      }
      for (NodeId v : order) delta[v] = 0.0;
      // Predecessors are recovered from distances rather than stored lists.
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId w = *it;
        for (NodeId v : g.neighbors(w)) {
          if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != s) acc[w] += delta[w];
      }
    }
  });
  for (const auto& acc : partial) {
    for (std::size_t i = 0; i < n; ++i) out.scores[i] += acc[i];
  }
  for (auto& s : out.scores) s *= 0.5;  // each unordered pair was seen from both ends
  return out;
}

std::optional<std::uint32_t> DistanceSummary::distance(NodeId a, NodeId b) const {
  if (hops.empty()) throw ParameterError("distance matrix was not stored");
  if (a >= n || b >= n) throw ParameterError("node id out of range");
  const auto d = hops[static_cast<std::size_t>(a) * n + b];
  if (d < 0) return std::nullopt;
  return static_cast<std::uint32_t>(d);
}

DistanceSummary distance_summary(const MolecularGraph& g, bool store_distances, const PathOptions& opts) {
  DistanceSummary out;
  const auto n = g.order();
  out.n = n;
  out.farness.assign(n, 0);
  if (store_distances) out.hops.assign(n * n, -1);
  const auto ranges = blocks(n, opts.threads);
  std::vector<std::uint64_t> pairs(ranges.size(), 0);
  std::vector<std::uint32_t> diam(ranges.size(), 0);
  parallel_for(ranges.size(), ranges.size(), [&](std::size_t b) {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> order;
    for (auto s = ranges[b].first; s < ranges[b].second; ++s) {
      bfs(g, static_cast<NodeId>(s), dist, order);
      std::uint64_t far = 0;
      for (NodeId v : order) {
        far += static_cast<std::uint64_t>(dist[v]);
        diam[b] = std::max(diam[b], static_cast<std::uint32_t>(dist[v]));
      }
      out.farness[s] = far;
      pairs[b] += order.size() - 1;
      if (store_distances) std::copy(dist.begin(), dist.end(), out.hops.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
  });
  std::uint64_t total = 0;
  for (auto f : out.farness) total += f;
  for (std::size_t b = 0; b < ranges.size(); ++b) {
    out.connected_pairs += pairs[b];
    out.diameter = std::max(out.diameter, diam[b]);
  }
  if (out.connected_pairs > 0) {
    out.aspl = static_cast<double>(total) / static_cast<double>(out.connected_pairs);
  }
  return out;
}

}  // namespace waternet
