#pragma once

// Independent reference implementations. They deliberately share no code
// with the library: exhaustive enumeration for combinatorics and geodesics,
// dense eigendecomposition for matrix functions, the 27-image search for
// periodic distances.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "waternet/frame_io.hpp"
#include "waternet/graph.hpp"

namespace oracle {

using waternet::MolecularGraph;
using waternet::NodeId;

inline Eigen::MatrixXd dense_adjacency(const MolecularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

inline std::vector<std::vector<bool>> adjacency_table(const MolecularGraph& g) {
  std::vector<std::vector<bool>> adj(g.order(), std::vector<bool>(g.order(), false));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  return adj;
}

struct Cycles {
  std::int64_t s3 = 0, s4 = 0, s5 = 0;
};

/// Simple cycles of length 3..5 by DFS over node sequences whose smallest
/// node comes first; each cycle is found twice (two directions).
inline Cycles simple_cycles(const MolecularGraph& g) {
  const auto adj = adjacency_table(g);
  const auto n = g.order();
  std::array<std::int64_t, 6> count{};
  std::vector<NodeId> path;
  std::vector<bool> used(n, false);
  auto dfs = [&](auto&& self, NodeId start, NodeId at) -> void {
    if (path.size() >= 3 && adj[at][start]) ++count[path.size()];
    if (path.size() == 5) return;
    for (NodeId w = start + 1; w < n; ++w) {
      if (used[w] || !adj[at][w]) continue;
      used[w] = true;
      path.push_back(w);
      self(self, start, w);
      path.pop_back();
      used[w] = false;
    }
  };
  for (NodeId s = 0; s < n; ++s) {
    path.assign(1, s);
    used[s] = true;
    dfs(dfs, s, s);
    used[s] = false;
  }
  return {count[3] / 2, count[4] / 2, count[5] / 2};
}

struct Fragments {
  std::int64_t p1 = 0, p2 = 0, p3 = 0, s13 = 0;
};

/// Paths on 2, 3 and 4 distinct nodes (counted as sequences then halved) and
/// 3-leaf stars (centre plus an unordered leaf triple).
inline Fragments fragments(const MolecularGraph& g) {
  const auto adj = adjacency_table(g);
  const auto n = g.order();
  Fragments f;
  std::int64_t seq1 = 0, seq2 = 0, seq3 = 0;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b) {
      if (b == a || !adj[a][b]) continue;
      ++seq1;
      for (NodeId c = 0; c < n; ++c) {
        if (c == a || c == b || !adj[b][c]) continue;
        ++seq2;
        for (NodeId d = 0; d < n; ++d) {
          if (d == a || d == b || d == c || !adj[c][d]) continue;
          ++seq3;
        }
      }
    }
  f.p1 = seq1 / 2;
  f.p2 = seq2 / 2;
  f.p3 = seq3 / 2;
  for (NodeId c = 0; c < n; ++c)
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = x + 1; y < n; ++y)
        for (NodeId z = y + 1; z < n; ++z)
          if (adj[c][x] && adj[c][y] && adj[c][z]) ++f.s13;
  return f;
}

inline std::vector<std::int64_t> triangles_per_node(const MolecularGraph& g) {
  const auto adj = adjacency_table(g);
  const auto n = g.order();
  std::vector<std::int64_t> t(n, 0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c)
        if (adj[a][b] && adj[b][c] && adj[a][c]) {
          ++t[a];
          ++t[b];
          ++t[c];
        }
  return t;
}

struct ClusteringRef {
  double mean_local = 0.0;
  std::optional<double> transitivity;
};

/// Local clustering from neighbour pairs; transitivity from closed over all
/// connected triples (centre plus an unordered neighbour pair).
inline ClusteringRef clustering(const MolecularGraph& g) {
  const auto adj = adjacency_table(g);
  const auto n = g.order();
  ClusteringRef r;
  double sum = 0.0;
  std::int64_t closed = 0, triples = 0;
  for (NodeId v = 0; v < n; ++v) {
    std::int64_t pairs = 0, links = 0;
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = x + 1; y < n; ++y)
        if (adj[v][x] && adj[v][y]) {
          ++pairs;
          if (adj[x][y]) ++links;
        }
    if (pairs > 0) sum += static_cast<double>(links) / static_cast<double>(pairs);
    closed += links;
    triples += pairs;
  }
  if (n > 0) r.mean_local = sum / static_cast<double>(n);
  if (triples > 0) r.transitivity = static_cast<double>(closed) / static_cast<double>(triples);
  return r;
}

/// Pearson correlation of the degrees at either end of every edge, each edge
/// taken in both directions. Absent when the degree variance vanishes.
inline std::optional<double> pearson_assortativity(const MolecularGraph& g) {
  std::vector<double> x, y;
  for (const auto& e : g.edges()) {
    const double a = static_cast<double>(g.degree(e.u));
    const double b = static_cast<double>(g.degree(e.v));
    x.push_back(a);
    y.push_back(b);
    x.push_back(b);
    y.push_back(a);
  }
  if (x.empty()) return std::nullopt;
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

constexpr int unreachable = std::numeric_limits<int>::max() / 4;

/// Floyd-Warshall hop distances.
inline std::vector<std::vector<int>> all_pairs_hops(const MolecularGraph& g) {
  const auto n = g.order();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, unreachable));
  for (NodeId i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::vector<double> closeness(const MolecularGraph& g) {
  const auto d = all_pairs_hops(g);
  const auto n = g.order();
  std::vector<double> out(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double s = 0.0;
    double reach = 0.0;
    for (NodeId j = 0; j < n; ++j)
      if (j != i && d[i][j] < unreachable) {
        s += d[i][j];
        reach += 1.0;
      }
    if (reach > 0.0) out[i] = reach * reach / (s * static_cast<double>(n - 1));
  }
  return out;
}

/// Betweenness by listing every shortest path explicitly (DFS restricted to
/// geodesic steps) for each unordered pair.
inline std::vector<double> betweenness(const MolecularGraph& g) {
  const auto d = all_pairs_hops(g);
  const auto adj = adjacency_table(g);
  const auto n = g.order();
  std::vector<double> bc(n, 0.0);
  std::vector<NodeId> path;
  for (NodeId s = 0; s < n; ++s)
    for (NodeId t = s + 1; t < n; ++t) {
      if (d[s][t] >= unreachable) continue;
      std::vector<std::vector<NodeId>> paths;
      path.assign(1, s);
      auto walk = [&](auto&& self, NodeId at) -> void {
        if (at == t) {
          paths.push_back(path);
          return;
        }
        for (NodeId w = 0; w < n; ++w)
          if (adj[at][w] && d[s][w] == d[s][at] + 1 && d[w][t] == d[at][t] - 1) {
            path.push_back(w);
            self(self, w);
            path.pop_back();
          }
      };
      walk(walk, s);
      for (const auto& p : paths)
        for (std::size_t k = 1; k + 1 < p.size(); ++k) bc[p[k]] += 1.0 / static_cast<double>(paths.size());
    }
  return bc;
}

struct DenseFunctions {
  Eigen::VectorXd subgraph;  ///< diag exp(beta A)
  Eigen::VectorXd total;     ///< exp(beta A) 1
};

inline DenseFunctions dense_exponential(const MolecularGraph& g, double beta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_adjacency(g));
  const Eigen::VectorXd w = (beta * es.eigenvalues().array()).exp();
  const Eigen::MatrixXd& p = es.eigenvectors();
  DenseFunctions f;
  f.subgraph = p.array().square().matrix() * w;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p.rows());
  f.total = p * w.cwiseProduct(p.transpose() * ones);
  return f;
}

/// sum_{k=0}^{terms} alpha^k A^k 1.
inline Eigen::VectorXd katz_neumann(const MolecularGraph& g, double alpha, int terms) {
  const Eigen::MatrixXd a = dense_adjacency(g);
  Eigen::VectorXd term = Eigen::VectorXd::Ones(a.rows());
  Eigen::VectorXd sum = term;
  for (int k = 1; k <= terms; ++k) {
    term = alpha * (a * term);
    sum += term;
  }
  return sum;
}

/// Minimum over the 27 neighbouring periodic images.
inline double pbc_brute(const waternet::Vec3& p, const waternet::Vec3& q, const waternet::Vec3& box) {
  // Reduce q into the same primary cell as p first so 27 images suffice for
  // arbitrary input coordinates.
  waternet::Vec3 d{};
  for (std::size_t a = 0; a < 3; ++a) {
    d[a] = q[a] - p[a];
    d[a] -= box[a] * std::floor(d[a] / box[a]);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        const double x = d[0] + i * box[0];
        const double y = d[1] + j * box[1];
        const double z = d[2] + k * box[2];
        best = std::min(best, std::sqrt(x * x + y * y + z * z));
      }
  return best;
}

/// Kendall tau over the pairs that the reference ranking `ref` separates.
/// A tie in `other` on such a pair counts against agreement, so 1 means
/// `other` orders every separated pair exactly as `ref` does.
inline double kendall_tau(const std::vector<double>& ref, const std::vector<double>& other) {
  std::int64_t concordant = 0, discordant = 0, pairs = 0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    for (std::size_t j = i + 1; j < ref.size(); ++j) {
      if (ref[i] == ref[j]) continue;
      ++pairs;
      const double s = (ref[i] - ref[j]) * (other[i] - other[j]);
      if (s > 0) ++concordant;
      else if (s < 0) ++discordant;
    }
  if (pairs == 0) return 1.0;
  return static_cast<double>(concordant - discordant) / static_cast<double>(pairs);
}

}  // namespace oracle
