#include "waternet/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "waternet/error.hpp"

namespace waternet {

MolecularGraph MolecularGraph::from_edges(std::size_t n, std::vector<Edge> edges,
                                          std::vector<std::size_t> node_map) {
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("graph too large for 32-bit node ids");
  }
  if (!node_map.empty() && node_map.size() != n) {
    throw std::invalid_argument("node_map size differs from node count");
  }
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") out of range for " + std::to_string(n) + " nodes");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  MolecularGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adj_[fill[e.u]++] = e.v;
    g.adj_[fill[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edges_.size());
  for (const auto& e : g.edges_) {
    triplets.emplace_back(e.u, e.v, 1.0);
    triplets.emplace_back(e.v, e.u, 1.0);
  }
  g.matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  g.matrix_.setFromTriplets(triplets.begin(), triplets.end());
  g.matrix_.makeCompressed();

  if (node_map.empty()) {
    node_map.resize(n);
    std::iota(node_map.begin(), node_map.end(), std::size_t{0});
  }
  g.node_map_ = std::move(node_map);
  return g;
}

std::vector<std::size_t> MolecularGraph::degrees() const {
  std::vector<std::size_t> k(n_);
  for (std::size_t i = 0; i < n_; ++i) k[i] = offsets_[i + 1] - offsets_[i];
  return k;
}

bool MolecularGraph::has_edge(NodeId a, NodeId b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

SparseMatrix laplacian(const MolecularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count() + g.order());
  for (NodeId i = 0; i < g.order(); ++i) {
    triplets.emplace_back(i, i, static_cast<double>(g.degree(i)));
  }
  for (const auto& e : g.edges()) {
    triplets.emplace_back(e.u, e.v, -1.0);
    triplets.emplace_back(e.v, e.u, -1.0);
  }
  SparseMatrix L(n, n);
  L.setFromTriplets(triplets.begin(), triplets.end());
  L.makeCompressed();
  return L;
}

ComponentPartition connected_components(const MolecularGraph& g) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  ComponentPartition part;
  part.component_id.assign(g.order(), unset);
  std::vector<NodeId> queue;
  queue.reserve(g.order());
  for (NodeId s = 0; s < g.order(); ++s) {
    if (part.component_id[s] != unset) continue;
    const auto id = part.sizes.size();
    part.component_id[s] = id;
    queue.clear();
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : g.neighbors(queue[head])) {
        if (part.component_id[w] == unset) {
          part.component_id[w] = id;
          queue.push_back(w);
        }
      }
    }
    part.sizes.push_back(queue.size());
  }
  return part;
}

double density(const MolecularGraph& g) {
  const auto n = static_cast<double>(g.order());
  if (g.order() < 2) throw ParameterError("density needs at least 2 nodes");
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double beta_index(const MolecularGraph& g) {
  if (g.order() == 0) throw ParameterError("beta index needs at least 1 node");
  return static_cast<double>(g.edge_count()) / static_cast<double>(g.order());
}

SubgraphDensity subgraph_densities(const MolecularGraph& g, std::span<const NodeId> nodes) {
  std::vector<char> in(g.order(), 0);
  std::size_t k = 0;
  for (NodeId v : nodes) {
    if (v >= g.order()) throw ParameterError("node id out of range");
    if (in[v]) throw ParameterError("duplicate node " + std::to_string(v) + " in node set");
    in[v] = 1;
    ++k;
  }
  if (k == 0) throw ParameterError("node set is empty");
  if (k == g.order()) throw ParameterError("node set covers the whole graph");
  if (k < 2) throw ParameterError("internal density undefined for a single node");

  std::size_t internal = 0;
  std::size_t boundary = 0;
  for (const auto& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      ++internal;
    } else if (in[e.u] || in[e.v]) {
      ++boundary;
    }
  }
  const auto kd = static_cast<double>(k);
  const auto rest = static_cast<double>(g.order() - k);
  return {static_cast<double>(internal) / (kd * (kd - 1.0) / 2.0),
          static_cast<double>(boundary) / (kd * rest)};
}

}  // namespace waternet
