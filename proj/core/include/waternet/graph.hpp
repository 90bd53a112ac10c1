#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

namespace waternet {

using NodeId = std::uint32_t;

/// Undirected edge with `u < v`.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Immutable simple undirected graph.
///
/// Stored twice: as a sorted edge list (combinatorial code iterates it) and as
/// CSR adjacency (neighbour scans and the Eigen matrix used by the spectral
/// and matrix-function kernels). Node ids are indices into the
/// species-filtered frame; `node_map()` maps them back to particle indices.
class MolecularGraph {
 public:
  MolecularGraph() = default;

  /// Builds from an arbitrary edge list. Pairs are normalised to u < v and
  /// duplicates dropped. Throws std::invalid_argument on self-loops or ids
  /// >= n. An empty `node_map` means identity.
  static MolecularGraph from_edges(std::size_t n, std::vector<Edge> edges,
                                   std::vector<std::size_t> node_map = {});

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const noexcept {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  std::vector<std::size_t> degrees() const;
  bool has_edge(NodeId a, NodeId b) const;

  /// Binary symmetric adjacency matrix A.
  const SparseMatrix& adjacency() const noexcept { return matrix_; }

  std::span<const std::size_t> node_map() const noexcept { return node_map_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
  SparseMatrix matrix_;
  std::vector<std::size_t> node_map_;
};

/// L = K - A.
SparseMatrix laplacian(const MolecularGraph& g);

struct ComponentPartition {
  /// Component of each node; ids are contiguous from 0 in order of first node.
  std::vector<std::size_t> component_id;
  std::vector<std::size_t> sizes;

  std::size_t count() const noexcept { return sizes.size(); }
};

ComponentPartition connected_components(const MolecularGraph& g);

/// 2m / (N(N-1)). Throws ParameterError for N < 2.
double density(const MolecularGraph& g);

/// Edges per node, m / N. Throws ParameterError for N = 0.
double beta_index(const MolecularGraph& g);

struct SubgraphDensity {
  double internal = 0.0;
  double external = 0.0;
};

/// Internal density: edges inside the set over C(|S|, 2). External density:
/// boundary edges over |S|(N - |S|). The set must be a proper subset with at
/// least two distinct nodes.
SubgraphDensity subgraph_densities(const MolecularGraph& g, std::span<const NodeId> nodes);

}  // namespace waternet
