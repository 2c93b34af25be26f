#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace linkpred {

/// Dense zero-based vertex index. External labels live in a LabelTable.
using VertexId = std::uint32_t;

/// Unordered vertex pair stored canonically with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Packs a canonical pair into one key; used by hashed and sorted pair sets.
inline std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

/**
 * Immutable undirected simple graph in CSR form.
 *
 * Neighbor lists are sorted ascending, symmetric, and free of self-loops
 * and duplicates. Connectivity is not required here; spectral code checks
 * it separately.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds from arbitrary pairs: self-loops are dropped and parallel edges
  /// collapsed. Throws InputError when an id is >= n.
  static Graph from_edges(std::span<const std::pair<VertexId, VertexId>> pairs,
                          std::size_t n);
  static Graph from_edges(std::span<const Edge> edges, std::size_t n);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::span<const VertexId> neighbors(VertexId x) const noexcept {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::size_t degree(VertexId x) const noexcept { return offsets_[x + 1] - offsets_[x]; }
  std::size_t max_degree() const noexcept;

  /// O(log deg) membership test on the sorted neighbor list of the
  /// lower-degree endpoint.
  bool has_edge(VertexId x, VertexId y) const noexcept;

  /// Canonical edge list in lexicographic order.
  std::vector<Edge> edges() const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adjacency() const noexcept { return adjacency_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::size_t num_edges_ = 0;
};

std::size_t degree(const Graph& g, VertexId x);

/// |N(x) ∩ N(y)| by merging the two sorted lists.
std::size_t common_neighbor_count(const Graph& g, VertexId x, VertexId y);

/// BFS hop distance; std::nullopt when y is unreachable from x.
std::optional<std::size_t> shortest_path_length(const Graph& g, VertexId x, VertexId y);

/// Single-source BFS. Unreachable vertices get -1.
std::vector<std::int64_t> bfs_distances(const Graph& g, VertexId source);

/// Connected component labelling. Components are numbered in order of
/// their smallest vertex id.
struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::size_t> sizes;
};
Components connected_components(const Graph& g);

bool is_connected(const Graph& g);

/// Induced subgraph on `keep` (need not be sorted). Vertex keep[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep);

/**
 * L = D - A over a Graph, applied matrix-free.
 *
 * The graph must outlive the view.
 */
class LaplacianView {
 public:
  explicit LaplacianView(const Graph& g) : graph_(&g) {}

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t size() const noexcept { return graph_->num_vertices(); }

  /// y = L x for a single vector.
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Y = L X for a row-major n-by-cols block.
  void apply_block(const double* x, double* y, std::size_t cols) const;

  /// Diagonal of L (the degrees).
  std::vector<double> diagonal() const;

  /// x^T L x = sum over edges of (x_u - x_v)^2.
  double quadratic_form(std::span<const double> x) const;

 private:
  const Graph* graph_;
};

}  // namespace linkpred
