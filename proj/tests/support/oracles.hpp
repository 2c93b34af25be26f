#pragma once

// Slow, obviously-correct reference computations for the test suites.
// Nothing here calls the library's ranking or search code.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "linkpred/closest_pairs.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/scored_pair.hpp"

namespace oracle {

using linkpred::Graph;
using linkpred::ScoredPair;
using linkpred::VertexId;

// Erdos-Renyi edges, plus a random spanning tree when `connected`.
std::vector<std::pair<VertexId, VertexId>> random_edges(std::size_t n, double p, std::uint64_t seed,
                                                        bool connected);
Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool connected = false);

std::vector<std::set<VertexId>> neighbor_sets(const Graph& g);

enum class Local { cn, jaccard, adamic_adar, resource_allocation, pref_attach };

// Score from set operations; sums run over common neighbors in ascending order.
double local_score(const std::vector<std::set<VertexId>>& nb, Local m, VertexId x, VertexId y);

// Every non-edge x < y with its score.
std::vector<ScoredPair> all_non_edge_scores(const Graph& g, Local m);

// Sort by score descending then (x, y); keep k. Zero scores dropped when asked.
std::vector<ScoredPair> top_k(std::vector<ScoredPair> pairs, std::size_t k, bool drop_zero);

// sum_{l=1..terms} beta^l A^l.
Eigen::MatrixXd katz_series(const Graph& g, double beta, int terms);

// Moore-Penrose pseudoinverse of L from a complete orthogonal decomposition.
Eigen::MatrixXd laplacian_pinv(const Graph& g);

// r(x,y) = (e_x - e_y)^T L+ (e_x - e_y) for every pair.
Eigen::MatrixXd resistance_matrix(const Graph& g);

// All eigenvalues of the dense Laplacian, ascending.
Eigen::VectorXd laplacian_spectrum(const Graph& g);

Eigen::MatrixXd dense_laplacian(const Graph& g);

// All-pairs hop distances, -1 when unreachable (Floyd-Warshall).
std::vector<std::vector<int>> hop_distances(const Graph& g);

struct IndexPair {
  std::uint32_t i;
  std::uint32_t j;
  double distance;
};

// All pairs ranked by distance; runs within 1e-12 relative are ordered by
// (i, j). Squared distances are summed in coordinate order.
std::vector<IndexPair> ranked_pairs(const linkpred::PointSet& points,
                                    const std::set<std::pair<std::uint32_t, std::uint32_t>>& excluded = {});

linkpred::PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                                 bool integer_grid = false);

}  // namespace oracle
