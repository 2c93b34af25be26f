#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linkpred/graph.hpp"
#include "linkpred/scored_pair.hpp"

namespace linkpred {

/// Largest n for which dense n-by-n kernels are built unless overridden.
inline constexpr std::size_t kDefaultDenseGuard = 5000;

/**
 * Dense pair-similarity matrix. Larger is more similar; kernels whose
 * natural quantity is a distance store it negated.
 */
struct GraphKernel {
  std::string name;
  Eigen::MatrixXd values;
  bool symmetric = true;

  /// Pair score used for ranking: the symmetrized entry (K[x,y] + K[y,x]) / 2.
  double pair_score(VertexId x, VertexId y) const {
    return 0.5 * (values(x, y) + values(y, x));
  }
};

struct KatzParams {
  double beta = 0.01;
};

struct PageRankParams {
  double alpha = 0.15;  // probability of returning to the root
};

Eigen::MatrixXd dense_adjacency(const Graph& g);
Eigen::MatrixXd dense_laplacian(const Graph& g);

/// Bounds on the spectral radius of A from power iteration on A + I:
/// the Rayleigh quotient (lower) and the Collatz-Wielandt ratio (upper).
struct SpectralRadiusEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
};
SpectralRadiusEstimate estimate_spectral_radius(const Graph& g, double rel_tol = 1e-10,
                                                std::size_t max_iterations = 10000);

/// (I - beta A)^{-1} - I. Throws ComputeError when beta * rho(A) >= 1 or
/// n exceeds the dense guard.
GraphKernel katz_kernel(const Graph& g, KatzParams params,
                        std::size_t dense_guard = kDefaultDenseGuard);

/// (1 - alpha)(I - alpha D^{-1} A)^{-1}; row x is the stationary
/// distribution of the walk rooted at x. Asymmetric in general.
GraphKernel rooted_pagerank_kernel(const Graph& g, PageRankParams params,
                                   std::size_t dense_guard = kDefaultDenseGuard);

/// L^+ computed as (L + J/n)^{-1} - J/n. Requires a connected graph.
Eigen::MatrixXd laplacian_pseudoinverse(const Graph& g,
                                        std::size_t dense_guard = kDefaultDenseGuard);

/// Effective resistance r(x,y) = L+[x,x] + L+[y,y] - 2 L+[x,y] for all pairs.
Eigen::MatrixXd effective_resistance(const Graph& g,
                                     std::size_t dense_guard = kDefaultDenseGuard);

/// Kernel of negated effective resistances. Commute time is |E| or 2|E|
/// times r depending on convention; either way the ranking is identical,
/// so r is stored directly.
GraphKernel exact_resistance_kernel(const Graph& g,
                                    std::size_t dense_guard = kDefaultDenseGuard);

/// Negated BFS distances. Unreachable pairs get -n, below every finite
/// distance.
GraphKernel shortest_path_kernel(const Graph& g,
                                 std::size_t dense_guard = kDefaultDenseGuard);

/// Top-k non-edges by pair_score, scanning every non-edge. Scores within
/// kScoreTieTolerance (relative) are tied and ordered by (x, y).
std::vector<ScoredPair> predict_from_kernel(const Graph& g, const GraphKernel& kernel,
                                            std::size_t k);

}  // namespace linkpred
