#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linkpred/closest_pairs.hpp"
#include "linkpred/graph.hpp"

namespace linkpred {

enum class EigenMethod {
  automatic,  // dense for small graphs, LOBPCG otherwise
  dense,
  lobpcg,
};

struct EigenSolverOptions {
  double tol = 1e-8;                 // residual bound relative to max(1, lambda)
  std::size_t max_iterations = 10000;
  EigenMethod method = EigenMethod::automatic;
  std::size_t dense_threshold = 64;  // automatic switches to dense at or below this n
  std::uint64_t seed = 0x5eed5eedULL;
};

/**
 * The d smallest nonzero Laplacian eigenpairs of a connected graph.
 *
 * vectors is n-by-d; column i holds the eigenvector of values[i], which
 * is lambda_{i+2} in 1-based spectral order. Columns are orthonormal and
 * orthogonal to the all-ones vector.
 */
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  /// lambda_{d+2} - lambda_{d+1} when available (NaN otherwise). A gap near
  /// zero means the d-dimensional subspace is not unique.
  double next_gap = std::numeric_limits<double>::quiet_NaN();
  double max_relative_residual = 0.0;
  std::size_t iterations = 0;
  std::string method;
};

/// Throws ConfigError when d is 0 or >= n, ComputeError when the graph is
/// disconnected, ConvergenceError when the iteration budget runs out.
EigenPairs smallest_nonzero_eigenpairs(const LaplacianView& laplacian, std::size_t d,
                                       const EigenSolverOptions& options = {});

/// Resistance distance embedding: row x is
/// [v_2(x)/sqrt(l_2), ..., v_{d+1}(x)/sqrt(l_{d+1})], so squared distances
/// between rows equal the rank-d approximation of effective resistance.
struct SpectralEmbedding {
  PointSet coords;
  std::vector<double> eigenvalues;
  double next_gap = std::numeric_limits<double>::quiet_NaN();
  bool normalized = false;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return coords.size(); }
  std::size_t dim() const noexcept { return coords.dim(); }
};

SpectralEmbedding resistance_embedding(const EigenPairs& pairs);

/// Scales every row to unit length. Zero rows stay zero and are reported
/// in warnings.
SpectralEmbedding normalize_embedding(const SpectralEmbedding& embedding);

/// Eigensolve plus embedding in one call.
SpectralEmbedding compute_resistance_embedding(const Graph& g, std::size_t d,
                                               const EigenSolverOptions& options = {});

// Persistence.
//
// Text: first line "n d", second line the d eigenvalues, then n rows of d
// coordinates, all space-separated with 17 significant digits.
//
// Binary (little-endian): 8-byte magic "LPEMBED1", uint64 n, uint64 d,
// d float64 eigenvalues, then n*d float64 coordinates row-major.
void write_embedding_text(std::ostream& out, const SpectralEmbedding& embedding);
SpectralEmbedding read_embedding_text(std::istream& in);
void write_embedding_binary(std::ostream& out, const SpectralEmbedding& embedding);
SpectralEmbedding read_embedding_binary(std::istream& in);

}  // namespace linkpred
