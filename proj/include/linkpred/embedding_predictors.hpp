#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "linkpred/closest_pairs.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/scored_pair.hpp"
#include "linkpred/spectral.hpp"

namespace linkpred {

enum class EmbeddingScore { euclidean, cosine };

struct EmbeddingPredictorConfig {
  std::size_t dim = 8;
  EmbeddingScore score = EmbeddingScore::euclidean;
  std::size_t k = 1;
  EigenSolverOptions eigen;
};

/**
 * Top-k non-excluded pairs on a fixed embedding.
 *
 * euclidean: score = -||f(x) - f(y)||^2, found as the k closest pairs.
 * cosine: rows are normalized first, so maximizing cosine is minimizing
 * distance on the unit sphere; score = 1 - ||g(x) - g(y)||^2 / 2, which
 * equals the cosine. Zero-norm rows have cosine 0 with everything and are
 * ranked accordingly.
 */
std::vector<ScoredPair> predict_with_embedding(const PointSet& embedding, const PairSet& excluded,
                                               EmbeddingScore score, std::size_t k,
                                               std::vector<std::string>* warnings = nullptr);

/// spec_euclid: resistance embedding of dimension config.dim plus
/// closest-pairs search over non-edges. Needs a connected graph.
std::vector<ScoredPair> predict_spec_euclid(const Graph& g, const EmbeddingPredictorConfig& config);

/// spec_cosine: same embedding, cosine similarity score.
std::vector<ScoredPair> predict_spec_cosine(const Graph& g, const EmbeddingPredictorConfig& config);

/// Timing of the prediction stage alone (closest pairs + non-edge filter),
/// compared with |E| log^2 n.
struct ComplexityReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t dim = 0;
  std::size_t k = 0;
  std::size_t predicted = 0;
  double search_seconds = 0.0;
  double bound = 0.0;            // |E| log2(n)^2
  double seconds_per_bound = 0.0;
};

ComplexityReport predicted_pair_count_bound_check(const Graph& g,
                                                  const SpectralEmbedding& embedding,
                                                  std::size_t k,
                                                  EmbeddingScore score = EmbeddingScore::euclidean);

/// Least-squares slope of log(y) against log(x).
double fit_scaling_exponent(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace linkpred
