#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "linkpred/embedding_predictors.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/kernels.hpp"
#include "linkpred/scored_pair.hpp"

namespace linkpred {

enum class PredictorKind {
  common_neighbors,
  jaccard,
  adamic_adar,
  resource_allocation,
  preferential_attachment,
  katz,
  rooted_pagerank,
  resistance,
  shortest_path,
  spectral,
};

/// A predictor with its parameters, as named on the command line.
struct PredictorSpec {
  PredictorKind kind = PredictorKind::common_neighbors;
  std::size_t dim = 8;
  EmbeddingScore score = EmbeddingScore::euclidean;
  double beta = 0.01;
  double alpha = 0.15;
  std::size_t dense_guard = kDefaultDenseGuard;
  EigenSolverOptions eigen;
  bool allow_beyond_edge_count = false;

  /// Name as it appears in reports: "katz", "spec_euclid8", ...
  std::string display_name() const;
};

/// Accepts the canonical names listed by predictor_names() plus a few
/// aliases; spec_euclid and spec_cosine take an optional dimension suffix
/// (spec_euclid16) that overrides defaults.dim. "spec" keeps defaults.score.
/// Throws ConfigError listing the valid names.
PredictorSpec parse_predictor(const std::string& name, const PredictorSpec& defaults = {});

std::vector<std::string> predictor_names();

struct PredictionRun {
  std::vector<ScoredPair> pairs;
  double seconds = 0.0;  // the whole call, embedding included
  std::vector<std::string> warnings;
};

/// Validates k against the graph, then runs and times the predictor.
PredictionRun run_predictor(const Graph& g, const PredictorSpec& spec, std::size_t k);

}  // namespace linkpred
