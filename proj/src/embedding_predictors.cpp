#include "linkpred/embedding_predictors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "linkpred/errors.hpp"

namespace linkpred {

namespace {

std::vector<ScoredPair> euclidean_top_k(const PointSet& points, const PairSet& excluded,
                                        std::size_t k) {
  std::vector<ScoredPair> out;
  for (const PairDistance& p : k_closest_pairs_excluding(points, k, excluded)) {
    out.push_back({p.i, p.j, -squared_distance(points.row(p.i), points.row(p.j))});
  }
  return out;
}

// On unit vectors ||g(x) - g(y)||^2 = 2 - 2 cos, so the closest pairs are the
// most cosine-similar ones.
std::vector<ScoredPair> unit_cosine_top_k(const PointSet& unit, const PairSet& excluded,
                                          std::size_t k) {
  // Distances order the search, but the reported score is the cosine, and
  // near-parallel pairs that tie on it can sit at slightly different chord
  // lengths. Fetch past k until the k-th score's tie class is complete, then
  // rank on the score itself.
  std::vector<ScoredPair> out;
  for (std::size_t want = k + 1;; want *= 2) {
    const auto pairs = k_closest_pairs_excluding(unit, want, excluded);
    out.clear();
    for (const PairDistance& p : pairs) {
      const double d2 = squared_distance(unit.row(p.i), unit.row(p.j));
      out.push_back({p.i, p.j, std::clamp(1.0 - 0.5 * d2, -1.0, 1.0)});
    }
    if (out.size() < want || !scores_tied(out[k - 1].score, out.back().score)) break;
  }
  sort_scores_canonically(out);
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<ScoredPair> cosine_top_k(const PointSet& embedding, const PairSet& excluded,
                                     std::size_t k, std::vector<std::string>* warnings) {
  SpectralEmbedding wrapped;
  wrapped.coords = embedding;
  SpectralEmbedding unit = normalize_embedding(wrapped);
  const std::size_t n = unit.size();
  const std::size_t d = unit.dim();

  std::vector<char> zero(n, 0);
  std::vector<VertexId> nonzero;
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = unit.coords.row(x);
    if (std::all_of(row.begin(), row.end(), [](double c) { return c == 0.0; })) {
      zero[x] = 1;
    } else {
      nonzero.push_back(static_cast<VertexId>(x));
    }
  }
  if (nonzero.size() == n) return unit_cosine_top_k(unit.coords, excluded, k);
  if (warnings) warnings->insert(warnings->end(), unit.warnings.begin(), unit.warnings.end());

  // Search among the nonzero rows only, then splice in the score-0 pairs
  // that involve a zero row.
  constexpr auto kAbsent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> sub_index(n, kAbsent);
  std::vector<double> sub_coords;
  sub_coords.reserve(nonzero.size() * d);
  for (std::size_t s = 0; s < nonzero.size(); ++s) {
    sub_index[nonzero[s]] = static_cast<VertexId>(s);
    const auto row = unit.coords.row(nonzero[s]);
    sub_coords.insert(sub_coords.end(), row.begin(), row.end());
  }
  std::vector<ScoredPair> searched;
  if (nonzero.size() >= 2) {
    std::vector<Edge> sub_excluded;
    for (std::uint64_t key : excluded.keys()) {
      const auto a = static_cast<VertexId>(key >> 32);
      const auto b = static_cast<VertexId>(key & 0xffffffffu);
      if (a < n && b < n && sub_index[a] != kAbsent && sub_index[b] != kAbsent) {
        sub_excluded.push_back(make_edge(sub_index[a], sub_index[b]));
      }
    }
    const PointSet sub(std::move(sub_coords), d);
    for (const ScoredPair& p : unit_cosine_top_k(sub, PairSet(sub_excluded), k)) {
      searched.push_back({nonzero[p.x], nonzero[p.y], p.score});
    }
  }

  std::vector<ScoredPair> zero_scored;
  for (VertexId x = 0; x < n && zero_scored.size() < k; ++x) {
    auto consider = [&](VertexId y) {
      if (!excluded.contains(x, y)) zero_scored.push_back({x, y, 0.0});
      return zero_scored.size() < k;
    };
    if (zero[x]) {
      for (VertexId y = x + 1; y < n; ++y) {
        if (!consider(y)) break;
      }
    } else {
      for (VertexId y = x + 1; y < n; ++y) {
        if (zero[y] && !consider(y)) break;
      }
    }
  }
  for (const ScoredPair& p : searched) {
    if (p.score == 0.0) zero_scored.push_back(p);
  }
  std::sort(zero_scored.begin(), zero_scored.end(), ranks_before);

  std::vector<ScoredPair> out;
  for (const ScoredPair& p : searched) {
    if (p.score > 0.0) out.push_back(p);
  }
  out.insert(out.end(), zero_scored.begin(), zero_scored.end());
  for (const ScoredPair& p : searched) {
    if (p.score < 0.0) out.push_back(p);
  }
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<ScoredPair> spec_predict(const Graph& g, const EmbeddingPredictorConfig& config) {
  if (config.k == 0) throw ConfigError("k must be at least 1");
  if (!is_connected(g)) {
    throw ComputeError("spectral predictors need a connected graph; reduce the training graph "
                       "to its largest connected component");
  }
  const SpectralEmbedding emb = compute_resistance_embedding(g, config.dim, config.eigen);
  return predict_with_embedding(emb.coords, PairSet::from_graph(g), config.score, config.k);
}

}  // namespace

std::vector<ScoredPair> predict_with_embedding(const PointSet& embedding, const PairSet& excluded,
                                               EmbeddingScore score, std::size_t k,
                                               std::vector<std::string>* warnings) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (embedding.size() < 2) return {};
  return score == EmbeddingScore::euclidean ? euclidean_top_k(embedding, excluded, k)
                                            : cosine_top_k(embedding, excluded, k, warnings);
}

std::vector<ScoredPair> predict_spec_euclid(const Graph& g, const EmbeddingPredictorConfig& config) {
  EmbeddingPredictorConfig c = config;
  c.score = EmbeddingScore::euclidean;
  return spec_predict(g, c);
}

std::vector<ScoredPair> predict_spec_cosine(const Graph& g, const EmbeddingPredictorConfig& config) {
  EmbeddingPredictorConfig c = config;
  c.score = EmbeddingScore::cosine;
  return spec_predict(g, c);
}

ComplexityReport predicted_pair_count_bound_check(const Graph& g,
                                                  const SpectralEmbedding& embedding,
                                                  std::size_t k, EmbeddingScore score) {
  ComplexityReport report;
  report.vertices = g.num_vertices();
  report.edges = g.num_edges();
  report.dim = embedding.dim();
  report.k = k;
  const PairSet excluded = PairSet::from_graph(g);
  const auto start = std::chrono::steady_clock::now();
  const auto pairs = predict_with_embedding(embedding.coords, excluded, score, k);
  const auto stop = std::chrono::steady_clock::now();
  report.predicted = pairs.size();
  report.search_seconds = std::chrono::duration<double>(stop - start).count();
  const double log_n = std::log2(std::max<double>(2.0, static_cast<double>(report.vertices)));
  report.bound = static_cast<double>(report.edges) * log_n * log_n;
  report.seconds_per_bound = report.bound > 0.0 ? report.search_seconds / report.bound : 0.0;
  return report;
}

double fit_scaling_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("scaling fit needs at least two (x, y) points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto count = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw ConfigError("scaling fit needs distinct x values");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace linkpred
