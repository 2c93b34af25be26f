#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "linkpred/graph.hpp"
#include "linkpred/scored_pair.hpp"

namespace linkpred {

/// Neighborhood-based similarity metrics. All of them vanish for pairs at
/// distance greater than two.
enum class LocalMetric { common_neighbors, jaccard, adamic_adar, resource_allocation };

std::string_view to_string(LocalMetric m);

double score_common_neighbors(const Graph& g, VertexId x, VertexId y);

/// |N(x) ∩ N(y)| / |N(x) ∪ N(y)|; 0 when both neighborhoods are empty.
double score_jaccard(const Graph& g, VertexId x, VertexId y);

double score_preferential_attachment(const Graph& g, VertexId x, VertexId y);

/// Sum over common neighbors z of 1 / ln deg(z). Every common neighbor of
/// two distinct vertices has degree >= 2, so the sum is finite.
double score_adamic_adar(const Graph& g, VertexId x, VertexId y);

/// Sum over common neighbors z of 1 / deg(z).
double score_resource_allocation(const Graph& g, VertexId x, VertexId y);

double local_score(const Graph& g, LocalMetric m, VertexId x, VertexId y);

/**
 * Top-k non-edges by a local metric.
 *
 * Candidates are generated by wedge enumeration (x - z - y), so only
 * distance-two pairs are scored; cost is the number of wedges. Pairs with
 * zero score are never emitted, so the result can be shorter than k.
 * Ordering follows ranks_before.
 */
std::vector<ScoredPair> predict_local(const Graph& g, LocalMetric m, std::size_t k);

/**
 * Top-k non-edges by degree product, without touching all O(n^2) pairs.
 *
 * Vertices are grouped by degree; degree-class pairs are visited in
 * decreasing product order through a heap with one entry per class, and
 * each product level is scanned lexicographically until k non-edges are
 * found. Isolated vertices (score 0) are never emitted.
 */
std::vector<ScoredPair> predict_preferential_attachment(const Graph& g, std::size_t k);

}  // namespace linkpred
