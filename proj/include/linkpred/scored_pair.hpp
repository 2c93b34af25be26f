#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"

namespace linkpred {

/// Predictor output: canonical pair (x < y) and its score.
struct ScoredPair {
  VertexId x = 0;
  VertexId y = 0;
  double score = 0.0;

  friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

/// Ranking order used by every predictor: higher score first, then
/// lexicographic (x, y).
inline bool ranks_before(const ScoredPair& a, const ScoredPair& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

/// Relative score difference below which two kernel scores count as tied.
inline constexpr double kScoreTieTolerance = 1e-12;

inline bool scores_tied(double a, double b) noexcept {
  return std::abs(a - b) <= kScoreTieTolerance * std::max(std::abs(a), std::abs(b));
}

/// Sorts by ranks_before, then reorders runs of consecutive near-tied
/// scores (chained through scores_tied) by (x, y).
inline void sort_scores_canonically(std::vector<ScoredPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), ranks_before);
  std::size_t s = 0;
  while (s < pairs.size()) {
    std::size_t e = s + 1;
    while (e < pairs.size() && scores_tied(pairs[e - 1].score, pairs[e].score)) ++e;
    if (e - s > 1) {
      std::sort(pairs.begin() + static_cast<std::ptrdiff_t>(s), pairs.begin() + static_cast<std::ptrdiff_t>(e),
                [](const ScoredPair& a, const ScoredPair& b) {
                  return a.x != b.x ? a.x < b.x : a.y < b.y;
                });
    }
    s = e;
  }
}

/**
 * Keeps the k best pairs under ranks_before.
 *
 * The heap root is the worst retained pair, so each push is O(log k).
 */
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) { heap_.reserve(k); }

  std::size_t capacity() const noexcept { return k_; }
  std::size_t size() const noexcept { return heap_.size(); }
  bool full() const noexcept { return heap_.size() == k_; }

  /// Worst retained pair; only meaningful when size() > 0.
  const ScoredPair& worst() const noexcept { return heap_.front(); }

  /// True when `p` would be retained.
  bool admits(const ScoredPair& p) const noexcept {
    return k_ > 0 && (!full() || ranks_before(p, heap_.front()));
  }

  void push(const ScoredPair& p) {
    if (k_ == 0) return;
    if (!full()) {
      heap_.push_back(p);
      std::push_heap(heap_.begin(), heap_.end(), ranks_before);
    } else if (ranks_before(p, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), ranks_before);
      heap_.back() = p;
      std::push_heap(heap_.begin(), heap_.end(), ranks_before);
    }
  }

  void merge(const TopK& other) {
    for (const ScoredPair& p : other.heap_) push(p);
  }

  /// Best-first list; leaves the container empty.
  std::vector<ScoredPair> take_sorted() {
    std::vector<ScoredPair> out = std::move(heap_);
    heap_.clear();
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
  }

 private:
  std::size_t k_;
  std::vector<ScoredPair> heap_;
};

/// Number of links to predict. By convention 1 <= k <= |E|; the upper
/// bound can be lifted explicitly.
struct TopKRequest {
  std::size_t k = 1;
  bool allow_beyond_edge_count = false;

  void validate(const Graph& g) const {
    if (k == 0) throw ConfigError("k must be at least 1");
    if (!allow_beyond_edge_count && k > g.num_edges()) {
      throw ConfigError("k=" + std::to_string(k) + " exceeds |E|=" +
                        std::to_string(g.num_edges()) +
                        " (pass --allow-large-k to override)");
    }
  }
};

}  // namespace linkpred
