#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "linkpred/graph.hpp"

namespace linkpred {

/// n points in R^d stored row-major. Coordinates must be finite.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t n, std::size_t dim);
  PointSet(std::vector<double> coords, std::size_t dim);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> row(std::size_t i) noexcept { return {coords_.data() + i * dim_, dim_}; }

  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Squared Euclidean distance, summed in coordinate order. Every code path
/// that ranks pairs uses this routine so equal inputs give equal bits.
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// A point pair with i < j and its Euclidean distance.
struct PairDistance {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double distance = 0.0;

  friend bool operator==(const PairDistance&, const PairDistance&) = default;
};

/// Relative tolerance below which two distances count as tied.
inline constexpr double kDistanceTieTolerance = 1e-12;

/// Sorts ascending by distance; runs of consecutive distances within
/// kDistanceTieTolerance (relative) are treated as ties and ordered by (i, j).
void sort_pairs_canonically(std::vector<PairDistance>& pairs);

/// Sorted set of unordered index pairs.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::span<const Edge> pairs);
  static PairSet from_graph(const Graph& g);

  bool contains(std::uint32_t a, std::uint32_t b) const noexcept;
  std::size_t size() const noexcept { return keys_.size(); }
  std::span<const std::uint64_t> keys() const noexcept { return keys_; }

 private:
  std::vector<std::uint64_t> keys_;
};

/**
 * The k pairs of smallest Euclidean distance, exactly, in canonical order.
 *
 * A radius guess comes from the distances of a fixed point sample; capped
 * pair counts on a kd-tree self-join then grow or bisect it until it holds
 * between k and 4k pairs. Everything inside is enumerated and ranked.
 * Returns all pairs when k >= n(n-1)/2.
 */
std::vector<PairDistance> k_closest_pairs(const PointSet& points, std::size_t k);

/// The k closest pairs not in `excluded`. Excluded pairs are skipped during
/// the search, so the search radius depends on k only.
std::vector<PairDistance> k_closest_pairs_excluding(const PointSet& points, std::size_t k,
                                                    const PairSet& excluded);

}  // namespace linkpred
