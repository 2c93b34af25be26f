#include "linkpred/closest_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "linkpred/errors.hpp"

namespace linkpred {

PointSet::PointSet(std::size_t n, std::size_t dim) : n_(n), dim_(dim), coords_(n * dim, 0.0) {}

PointSet::PointSet(std::vector<double> coords, std::size_t dim)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw InputError("point dimension must be positive");
  if (coords_.size() % dim_ != 0) {
    throw InputError("coordinate count " + std::to_string(coords_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InputError("point coordinates must be finite");
  }
  n_ = coords_.size() / dim_;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return sum;
}

void sort_pairs_canonically(std::vector<PairDistance>& pairs) {
  auto by_distance = [](const PairDistance& a, const PairDistance& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  auto by_index = [](const PairDistance& a, const PairDistance& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  };
  std::sort(pairs.begin(), pairs.end(), by_distance);
  std::size_t start = 0;
  while (start < pairs.size()) {
    std::size_t end = start + 1;
    while (end < pairs.size() &&
           pairs[end].distance - pairs[end - 1].distance <=
               kDistanceTieTolerance * pairs[end].distance) {
      ++end;
    }
    // Exact-equal runs are already in index order; only near-ties move.
    if (end - start > 1 && pairs[end - 1].distance != pairs[start].distance) {
      std::sort(pairs.begin() + static_cast<std::ptrdiff_t>(start),
                pairs.begin() + static_cast<std::ptrdiff_t>(end), by_index);
    }
    start = end;
  }
}

PairSet::PairSet(std::span<const Edge> pairs) {
  keys_.reserve(pairs.size());
  for (const Edge& e : pairs) keys_.push_back(pair_key(e.u, e.v));
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

PairSet PairSet::from_graph(const Graph& g) {
  const auto edges = g.edges();
  return PairSet(std::span<const Edge>(edges));
}

bool PairSet::contains(std::uint32_t a, std::uint32_t b) const noexcept {
  return std::binary_search(keys_.begin(), keys_.end(), pair_key(a, b));
}

namespace {

constexpr std::size_t kLeafSize = 16;

// Same summation order as squared_distance, but gives up once the partial
// sum passes r2. Returns the full sum when it is within r2.
inline bool within(const double* a, const double* b, std::size_t dim, double r2,
                   double& d2) noexcept {
  double sum = 0.0;
  std::size_t c = 0;
  for (; c + 4 <= dim; c += 4) {
    for (std::size_t t = c; t < c + 4; ++t) {
      const double diff = a[t] - b[t];
      sum += diff * diff;
    }
    if (sum > r2) return false;
  }
  for (; c < dim; ++c) {
    const double diff = a[c] - b[c];
    sum += diff * diff;
  }
  d2 = sum;
  return sum <= r2;
}

/// Balanced kd-tree with per-node bounding boxes; points are copied in
/// tree order so leaf scans are contiguous.
class KdTree {
 public:
  explicit KdTree(const PointSet& points) : dim_(points.dim()) {
    const std::size_t n = points.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * (n / kLeafSize + 1));
    build(points, 0, static_cast<std::uint32_t>(n));
    coords_.resize(n * dim_);
    for (std::size_t p = 0; p < n; ++p) {
      auto src = points.row(order_[p]);
      std::copy(src.begin(), src.end(), coords_.begin() + static_cast<std::ptrdiff_t>(p * dim_));
    }
  }

  /// Squared diameter of the root box; every pair lies within it.
  double diameter2() const {
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double w = hi(0)[c] - lo(0)[c];
      sum += w * w;
    }
    return sum;
  }

  /// Calls f(i, j, sq) once for every unordered pair with sq <= r2.
  /// Stops early and returns false when f returns false.
  template <class F>
  bool for_each_pair_within(double r2, F&& f) const {
    return join(0, 0, r2, f);
  }

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    bool leaf() const { return left < 0; }
    std::uint32_t size() const { return end - begin; }
  };

  const double* point(std::size_t pos) const { return coords_.data() + pos * dim_; }
  const double* lo(std::size_t node) const { return box_lo_.data() + node * dim_; }
  const double* hi(std::size_t node) const { return box_hi_.data() + node * dim_; }

  std::int32_t build(const PointSet& points, std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({begin, end, -1, -1});
    box_lo_.resize(box_lo_.size() + dim_, std::numeric_limits<double>::infinity());
    box_hi_.resize(box_hi_.size() + dim_, -std::numeric_limits<double>::infinity());
    double* blo = box_lo_.data() + static_cast<std::size_t>(id) * dim_;
    double* bhi = box_hi_.data() + static_cast<std::size_t>(id) * dim_;
    for (std::uint32_t p = begin; p < end; ++p) {
      auto x = points.row(order_[p]);
      for (std::size_t c = 0; c < dim_; ++c) {
        blo[c] = std::min(blo[c], x[c]);
        bhi[c] = std::max(bhi[c], x[c]);
      }
    }
    if (end - begin <= kLeafSize) return id;
    std::size_t split = 0;
    double widest = -1.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (bhi[c] - blo[c] > widest) {
        widest = bhi[c] - blo[c];
        split = c;
      }
    }
    if (widest <= 0.0) return id;  // all points coincide
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return points.row(a)[split] < points.row(b)[split];
                     });
    const std::int32_t left = build(points, begin, mid);
    const std::int32_t right = build(points, mid, end);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  double box_distance(std::size_t node, const double* q) const {
    const double* l = lo(node);
    const double* h = hi(node);
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double gap = q[c] < l[c] ? l[c] - q[c] : (q[c] > h[c] ? q[c] - h[c] : 0.0);
      sum += gap * gap;
    }
    return sum;
  }

  double box_box_distance(std::size_t a, std::size_t b) const {
    const double* al = lo(a);
    const double* ah = hi(a);
    const double* bl = lo(b);
    const double* bh = hi(b);
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double gap = bl[c] > ah[c] ? bl[c] - ah[c] : (al[c] > bh[c] ? al[c] - bh[c] : 0.0);
      sum += gap * gap;
    }
    return sum;
  }

  template <class F>
  bool join(std::size_t a, std::size_t b, double r2, F& f) const {
    if (a != b && box_box_distance(a, b) > r2) return true;
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (na.leaf() && nb.leaf()) {
      for (std::uint32_t p = na.begin; p < na.end; ++p) {
        const double* x = point(p);
        if (a != b && box_distance(b, x) > r2) continue;
        for (std::uint32_t q = (a == b ? p + 1 : nb.begin); q < nb.end; ++q) {
          double d2 = 0.0;
          if (within(x, point(q), dim_, r2, d2)) {
            const std::uint32_t i = order_[p];
            const std::uint32_t j = order_[q];
            if (!(i < j ? f(i, j, d2) : f(j, i, d2))) return false;
          }
        }
      }
      return true;
    }
    if (a == b) {
      const auto l = static_cast<std::size_t>(na.left);
      const auto r = static_cast<std::size_t>(na.right);
      return join(l, l, r2, f) && join(l, r, r2, f) && join(r, r, r2, f);
    }
    if (na.leaf() || (!nb.leaf() && nb.size() > na.size())) {
      return join(a, static_cast<std::size_t>(nb.left), r2, f) &&
             join(a, static_cast<std::size_t>(nb.right), r2, f);
    }
    return join(static_cast<std::size_t>(na.left), b, r2, f) &&
           join(static_cast<std::size_t>(na.right), b, r2, f);
  }

  std::size_t dim_;
  std::vector<std::uint32_t> order_;  // tree position -> point index
  std::vector<Node> nodes_;
  std::vector<double> box_lo_;
  std::vector<double> box_hi_;
  std::vector<double> coords_;
};

std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

bool is_excluded(const PairSet* excluded, std::uint32_t i, std::uint32_t j) {
  return excluded != nullptr && excluded->contains(i, j);
}

std::vector<PairDistance> all_pairs(const PointSet& points, const PairSet* excluded) {
  const std::size_t n = points.size();
  std::vector<PairDistance> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (is_excluded(excluded, i, j)) continue;
      out.push_back({i, j, std::sqrt(squared_distance(points.row(i), points.row(j)))});
    }
  }
  return out;
}

// Non-excluded pairs within r2; counting stops once it exceeds `cap`.
std::size_t count_within(const KdTree& tree, double r2, std::size_t cap,
                         const PairSet* excluded) {
  std::size_t count = 0;
  tree.for_each_pair_within(r2, [&](std::uint32_t i, std::uint32_t j, double) {
    if (is_excluded(excluded, i, j)) return true;
    return ++count <= cap;
  });
  return count;
}

// A squared radius expected to hold about 2k non-excluded pairs, read off the
// distances from a fixed sample of points to all others.
double estimate_radius2(const PointSet& points, std::size_t k, const PairSet* excluded) {
  const std::size_t n = points.size();
  const std::size_t s = std::min<std::size_t>(n, 256);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<std::uint32_t> sample(n);
  std::iota(sample.begin(), sample.end(), 0u);
  for (std::size_t t = 0; t < s; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng() % (n - t));
    std::swap(sample[t], sample[pick]);
  }
  std::vector<double> d2;
  for (std::size_t t = 0; t < s; ++t) {
    const std::uint32_t x = sample[t];
    for (std::uint32_t y = 0; y < n; ++y) {
      if (y == x || is_excluded(excluded, x, y)) continue;
      d2.push_back(squared_distance(points.row(x), points.row(y)));
    }
  }
  if (d2.empty()) return 0.0;
  // Ordered sample pairs within r scale to n/s times that many ordered pairs
  // overall, i.e. n/(2s) unordered ones.
  const double want = std::ceil(4.0 * static_cast<double>(k) * static_cast<double>(s) /
                                static_cast<double>(n));
  const std::size_t rank = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, d2.size());
  std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(rank - 1), d2.end());
  return d2[rank - 1];
}

std::vector<PairDistance> closest_pairs(const PointSet& points, std::size_t k,
                                        const PairSet* excluded) {
  if (k == 0) throw ConfigError("k must be at least 1");
  const std::size_t n = points.size();
  const std::size_t total = pair_count(n);
  // Excluded keys may name pairs outside the point set; this only makes the
  // brute-force switch more eager.
  const std::size_t blocked = excluded ? std::min(total, excluded->size()) : 0;
  const std::size_t available = total - blocked;
  if (total == 0) return {};

  std::vector<PairDistance> result;
  if (n <= 64 || k >= available / 4) {
    result = all_pairs(points, excluded);
  } else {
    const KdTree tree(points);
    // Find hi with k <= count(hi) <= cap. Growing stops at the root
    // diameter, where every available pair counts.
    const std::size_t cap = 4 * k;
    const double diameter2 = tree.diameter2();
    double lo = 0.0;
    double hi = std::min(estimate_radius2(points, k, excluded), diameter2);
    std::size_t count = count_within(tree, hi, cap, excluded);
    if (count < k) {
      while (count < k && hi < diameter2) {
        lo = hi;
        hi = hi > 0.0 ? std::min(2.0 * hi, diameter2) : diameter2 * 1e-6;
        count = count_within(tree, hi, cap, excluded);
      }
      if (count < k) hi = diameter2;
    }
    for (int iter = 0; iter < 64 && count > cap; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const std::size_t c = count_within(tree, mid, cap, excluded);
      if (c >= k) {
        hi = mid;
        count = c;
      } else {
        lo = mid;
      }
    }

    // Slack keeps near-tied pairs at the boundary in the candidate set.
    const double r2 = hi * (1.0 + 1e-9);
    tree.for_each_pair_within(r2, [&](std::uint32_t i, std::uint32_t j, double d2) {
      if (!is_excluded(excluded, i, j)) result.push_back({i, j, std::sqrt(d2)});
      return true;
    });
  }
  sort_pairs_canonically(result);
  if (result.size() > k) result.resize(k);
  return result;
}

}  // namespace

std::vector<PairDistance> k_closest_pairs(const PointSet& points, std::size_t k) {
  return closest_pairs(points, k, nullptr);
}

std::vector<PairDistance> k_closest_pairs_excluding(const PointSet& points, std::size_t k,
                                                    const PairSet& excluded) {
  return closest_pairs(points, k, &excluded);
}

}  // namespace linkpred
