#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <numeric>
#include <random>

namespace oracle {

std::vector<std::pair<VertexId, VertexId>> random_edges(std::size_t n, double p, std::uint64_t seed,
                                                        bool connected) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  if (connected) {
    for (VertexId v = 1; v < n; ++v) {
      std::uniform_int_distribution<VertexId> parent(0, v - 1);
      edges.emplace_back(parent(rng), v);
    }
  }
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (coin(rng) < p) edges.emplace_back(a, b);
    }
  }
  return edges;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool connected) {
  const auto edges = random_edges(n, p, seed, connected);
  return Graph::from_edges(edges, n);
}

std::vector<std::set<VertexId>> neighbor_sets(const Graph& g) {
  std::vector<std::set<VertexId>> nb(g.num_vertices());
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    for (VertexId y : g.neighbors(x)) nb[x].insert(y);
  }
  return nb;
}

double local_score(const std::vector<std::set<VertexId>>& nb, Local m, VertexId x, VertexId y) {
  std::vector<VertexId> common;
  std::set_intersection(nb[x].begin(), nb[x].end(), nb[y].begin(), nb[y].end(),
                        std::back_inserter(common));
  switch (m) {
    case Local::cn:
      return static_cast<double>(common.size());
    case Local::jaccard: {
      std::set<VertexId> uni = nb[x];
      uni.insert(nb[y].begin(), nb[y].end());
      return uni.empty() ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(uni.size());
    }
    case Local::adamic_adar: {
      double s = 0.0;
      for (VertexId z : common) s += 1.0 / std::log(static_cast<double>(nb[z].size()));
      return s;
    }
    case Local::resource_allocation: {
      double s = 0.0;
      for (VertexId z : common) s += 1.0 / static_cast<double>(nb[z].size());
      return s;
    }
    case Local::pref_attach:
      return static_cast<double>(nb[x].size()) * static_cast<double>(nb[y].size());
  }
  return 0.0;
}

std::vector<ScoredPair> all_non_edge_scores(const Graph& g, Local m) {
  const auto nb = neighbor_sets(g);
  std::vector<ScoredPair> out;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    for (VertexId y = x + 1; y < g.num_vertices(); ++y) {
      if (nb[x].count(y)) continue;
      out.push_back({x, y, local_score(nb, m, x, y)});
    }
  }
  return out;
}

std::vector<ScoredPair> top_k(std::vector<ScoredPair> pairs, std::size_t k, bool drop_zero) {
  if (drop_zero) {
    std::erase_if(pairs, [](const ScoredPair& p) { return p.score == 0.0; });
  }
  std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.score > b.score) return true;
    if (a.score < b.score) return false;
    return std::make_pair(a.x, a.y) < std::make_pair(b.x, b.y);
  });
  if (pairs.size() > k) pairs.resize(k);
  return pairs;
}

Eigen::MatrixXd adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    for (VertexId y : g.neighbors(x)) a(x, y) = 1.0;
  }
  return a;
}

Eigen::MatrixXd katz_series(const Graph& g, double beta, int terms) {
  const Eigen::MatrixXd a = adjacency(g);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (int l = 1; l <= terms; ++l) {
    power = beta * (power * a);
    sum += power;
  }
  return sum;
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  Eigen::MatrixXd l = -adjacency(g);
  for (Eigen::Index i = 0; i < l.rows(); ++i) l(i, i) = -l.row(i).sum();
  return l;
}

Eigen::MatrixXd laplacian_pinv(const Graph& g) {
  return dense_laplacian(g).completeOrthogonalDecomposition().pseudoInverse();
}

Eigen::MatrixXd resistance_matrix(const Graph& g) {
  const Eigen::MatrixXd p = laplacian_pinv(g);
  const auto n = p.rows();
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(x) += 1.0;
      e(y) -= 1.0;
      r(x, y) = e.dot(p * e);
    }
  }
  return r;
}

Eigen::VectorXd laplacian_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<std::vector<int>> hop_distances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (VertexId x = 0; x < n; ++x) {
    d[x][x] = 0;
    for (VertexId y : g.neighbors(x)) d[x][y] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  for (auto& row : d) {
    for (int& v : row) {
      if (v >= kInf) v = -1;
    }
  }
  return d;
}

std::vector<IndexPair> ranked_pairs(const linkpred::PointSet& points,
                                    const std::set<std::pair<std::uint32_t, std::uint32_t>>& excluded) {
  std::vector<IndexPair> all;
  const std::size_t n = points.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (excluded.count({i, j})) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < points.dim(); ++c) {
        const double diff = points.row(i)[c] - points.row(j)[c];
        s += diff * diff;
      }
      all.push_back({i, j, std::sqrt(s)});
    }
  }
  std::sort(all.begin(), all.end(), [](const IndexPair& a, const IndexPair& b) {
    return std::tie(a.distance, a.i, a.j) < std::tie(b.distance, b.i, b.j);
  });
  // Regroup near-ties: walk runs whose neighbours differ by <= 1e-12 relative.
  std::size_t s = 0;
  while (s < all.size()) {
    std::size_t e = s + 1;
    while (e < all.size() && all[e].distance - all[e - 1].distance <= 1e-12 * all[e].distance) ++e;
    std::sort(all.begin() + static_cast<std::ptrdiff_t>(s), all.begin() + static_cast<std::ptrdiff_t>(e),
              [](const IndexPair& a, const IndexPair& b) {
                return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    s = e;
  }
  return all;
}

linkpred::PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                                 bool integer_grid) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> grid(0, 4);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = integer_grid ? grid(rng) : u(rng);
  return linkpred::PointSet(std::move(coords), d);
}

}  // namespace oracle
