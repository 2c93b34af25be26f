#include "linkpred/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linkpred/errors.hpp"

namespace linkpred {

namespace {

void check_guard(const Graph& g, std::size_t guard, const char* what) {
  if (g.num_vertices() > guard) {
    throw ComputeError(std::string(what) + " needs a dense " + std::to_string(g.num_vertices()) +
                       "x" + std::to_string(g.num_vertices()) +
                       " matrix, above the dense guard of " + std::to_string(guard) +
                       "; raise --dense-guard or use spec_euclid/spec_cosine");
  }
}

}  // namespace

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    for (VertexId y : g.neighbors(x)) a(x, y) = 1.0;
  }
  return a;
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  Eigen::MatrixXd l = -dense_adjacency(g);
  for (VertexId x = 0; x < g.num_vertices(); ++x) l(x, x) = static_cast<double>(g.degree(x));
  return l;
}

SpectralRadiusEstimate estimate_spectral_radius(const Graph& g, double rel_tol,
                                                std::size_t max_iterations) {
  const std::size_t n = g.num_vertices();
  SpectralRadiusEstimate est;
  if (n == 0 || g.num_edges() == 0) return est;
  // Iterating with A + I keeps the iterate positive and avoids the +/- rho
  // oscillation on bipartite graphs.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> ax(n);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    double dot = 0.0;
    double norm2 = 0.0;
    double upper = 0.0;
    for (VertexId i = 0; i < n; ++i) {
      double s = 0.0;
      for (VertexId j : g.neighbors(i)) s += x[j];
      ax[i] = s;
      dot += x[i] * s;
      upper = std::max(upper, s / x[i]);
    }
    est.lower = dot;  // x has unit norm
    est.upper = upper;
    est.iterations = it;
    if (est.upper - est.lower <= rel_tol * est.upper) break;
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] += x[i];
      norm2 += ax[i] * ax[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(ax[i] * inv, 1e-300);
  }
  return est;
}

GraphKernel katz_kernel(const Graph& g, KatzParams params, std::size_t dense_guard) {
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw ConfigError("Katz beta must lie in (0, 1), got " + std::to_string(params.beta));
  }
  check_guard(g, dense_guard, "Katz");
  // The Rayleigh quotient is a lower bound on rho(A), so beta * lower >= 1
  // already proves divergence (with 1e-10 slack: at beta = 1/rho the system is
  // singular but rounding can let the factorization through). Otherwise the Cholesky factorization decides:
  // I - beta A is positive definite exactly when beta * rho(A) < 1.
  const SpectralRadiusEstimate rho = estimate_spectral_radius(g);
  auto diverges = [&] {
    return ComputeError("Katz series diverges: beta=" + std::to_string(params.beta) +
                        " but the spectral radius of A is about " + std::to_string(rho.lower) +
                        " (need beta < " + std::to_string(1.0 / rho.upper) + ")");
  };
  if (params.beta * rho.lower >= 1.0 - 1e-10) throw diverges();
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - params.beta * dense_adjacency(g);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw diverges();
  GraphKernel k;
  k.name = "katz";
  k.values = llt.solve(Eigen::MatrixXd::Identity(n, n)) - Eigen::MatrixXd::Identity(n, n);
  k.values = 0.5 * (k.values + k.values.transpose()).eval();
  k.symmetric = true;
  return k;
}

GraphKernel rooted_pagerank_kernel(const Graph& g, PageRankParams params,
                                   std::size_t dense_guard) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
    throw ConfigError("rooted PageRank alpha must lie in (0, 1), got " +
                      std::to_string(params.alpha));
  }
  check_guard(g, dense_guard, "rooted PageRank");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    const std::size_t deg = g.degree(x);
    if (deg == 0) {
      throw ComputeError("rooted PageRank needs every vertex to have a neighbor; vertex " +
                         std::to_string(x) + " is isolated");
    }
    const double w = params.alpha / static_cast<double>(deg);
    for (VertexId y : g.neighbors(x)) m(x, y) -= w;
  }
  GraphKernel k;
  k.name = "pagerank";
  k.values = (1.0 - params.alpha) * m.partialPivLu().inverse();
  k.symmetric = false;
  return k;
}

Eigen::MatrixXd laplacian_pseudoinverse(const Graph& g, std::size_t dense_guard) {
  check_guard(g, dense_guard, "exact resistance");
  if (!is_connected(g)) {
    throw ComputeError("exact resistance needs a connected graph; reduce to the largest "
                       "connected component first");
  }
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd m = dense_laplacian(g).array() + inv_n;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw ComputeError("L + J/n is not positive definite");
  }
  Eigen::MatrixXd pinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= inv_n;
  return 0.5 * (pinv + pinv.transpose());
}

Eigen::MatrixXd effective_resistance(const Graph& g, std::size_t dense_guard) {
  const Eigen::MatrixXd pinv = laplacian_pseudoinverse(g, dense_guard);
  const Eigen::VectorXd diag = pinv.diagonal();
  const auto n = pinv.rows();
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index x = 0; x < n; ++x) {
      r(x, y) = x == y ? 0.0 : diag(x) + diag(y) - 2.0 * pinv(x, y);
    }
  }
  return r;
}

GraphKernel exact_resistance_kernel(const Graph& g, std::size_t dense_guard) {
  GraphKernel k;
  k.name = "resistance";
  k.values = -effective_resistance(g, dense_guard);
  k.symmetric = true;
  return k;
}

GraphKernel shortest_path_kernel(const Graph& g, std::size_t dense_guard) {
  check_guard(g, dense_guard, "shortest path");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  GraphKernel k;
  k.name = "shortest_path";
  k.values.resize(n, n);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    const auto dist = bfs_distances(g, x);
    for (Eigen::Index y = 0; y < n; ++y) {
      const auto d = dist[static_cast<std::size_t>(y)];
      k.values(x, y) = d < 0 ? -static_cast<double>(n) : -static_cast<double>(d);
    }
  }
  k.symmetric = true;
  return k;
}

std::vector<ScoredPair> predict_from_kernel(const Graph& g, const GraphKernel& kernel,
                                            std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  const std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(kernel.values.rows()) != n ||
      static_cast<std::size_t>(kernel.values.cols()) != n) {
    throw ConfigError("kernel dimension does not match the graph");
  }
  auto for_each_non_edge = [&](auto&& visit) {
    for (VertexId x = 0; x < n; ++x) {
      auto nbrs = g.neighbors(x);
      auto nb = std::upper_bound(nbrs.begin(), nbrs.end(), x);
      for (VertexId y = x + 1; y < n; ++y) {
        if (nb != nbrs.end() && *nb == y) {
          ++nb;
          continue;
        }
        visit(ScoredPair{x, y, kernel.pair_score(x, y)});
      }
    }
  };
  TopK top(k);
  for_each_non_edge([&](const ScoredPair& p) { top.push(p); });
  std::vector<ScoredPair> best = top.take_sorted();
  if (best.empty()) return best;
  // Scores that are equal in exact arithmetic can differ in the last bits
  // after a solve, so near-ties are ordered by (x, y) like distance ties in
  // the closest-pairs search. Gather everything that could chain into a tie
  // with the k-th score, widening until the cut is clean.
  double floor = best.back().score;
  for (;;) {
    std::vector<ScoredPair> candidates;
    double below = -std::numeric_limits<double>::infinity();
    for_each_non_edge([&](const ScoredPair& p) {
      if (p.score >= floor || scores_tied(p.score, floor)) {
        candidates.push_back(p);
      } else {
        below = std::max(below, p.score);
      }
    });
    sort_scores_canonically(candidates);
    if (std::isinf(below) || !scores_tied(candidates.back().score, below)) {
      if (candidates.size() > k) candidates.resize(k);
      return candidates;
    }
    floor = below;
  }
}

}  // namespace linkpred
