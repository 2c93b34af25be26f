#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "linkpred/errors.hpp"
#include "linkpred/kernels.hpp"
#include "oracles.hpp"

using namespace linkpred;

namespace {

Graph from(std::initializer_list<std::pair<VertexId, VertexId>> e, std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> v(e);
  return Graph::from_edges(v, n);
}

Graph path(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(e, n);
}

// Brute-force ranking of every non-edge by an arbitrary score function.
template <class F>
std::vector<ScoredPair> brute_rank(const Graph& g, std::size_t k, F score) {
  std::vector<ScoredPair> all;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    for (VertexId y = x + 1; y < g.num_vertices(); ++y) {
      if (!g.has_edge(x, y)) all.push_back({x, y, score(x, y)});
    }
  }
  return oracle::top_k(all, k, false);
}

}  // namespace

TEST(Katz, PathMatchesTruncatedSeries) {
  const Graph g = path(3);
  const GraphKernel k = katz_kernel(g, {0.01});
  const Eigen::MatrixXd series = oracle::katz_series(g, 0.01, 20);
  EXPECT_NEAR(k.values(0, 2), series(0, 2), 1e-12);
}

TEST(Katz, SingleEdgeClosedForm) {
  for (double beta : {0.01, 0.3, 0.7}) {
    const GraphKernel k = katz_kernel(from({{0, 1}}, 2), {beta});
    EXPECT_NEAR(k.values(0, 1), beta / (1 - beta * beta), 1e-14);
  }
}

TEST(Katz, NoPathMeansZero) {
  const GraphKernel k = katz_kernel(from({{0, 1}, {2, 3}}, 4), {0.1});
  EXPECT_EQ(k.values(0, 3), 0.0);
}

TEST(Katz, SymmetricNonnegativeAndVanishingWithBeta) {
  const Graph g = oracle::random_graph(40, 0.1, 3);
  double previous = 1e300;
  for (double beta : {0.05, 0.01, 0.001, 1e-5}) {
    const GraphKernel k = katz_kernel(g, {beta});
    EXPECT_LE((k.values - k.values.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GE(k.values.minCoeff(), -1e-15);
    const double biggest = k.values.cwiseAbs().maxCoeff();
    EXPECT_LT(biggest, previous);
    previous = biggest;
  }
  EXPECT_LT(previous, 1e-4);
}

TEST(Katz, DivergentBetaIsComputeError) {
  // K5 has spectral radius 4.
  const Graph k5 = oracle::random_graph(5, 1.0, 1);
  EXPECT_THROW(katz_kernel(k5, {0.25}), ComputeError);
  EXPECT_THROW(katz_kernel(k5, {0.5}), ComputeError);
  EXPECT_NO_THROW(katz_kernel(k5, {0.24}));
}

TEST(Katz, SizeGuardNamesFlag) {
  try {
    katz_kernel(path(20), {0.01}, 10);
    FAIL();
  } catch (const ComputeError& e) {
    EXPECT_NE(std::string(e.what()).find("--dense-guard"), std::string::npos);
  }
}

TEST(Katz, RankingMatchesSeriesOracle) {
  // Scores tied in exact arithmetic can differ in the last bit between the
  // solve and the series, so compare up to a 1e-14 slack at the boundary.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = oracle::random_graph(50, 0.08, seed);
    const Eigen::MatrixXd series = oracle::katz_series(g, 0.01, 40);
    const auto got = predict_from_kernel(g, katz_kernel(g, {0.01}), 30);
    ASSERT_EQ(got.size(), 30u);
    std::set<std::pair<VertexId, VertexId>> chosen;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_FALSE(g.has_edge(got[i].x, got[i].y));
      EXPECT_NEAR(got[i].score, series(got[i].x, got[i].y), 1e-15);
      if (i > 0) EXPECT_LE(got[i].score, got[i - 1].score + 1e-14);
      chosen.insert({got[i].x, got[i].y});
    }
    const auto expect = brute_rank(g, 30, [&](VertexId x, VertexId y) { return series(x, y); });
    for (const ScoredPair& p : expect) {
      if (!chosen.count({p.x, p.y})) EXPECT_LE(p.score, got.back().score + 1e-14);
    }
  }
}

TEST(RootedPageRank, RowsSumToOne) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = oracle::random_graph(40, 0.1, seed, true);
    const GraphKernel k = rooted_pagerank_kernel(g, {0.15});
    for (Eigen::Index r = 0; r < k.values.rows(); ++r) EXPECT_NEAR(k.values.row(r).sum(), 1.0, 1e-10);
    EXPECT_GE(k.values.minCoeff(), 0.0);
    EXPECT_LE(k.values.maxCoeff(), 1.0);
  }
}

TEST(RootedPageRank, K2ClosedForm) {
  const GraphKernel k = rooted_pagerank_kernel(from({{0, 1}}, 2), {0.5});
  EXPECT_NEAR(k.values(0, 0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(k.values(0, 1), 1.0 / 3.0, 1e-14);
}

TEST(RootedPageRank, SmallAlphaNearIdentity) {
  const GraphKernel k = rooted_pagerank_kernel(from({{0, 1}, {1, 2}, {0, 2}}, 3), {0.01});
  EXPECT_LE((k.values - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(RootedPageRank, IsolatedVertexIsError) {
  EXPECT_THROW(rooted_pagerank_kernel(from({{0, 1}}, 3), {0.15}), ComputeError);
}

TEST(Resistance, SeriesAndParallel) {
  const Eigen::MatrixXd r3 = effective_resistance(path(3));
  EXPECT_NEAR(r3(0, 2), 2.0, 1e-12);
  const Eigen::MatrixXd k3 = effective_resistance(from({{0, 1}, {1, 2}, {0, 2}}, 3));
  EXPECT_NEAR(k3(0, 1), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(k3(1, 2), 2.0 / 3.0, 1e-12);
}

TEST(Resistance, MatchesPseudoinverseOracle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = oracle::random_graph(30, 0.12, seed, true);
    const Eigen::MatrixXd expect = oracle::resistance_matrix(g);
    const Eigen::MatrixXd got = effective_resistance(g);
    EXPECT_LE((got - expect).cwiseAbs().maxCoeff(), 1e-10);
    const Eigen::MatrixXd pinv = laplacian_pseudoinverse(g);
    EXPECT_LE((pinv - oracle::laplacian_pinv(g)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Resistance, IsAMetric) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = oracle::random_graph(25, 0.15, seed, true);
    const Eigen::MatrixXd r = effective_resistance(g);
    for (Eigen::Index x = 0; x < 25; ++x) {
      EXPECT_NEAR(r(x, x), 0.0, 1e-12);
      for (Eigen::Index y = 0; y < 25; ++y) {
        EXPECT_GE(r(x, y), -1e-12);
        EXPECT_NEAR(r(x, y), r(y, x), 1e-12);
        for (Eigen::Index z = 0; z < 25; ++z) EXPECT_LE(r(x, y), r(x, z) + r(z, y) + 1e-12);
      }
    }
  }
}

TEST(Resistance, RayleighMonotonicity) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto edges = oracle::random_edges(20, 0.1, seed, true);
    const Eigen::MatrixXd before = effective_resistance(Graph::from_edges(edges, 20));
    const VertexId a = rng() % 20;
    const VertexId b = (a + 1 + rng() % 19) % 20;
    edges.emplace_back(a, b);
    const Eigen::MatrixXd after = effective_resistance(Graph::from_edges(edges, 20));
    EXPECT_LE((after - before).maxCoeff(), 1e-12);
  }
}

TEST(Resistance, DisconnectedIsError) {
  EXPECT_THROW(exact_resistance_kernel(from({{0, 1}, {2, 3}}, 4)), ComputeError);
}

TEST(Resistance, CommuteTimeScalingKeepsRanking) {
  const Graph g = oracle::random_graph(30, 0.1, 8, true);
  const Eigen::MatrixXd r = oracle::resistance_matrix(g);
  const double scale = 2.0 * static_cast<double>(g.num_edges());
  const auto by_r = brute_rank(g, 20, [&](VertexId x, VertexId y) { return -r(x, y); });
  const auto by_c = brute_rank(g, 20, [&](VertexId x, VertexId y) { return -scale * r(x, y); });
  const auto got = predict_from_kernel(g, exact_resistance_kernel(g), 20);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(by_r[i].x, by_c[i].x);
    EXPECT_EQ(by_r[i].y, by_c[i].y);
    EXPECT_EQ(got[i].x, by_r[i].x);
    EXPECT_EQ(got[i].y, by_r[i].y);
  }
}

TEST(PredictFromKernel, ZeroKernelIsLexicographic) {
  const Graph g = path(4);
  GraphKernel zero{"zero", Eigen::MatrixXd::Zero(4, 4), true};
  const auto top = predict_from_kernel(g, zero, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0], (ScoredPair{0, 2, 0.0}));
  EXPECT_EQ(top[1], (ScoredPair{0, 3, 0.0}));
  EXPECT_EQ(top[2], (ScoredPair{1, 3, 0.0}));
}

TEST(PredictFromKernel, ShortestPathOnPath) {
  const auto top = predict_from_kernel(path(4), shortest_path_kernel(path(4)), 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0], (ScoredPair{0, 2, -2.0}));
}

TEST(ShortestPathKernel, UnreachableBelowEveryDistance) {
  const GraphKernel k = shortest_path_kernel(from({{0, 1}, {1, 2}, {3, 4}}, 5));
  EXPECT_EQ(k.values(0, 2), -2.0);
  EXPECT_EQ(k.values(0, 4), -5.0);
}

TEST(PredictFromKernel, LastBitNoiseCountsAsTie) {
  // (0,2) and (1,3) are tied up to one ulp; the lexicographic rule decides.
  const Graph g = path(4);
  GraphKernel kv{"noisy", Eigen::MatrixXd::Zero(4, 4), true};
  kv.values(0, 2) = kv.values(2, 0) = 0.3;
  kv.values(1, 3) = kv.values(3, 1) = std::nextafter(0.3, 1.0);
  kv.values(0, 3) = kv.values(3, 0) = 0.3 - 1e-6;
  const auto top = predict_from_kernel(g, kv, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].x, 0u);
  EXPECT_EQ(top[0].y, 2u);
  const auto all = predict_from_kernel(g, kv, 3);
  EXPECT_EQ(all[2].x, 0u);
  EXPECT_EQ(all[2].y, 3u);
}
