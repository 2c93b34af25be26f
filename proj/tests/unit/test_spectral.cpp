#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "linkpred/errors.hpp"
#include "linkpred/spectral.hpp"
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

EigenSolverOptions with(EigenMethod m) {
  EigenSolverOptions o;
  o.method = m;
  return o;
}

constexpr EigenMethod kMethods[] = {EigenMethod::dense, EigenMethod::lobpcg};

// Checks the residual, orthonormality and deflation contract against the
// dense Laplacian.
void expect_contract(const Graph& g, const EigenPairs& p, double tol) {
  const Eigen::MatrixXd l = oracle::dense_laplacian(g);
  const auto n = static_cast<double>(g.num_vertices());
  const auto d = p.values.size();
  for (Eigen::Index i = 0; i < d; ++i) {
    EXPECT_GT(p.values(i), 0.0);
    if (i > 0) EXPECT_LE(p.values(i - 1), p.values(i) + 1e-12);
    const Eigen::VectorXd v = p.vectors.col(i);
    EXPECT_LE((l * v - p.values(i) * v).norm(), tol * std::max(1.0, p.values(i)));
    EXPECT_LE(std::abs(v.sum()), 1e-8 * std::sqrt(n));
  }
  const Eigen::MatrixXd gram = p.vectors.transpose() * p.vectors;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-8);
}

double sqdist(const PointSet& p, std::size_t a, std::size_t b) {
  return squared_distance(p.row(a), p.row(b));
}

}  // namespace

TEST(Eigenpairs, PathP3) {
  for (EigenMethod m : kMethods) {
    const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(path(3)), 2, with(m));
    ASSERT_EQ(p.values.size(), 2);
    EXPECT_NEAR(p.values(0), 1.0, 1e-10);
    EXPECT_NEAR(p.values(1), 3.0, 1e-10);
  }
}

TEST(Eigenpairs, CompleteGraph) {
  for (std::size_t n : {3u, 6u, 10u}) {
    const Graph kn = oracle::random_graph(n, 1.0, 1);
    for (EigenMethod m : kMethods) {
      const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(kn), 1, with(m));
      EXPECT_NEAR(p.values(0), static_cast<double>(n), 1e-9);
    }
  }
}

TEST(Eigenpairs, CycleC4RepeatedValue) {
  const Graph c4 = from({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 4);
  for (EigenMethod m : kMethods) {
    const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(c4), 2, with(m));
    EXPECT_NEAR(p.values(0), 2.0, 1e-10);
    EXPECT_NEAR(p.values(1), 2.0, 1e-10);
    expect_contract(c4, p, 1e-8);
  }
}

TEST(Eigenpairs, MatchDenseSpectrumOracle) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const std::size_t n = 60 + 20 * seed;
    const Graph g = oracle::random_graph(n, 3.0 / static_cast<double>(n), seed, true);
    const Eigen::VectorXd spectrum = oracle::laplacian_spectrum(g);
    for (EigenMethod m : kMethods) {
      const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(g), 6, with(m));
      expect_contract(g, p, 1e-8);
      for (Eigen::Index i = 0; i < 6; ++i) {
        EXPECT_NEAR(p.values(i), spectrum(i + 1), 1e-8 * std::max(1.0, spectrum(i + 1)));
      }
    }
  }
}

TEST(Eigenpairs, RejectsBadInput) {
  EXPECT_THROW(smallest_nonzero_eigenpairs(LaplacianView(path(4)), 0), ConfigError);
  EXPECT_THROW(smallest_nonzero_eigenpairs(LaplacianView(path(4)), 4), ConfigError);
  EXPECT_THROW(smallest_nonzero_eigenpairs(LaplacianView(from({{0, 1}, {2, 3}}, 4)), 1),
               ComputeError);
}

TEST(Eigenpairs, IterationBudgetIsConvergenceError) {
  EigenSolverOptions o = with(EigenMethod::lobpcg);
  o.max_iterations = 1;
  o.tol = 1e-14;
  const Graph g = oracle::random_graph(300, 0.01, 3, true);
  EXPECT_THROW(smallest_nonzero_eigenpairs(LaplacianView(g), 4, o), ConvergenceError);
}

TEST(Embedding, P3FullDimensionIsExactResistance) {
  const SpectralEmbedding e = compute_resistance_embedding(path(3), 2);
  EXPECT_NEAR(sqdist(e.coords, 0, 2), 2.0, 1e-10);
  EXPECT_NEAR(sqdist(e.coords, 0, 1), 1.0, 1e-10);
}

TEST(Embedding, K3ParallelResistance) {
  const SpectralEmbedding e = compute_resistance_embedding(from({{0, 1}, {1, 2}, {0, 2}}, 3), 2);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) EXPECT_NEAR(sqdist(e.coords, a, b), 2.0 / 3.0, 1e-10);
  }
}

TEST(Embedding, FullDimensionMatchesPseudoinverseOracle) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = 10 + 5 * seed;
    const Graph g = oracle::random_graph(n, 0.15, seed, true);
    const Eigen::MatrixXd r = oracle::resistance_matrix(g);
    const SpectralEmbedding e = compute_resistance_embedding(g, n - 1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        EXPECT_NEAR(sqdist(e.coords, a, b), r(a, b), 1e-6 * r(a, b));
      }
    }
  }
}

TEST(Embedding, OneDimensionIsScaledFiedlerVector) {
  const Graph g = oracle::random_graph(30, 0.15, 2, true);
  const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(g), 1);
  const SpectralEmbedding e = resistance_embedding(p);
  for (std::size_t x = 0; x < 30; ++x) {
    EXPECT_DOUBLE_EQ(e.coords.row(x)[0], p.vectors(x, 0) / std::sqrt(p.values(0)));
  }
}

TEST(Embedding, ColumnNormsAndOrthogonality) {
  const Graph g = oracle::random_graph(120, 0.04, 5, true);
  const SpectralEmbedding e = compute_resistance_embedding(g, 6);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      e.coords.coords().data(), 120, 6);
  const Eigen::MatrixXd gram = m.transpose() * m;
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(gram(i, i), 1.0 / e.eigenvalues[i], 1e-8 / e.eigenvalues[i]);
    for (Eigen::Index j = 0; j < 6; ++j) {
      if (i != j) EXPECT_NEAR(gram(i, j), 0.0, 1e-8);
    }
  }
}

TEST(Embedding, SignFlipsLeaveDistancesUnchanged) {
  const Graph g = oracle::random_graph(50, 0.1, 7, true);
  const EigenPairs p = smallest_nonzero_eigenpairs(LaplacianView(g), 5);
  const SpectralEmbedding base = resistance_embedding(p);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    EigenPairs flipped = p;
    for (Eigen::Index c = 0; c < 5; ++c) {
      if (rng() & 1) flipped.vectors.col(c) *= -1.0;
    }
    const SpectralEmbedding e = resistance_embedding(flipped);
    for (std::size_t a = 0; a < 50; ++a) {
      for (std::size_t b = a + 1; b < 50; ++b) {
        EXPECT_EQ(sqdist(e.coords, a, b), sqdist(base.coords, a, b));
      }
    }
  }
}

TEST(Embedding, ApproximationImprovesAcrossEigengaps) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = oracle::random_graph(40, 0.12, seed, true);
    const Eigen::MatrixXd r = oracle::resistance_matrix(g);
    const SpectralEmbedding full = compute_resistance_embedding(g, 39);
    auto error_at = [&](std::size_t d) {
      double worst = 0.0;
      for (std::size_t a = 0; a < 40; ++a) {
        for (std::size_t b = a + 1; b < 40; ++b) {
          double s = 0.0;
          for (std::size_t c = 0; c < d; ++c) {
            const double diff = full.coords.row(a)[c] - full.coords.row(b)[c];
            s += diff * diff;
          }
          worst = std::max(worst, std::abs(r(a, b) - s));
        }
      }
      return worst;
    };
    double previous = error_at(1);
    for (std::size_t d = 2; d <= 39; ++d) {
      // Only compare at strict gaps; inside a multiplicity the basis is arbitrary.
      if (full.eigenvalues[d - 1] - full.eigenvalues[d - 2] < 1e-6) continue;
      const double err = error_at(d);
      EXPECT_LE(err, previous + 1e-9) << "seed=" << seed << " d=" << d;
      previous = err;
    }
    EXPECT_LE(error_at(39), 1e-8);
  }
}

TEST(Normalize, Examples) {
  SpectralEmbedding e;
  e.coords = PointSet({3.0, 4.0, 1.0, 0.0, 0.0, 0.0}, 2);
  const SpectralEmbedding u = normalize_embedding(e);
  EXPECT_TRUE(u.normalized);
  EXPECT_DOUBLE_EQ(u.coords.row(0)[0], 0.6);
  EXPECT_DOUBLE_EQ(u.coords.row(0)[1], 0.8);
  EXPECT_EQ(u.coords.row(1)[0], 1.0);
  EXPECT_EQ(u.coords.row(1)[1], 0.0);
  EXPECT_EQ(u.coords.row(2)[0], 0.0);
  EXPECT_EQ(u.coords.row(2)[1], 0.0);
  ASSERT_EQ(u.warnings.size(), 1u);
}

TEST(Normalize, RowsHaveUnitNorm) {
  const SpectralEmbedding e =
      normalize_embedding(compute_resistance_embedding(oracle::random_graph(80, 0.06, 4, true), 8));
  for (std::size_t x = 0; x < 80; ++x) {
    const double n2 = squared_distance(e.coords.row(x), std::vector<double>(8, 0.0));
    EXPECT_NEAR(n2, 1.0, 1e-14);
  }
}

TEST(Persistence, BinaryRoundTripIsBitExact) {
  const SpectralEmbedding e = compute_resistance_embedding(oracle::random_graph(70, 0.07, 6, true), 5);
  std::stringstream buf;
  write_embedding_binary(buf, e);
  EXPECT_EQ(buf.str().substr(0, 8), "LPEMBED1");
  EXPECT_EQ(buf.str().size(), 8 + 16 + 5 * 8 + 70 * 5 * 8u);
  const SpectralEmbedding back = read_embedding_binary(buf);
  EXPECT_EQ(back.coords.coords(), e.coords.coords());
  EXPECT_EQ(back.eigenvalues, e.eigenvalues);
  EXPECT_EQ(back.dim(), 5u);
}

TEST(Persistence, TextRoundTripIsExact) {
  const SpectralEmbedding e = compute_resistance_embedding(oracle::random_graph(40, 0.1, 9, true), 3);
  std::stringstream buf;
  write_embedding_text(buf, e);
  std::string first;
  std::getline(buf, first);
  EXPECT_EQ(first, "40 3");
  buf.seekg(0);
  const SpectralEmbedding back = read_embedding_text(buf);
  EXPECT_EQ(back.coords.coords(), e.coords.coords());
  EXPECT_EQ(back.eigenvalues, e.eigenvalues);
}

TEST(Persistence, TruncatedInputIsError) {
  const SpectralEmbedding e = compute_resistance_embedding(path(5), 2);
  std::stringstream bin;
  write_embedding_binary(bin, e);
  std::stringstream cut(bin.str().substr(0, bin.str().size() - 3));
  EXPECT_THROW(read_embedding_binary(cut), InputError);
  std::stringstream bad("3 2\n1 2\n0 0\n");
  EXPECT_THROW(read_embedding_text(bad), InputError);
  std::stringstream magic("NOTEMBED........");
  EXPECT_THROW(read_embedding_binary(magic), InputError);
}
