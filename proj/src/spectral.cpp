#include "linkpred/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "linkpred/errors.hpp"

namespace linkpred {

namespace {

using Block = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Block apply_laplacian(const LaplacianView& laplacian, const Block& x) {
  Block y(x.rows(), x.cols());
  laplacian.apply_block(x.data(), y.data(), static_cast<std::size_t>(x.cols()));
  return y;
}

// Removes the component along the all-ones vector from every column.
void deflate_ones(Block& y) {
  const Eigen::RowVectorXd mean = y.colwise().mean();
  y.rowwise() -= mean;
}

// Orthonormalizes the columns of q through the eigendecomposition of its
// scaled Gram matrix (SVQB); directions with relative weight below `drop`
// are discarded, so the result may have fewer columns.
Block svqb(const Block& q, double drop) {
  if (q.cols() == 0) return q;
  const Eigen::MatrixXd gram = q.transpose() * q;
  Eigen::VectorXd scale = gram.diagonal();
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    scale(i) = scale(i) > 0.0 ? 1.0 / std::sqrt(scale(i)) : 0.0;
  }
  const Eigen::MatrixXd scaled = scale.asDiagonal() * gram * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled);
  const Eigen::VectorXd& theta = es.eigenvalues();
  const double theta_max = theta.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (theta_max > 0.0 && theta(i) > drop * theta_max) keep.push_back(i);
  }
  Eigen::MatrixXd transform(q.cols(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    transform.col(static_cast<Eigen::Index>(c)) =
        scale.asDiagonal() * es.eigenvectors().col(keep[c]) / std::sqrt(theta(keep[c]));
  }
  return q * transform;
}

// Makes q orthonormal, orthogonal to the ones vector and to the columns of x.
Block orthonormalize_against(const Block& x, Block q) {
  for (int pass = 0; pass < 2; ++pass) {
    if (x.cols() > 0) q -= x * (x.transpose() * q);
    deflate_ones(q);
    q = svqb(q, pass == 0 ? 1e-12 : 1e-14);
  }
  return q;
}

struct RitzResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// Smallest `count` Ritz pairs of the pencil (S^T L S, S^T S).
RitzResult rayleigh_ritz(const Block& s, const Block& ls, Eigen::Index count) {
  Eigen::MatrixXd h = s.transpose() * ls;
  h = 0.5 * (h + h.transpose()).eval();
  Eigen::MatrixXd g = s.transpose() * s;
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, g);
  if (es.info() != Eigen::Success) {
    throw ComputeError("Rayleigh-Ritz projection failed (basis lost rank)");
  }
  return {es.eigenvalues().head(count), es.eigenvectors().leftCols(count)};
}

Eigen::VectorXd relative_residuals(const Block& x, const Block& lx, const Eigen::VectorXd& lambda) {
  Eigen::VectorXd out(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double r = (lx.col(i) - lambda(i) * x.col(i)).norm();
    out(i) = r / std::max(1.0, std::abs(lambda(i)));
  }
  return out;
}

EigenPairs dense_solve(const LaplacianView& laplacian, std::size_t d) {
  const Graph& g = laplacian.graph();
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  // Lifting the ones direction above the spectrum (lambda_max <= 2 max deg)
  // leaves lambda_2.. as the smallest eigenvalues.
  const double lift = 2.0 * static_cast<double>(g.max_degree()) + 1.0;
  Eigen::MatrixXd l = Eigen::MatrixXd::Constant(n, n, lift / static_cast<double>(n));
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    l(x, x) += static_cast<double>(g.degree(x));
    for (VertexId y : g.neighbors(x)) l(x, y) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  if (es.info() != Eigen::Success) throw ComputeError("dense eigensolver failed");
  const auto dd = static_cast<Eigen::Index>(d);
  EigenPairs out;
  out.values = es.eigenvalues().head(dd);
  Block v = es.eigenvectors().leftCols(dd);
  deflate_ones(v);
  for (Eigen::Index i = 0; i < dd; ++i) v.col(i).normalize();
  out.vectors = v;
  if (dd < n - 1) out.next_gap = es.eigenvalues()(dd) - es.eigenvalues()(dd - 1);
  out.method = "dense";
  return out;
}

EigenPairs lobpcg_solve(const LaplacianView& laplacian, std::size_t d, std::size_t block,
                        const EigenSolverOptions& options) {
  const auto n = static_cast<Eigen::Index>(laplacian.size());
  const auto m = static_cast<Eigen::Index>(block);
  const auto dd = static_cast<Eigen::Index>(d);

  std::vector<double> diag = laplacian.diagonal();
  Eigen::VectorXd inv_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) inv_diag(i) = 1.0 / diag[static_cast<std::size_t>(i)];

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Block x(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < m; ++c) x(i, c) = normal(rng);
  }
  x = orthonormalize_against(Block(n, 0), x);
  if (x.cols() < m) throw ComputeError("could not build an initial eigensolver basis");

  Block lx = apply_laplacian(laplacian, x);
  Eigen::VectorXd lambda;
  auto refresh = [&] {
    x = orthonormalize_against(Block(n, 0), x);
    lx = apply_laplacian(laplacian, x);
    RitzResult rr = rayleigh_ritz(x, lx, m);
    x = x * rr.vectors;
    lx = lx * rr.vectors;
    lambda = rr.values;
  };
  refresh();

  Block p(n, 0);
  double best = std::numeric_limits<double>::infinity();
  const double lock_tol = 0.1 * options.tol;
  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    Eigen::VectorXd res = relative_residuals(x, lx, lambda);
    const double worst = res.head(dd).maxCoeff();
    if (worst <= 0.5 * options.tol) {
      refresh();
      res = relative_residuals(x, lx, lambda);
      if (res.head(dd).maxCoeff() <= options.tol) {
        best = res.head(dd).maxCoeff();
        break;
      }
    }
    best = std::min(best, worst);

    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (res(i) > lock_tol) active.push_back(i);
    }
    Block q(n, static_cast<Eigen::Index>(active.size()) + p.cols());
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Eigen::Index i = active[a];
      q.col(static_cast<Eigen::Index>(a)) =
          inv_diag.cwiseProduct(lx.col(i) - lambda(i) * x.col(i));
    }
    if (p.cols() > 0) q.rightCols(p.cols()) = p;
    q = orthonormalize_against(x, std::move(q));
    if (q.cols() == 0) {
      refresh();
      p.resize(n, 0);
      continue;
    }
    const Block lq = apply_laplacian(laplacian, q);

    Block s(n, m + q.cols());
    s << x, q;
    Block ls(n, m + q.cols());
    ls << lx, lq;
    RitzResult rr = rayleigh_ritz(s, ls, m);
    const Eigen::MatrixXd cx = rr.vectors.topRows(m);
    const Eigen::MatrixXd cq = rr.vectors.bottomRows(q.cols());

    // Search directions for the next step: the Q part of the new iterate,
    // restricted to the columns that are still active.
    Block p_full = q * cq;
    x = x * cx + p_full;
    lx = lx * cx + lq * cq;
    lambda = rr.values;
    p.resize(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) {
      p.col(static_cast<Eigen::Index>(a)) = p_full.col(active[a]);
    }
    if ((iter + 1) % 25 == 0) refresh();
  }
  if (iter == options.max_iterations) {
    throw ConvergenceError("eigensolver did not converge in " +
                               std::to_string(options.max_iterations) +
                               " iterations (best relative residual " + std::to_string(best) + ")",
                           best);
  }

  EigenPairs out;
  out.values = lambda.head(dd);
  out.vectors = x.leftCols(dd);
  if (m > dd) out.next_gap = lambda(dd) - lambda(dd - 1);
  out.iterations = iter;
  out.method = "lobpcg";
  return out;
}

}  // namespace

EigenPairs smallest_nonzero_eigenpairs(const LaplacianView& laplacian, std::size_t d,
                                       const EigenSolverOptions& options) {
  const Graph& g = laplacian.graph();
  const std::size_t n = g.num_vertices();
  if (d == 0) throw ConfigError("embedding dimension must be at least 1");
  if (n < 2 || d > n - 1) {
    throw ConfigError("embedding dimension " + std::to_string(d) + " needs at least " +
                      std::to_string(d + 1) + " vertices, graph has " + std::to_string(n));
  }
  if (!is_connected(g)) {
    throw ComputeError("the Laplacian eigensolver needs a connected graph; reduce it to its "
                       "largest connected component first");
  }

  const std::size_t block = std::min(n - 1, d + std::max<std::size_t>(d, 8));
  bool dense = options.method == EigenMethod::dense;
  if (options.method == EigenMethod::automatic) {
    dense = n <= options.dense_threshold || 3 * block + 1 > n;
  }
  std::size_t lobpcg_block = block;
  if (!dense && 3 * lobpcg_block + 1 > n) {
    lobpcg_block = (n - 1) / 3;
    if (lobpcg_block < d) dense = true;
  }

  EigenPairs out = dense ? dense_solve(laplacian, d) : lobpcg_solve(laplacian, d, lobpcg_block, options);

  // Final residuals against an explicit product.
  Block v = out.vectors;
  Block lv = apply_laplacian(laplacian, v);
  out.max_relative_residual = relative_residuals(v, lv, out.values).maxCoeff();
  if (!(out.values(0) > 0.0)) {
    throw ComputeError("smallest nonzero eigenvalue is not positive; graph may be disconnected");
  }
  return out;
}

SpectralEmbedding resistance_embedding(const EigenPairs& pairs) {
  const auto n = static_cast<std::size_t>(pairs.vectors.rows());
  const auto d = static_cast<std::size_t>(pairs.vectors.cols());
  std::vector<double> coords(n * d);
  std::vector<double> scale(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double lambda = pairs.values(static_cast<Eigen::Index>(i));
    if (!(lambda > 0.0)) throw ComputeError("embedding needs positive eigenvalues");
    scale[i] = 1.0 / std::sqrt(lambda);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < d; ++i) {
      coords[x * d + i] =
          pairs.vectors(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(i)) * scale[i];
    }
  }
  SpectralEmbedding emb;
  emb.coords = PointSet(std::move(coords), d);
  emb.eigenvalues.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());
  emb.next_gap = pairs.next_gap;
  return emb;
}

SpectralEmbedding normalize_embedding(const SpectralEmbedding& embedding) {
  SpectralEmbedding out = embedding;
  out.normalized = true;
  std::size_t zero_rows = 0;
  for (std::size_t x = 0; x < out.coords.size(); ++x) {
    auto row = out.coords.row(x);
    double norm2 = 0.0;
    for (double c : row) norm2 += c * c;
    if (norm2 == 0.0) {
      ++zero_rows;
      continue;
    }
    // Divide rather than multiply by the reciprocal: 1-d rows come out as
    // exactly +-1, so parallel rows are at distance exactly 0.
    const double norm = std::sqrt(norm2);
    for (double& c : row) c /= norm;
  }
  if (zero_rows > 0) {
    out.warnings.push_back(std::to_string(zero_rows) +
                           " vertex embedding(s) have zero norm; left as zero vectors");
  }
  return out;
}

SpectralEmbedding compute_resistance_embedding(const Graph& g, std::size_t d,
                                               const EigenSolverOptions& options) {
  const EigenPairs pairs = smallest_nonzero_eigenpairs(LaplacianView(g), d, options);
  SpectralEmbedding emb = resistance_embedding(pairs);
  if (std::isfinite(pairs.next_gap) &&
      pairs.next_gap <= 1e3 * options.tol * std::max(1.0, pairs.values(pairs.values.size() - 1))) {
    emb.warnings.push_back("eigenvalue lambda_{d+1} is (nearly) repeated; the rank-d embedding "
                           "is not unique");
  }
  return emb;
}

// ---------------------------------------------------------------------------
// Persistence

void write_embedding_text(std::ostream& out, const SpectralEmbedding& embedding) {
  const std::size_t n = embedding.size();
  const std::size_t d = embedding.dim();
  std::ostringstream buf;
  buf.precision(17);
  buf << n << ' ' << d << '\n';
  for (std::size_t i = 0; i < embedding.eigenvalues.size(); ++i) {
    buf << (i ? " " : "") << embedding.eigenvalues[i];
  }
  buf << '\n';
  for (std::size_t x = 0; x < n; ++x) {
    auto row = embedding.coords.row(x);
    for (std::size_t i = 0; i < d; ++i) buf << (i ? " " : "") << row[i];
    buf << '\n';
  }
  out << buf.str();
}

SpectralEmbedding read_embedding_text(std::istream& in) {
  std::size_t n = 0;
  std::size_t d = 0;
  if (!(in >> n >> d) || d == 0) throw InputError("embedding text: bad header");
  SpectralEmbedding emb;
  emb.eigenvalues.resize(d);
  for (double& v : emb.eigenvalues) {
    if (!(in >> v)) throw InputError("embedding text: truncated eigenvalue line");
  }
  std::vector<double> coords(n * d);
  for (double& c : coords) {
    if (!(in >> c)) throw InputError("embedding text: truncated coordinates");
  }
  emb.coords = PointSet(std::move(coords), d);
  return emb;
}

namespace {

constexpr char kMagic[8] = {'L', 'P', 'E', 'M', 'B', 'E', 'D', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(bytes, 8);
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw InputError("embedding binary: unexpected end of data");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_embedding_binary(std::ostream& out, const SpectralEmbedding& embedding) {
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint64_t>(out, embedding.size());
  put_le<std::uint64_t>(out, embedding.dim());
  for (double v : embedding.eigenvalues) put_le<double>(out, v);
  for (double c : embedding.coords.coords()) put_le<double>(out, c);
}

SpectralEmbedding read_embedding_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw InputError("embedding binary: bad magic");
  }
  const auto n = get_le<std::uint64_t>(in);
  const auto d = get_le<std::uint64_t>(in);
  if (d == 0) throw InputError("embedding binary: zero dimension");
  SpectralEmbedding emb;
  emb.eigenvalues.resize(d);
  for (double& v : emb.eigenvalues) v = get_le<double>(in);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = get_le<double>(in);
  emb.coords = PointSet(std::move(coords), d);
  return emb;
}

}  // namespace linkpred
