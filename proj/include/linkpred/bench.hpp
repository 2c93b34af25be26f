#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "linkpred/embedding_predictors.hpp"
#include "linkpred/spectral.hpp"

namespace linkpred {

struct BenchConfig {
  std::vector<std::size_t> sizes;  // vertex counts
  std::size_t edges_per_vertex = 10;
  std::size_t dim = 8;
  std::size_t k = 10000;
  EmbeddingScore score = EmbeddingScore::euclidean;
  std::uint64_t seed = 1;
  EigenSolverOptions eigen;
};

struct BenchRow {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t k = 0;
  std::size_t predicted = 0;
  double embed_seconds = 0.0;
  double search_seconds = 0.0;
  double bound = 0.0;  // |E| log2(n)^2
  std::size_t eigen_iterations = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double embed_exponent = 0.0;   // slope of log time against log |E|
  double search_exponent = 0.0;
};

/// Powers of two from 2^lo to 2^hi.
std::vector<std::size_t> doubling_sizes(unsigned lo, unsigned hi);

/// Seeded preferential-attachment graphs at each size; embedding and
/// search stages timed separately. `progress` sees each row as it lands.
BenchResult run_scaling_bench(const BenchConfig& config,
                              const std::function<void(const BenchRow&)>& progress = {});

std::string format_bench_table(const BenchResult& result);
void write_bench_csv(std::ostream& out, const BenchResult& result);

}  // namespace linkpred
