#include "linkpred/bench.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "linkpred/errors.hpp"
#include "linkpred/synthetic.hpp"

namespace linkpred {

std::vector<std::size_t> doubling_sizes(unsigned lo, unsigned hi) {
  if (lo > hi || hi > 40) throw ConfigError("bad size exponent range");
  std::vector<std::size_t> sizes;
  for (unsigned e = lo; e <= hi; ++e) sizes.push_back(std::size_t{1} << e);
  return sizes;
}

BenchResult run_scaling_bench(const BenchConfig& config,
                              const std::function<void(const BenchRow&)>& progress) {
  if (config.sizes.empty()) throw ConfigError("bench needs at least one size");
  BenchResult result;
  for (std::size_t n : config.sizes) {
    const Graph g = preferential_attachment_graph(n, config.edges_per_vertex, config.seed);
    BenchRow row;
    row.vertices = g.num_vertices();
    row.edges = g.num_edges();
    row.k = config.k;

    const auto t0 = std::chrono::steady_clock::now();
    const EigenPairs pairs = smallest_nonzero_eigenpairs(LaplacianView(g), config.dim, config.eigen);
    const SpectralEmbedding emb = resistance_embedding(pairs);
    row.embed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.eigen_iterations = pairs.iterations;

    const ComplexityReport report = predicted_pair_count_bound_check(g, emb, config.k, config.score);
    row.search_seconds = report.search_seconds;
    row.predicted = report.predicted;
    row.bound = report.bound;
    result.rows.push_back(row);
    if (progress) progress(row);
  }
  if (result.rows.size() >= 2) {
    std::vector<double> e, embed, search;
    for (const BenchRow& r : result.rows) {
      e.push_back(static_cast<double>(r.edges));
      embed.push_back(r.embed_seconds);
      search.push_back(r.search_seconds);
    }
    result.embed_exponent = fit_scaling_exponent(e, embed);
    result.search_exponent = fit_scaling_exponent(e, search);
  }
  return result;
}

std::string format_bench_table(const BenchResult& result) {
  std::ostringstream out;
  out << std::setw(10) << "n" << std::setw(12) << "|E|" << std::setw(8) << "k" << std::setw(12)
      << "embed (s)" << std::setw(8) << "iters" << std::setw(12) << "search (s)" << std::setw(14)
      << "s/(E log2n^2)" << '\n';
  for (const BenchRow& r : result.rows) {
    out << std::setw(10) << r.vertices << std::setw(12) << r.edges << std::setw(8) << r.k
        << std::fixed << std::setprecision(3) << std::setw(12) << r.embed_seconds << std::setw(8)
        << r.eigen_iterations << std::setw(12) << r.search_seconds << std::scientific
        << std::setprecision(3) << std::setw(14)
        << (r.bound > 0 ? r.search_seconds / r.bound : 0.0) << std::defaultfloat << '\n';
  }
  if (result.rows.size() >= 2) {
    out << std::fixed << std::setprecision(3) << "exponent vs |E|: embed "
        << result.embed_exponent << ", search " << result.search_exponent << '\n';
  }
  return out.str();
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
  out << "vertices,edges,k,predicted,embed_seconds,eigen_iterations,search_seconds,bound\n";
  const auto old = out.precision(17);
  for (const BenchRow& r : result.rows) {
    out << r.vertices << ',' << r.edges << ',' << r.k << ',' << r.predicted << ','
        << r.embed_seconds << ',' << r.eigen_iterations << ',' << r.search_seconds << ','
        << r.bound << '\n';
  }
  out.precision(old);
}

}  // namespace linkpred
