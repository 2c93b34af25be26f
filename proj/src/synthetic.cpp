#include "linkpred/synthetic.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "linkpred/errors.hpp"

namespace linkpred {

namespace {

// Uniform integer in [0, bound) from a 64-bit draw (multiply-shift); unlike
// std::uniform_int_distribution this is identical across standard libraries.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph preferential_attachment_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw ConfigError("edges per vertex must be positive");
  if (n < m + 1) throw ConfigError("need at least m+1 vertices");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n * m);
  // Each edge endpoint appears once here, so a uniform draw is a
  // degree-proportional draw.
  std::vector<VertexId> endpoints;
  endpoints.reserve(2 * n * m);
  for (VertexId a = 0; a <= m; ++a) {
    for (VertexId b = a + 1; b <= m; ++b) {
      edges.push_back({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  std::vector<VertexId> targets;
  for (auto v = static_cast<VertexId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const VertexId t = endpoints[below(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.push_back(make_edge(t, v));
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(std::span<const Edge>(edges), n);
}

Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) {
    edges.push_back({static_cast<VertexId>(below(rng, v)), v});
  }
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (unit(rng) < p) edges.push_back({a, b});
    }
  }
  return Graph::from_edges(std::span<const Edge>(edges), n);
}

}  // namespace linkpred
