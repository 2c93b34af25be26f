#pragma once

#include <cstddef>
#include <cstdint>

#include "linkpred/graph.hpp"

namespace linkpred {

/// Seeded preferential-attachment graph: a clique on m+1 vertices, then each
/// new vertex links to m distinct existing vertices chosen with probability
/// proportional to degree. Connected, with about m*n edges. The output
/// depends only on (n, m, seed).
Graph preferential_attachment_graph(std::size_t n, std::size_t m, std::uint64_t seed);

/// Seeded G(n, p) plus a random spanning tree, so the result is connected.
Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed);

}  // namespace linkpred
