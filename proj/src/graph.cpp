#include "linkpred/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "linkpred/errors.hpp"

namespace linkpred {

Graph Graph::from_edges(std::span<const std::pair<VertexId, VertexId>> pairs, std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return from_edges(std::span<const Edge>(edges), n);
}

Graph Graph::from_edges(std::span<const Edge> input, std::size_t n) {
  if (n > std::numeric_limits<VertexId>::max()) {
    throw InputError("graph too large: " + std::to_string(n) + " vertices");
  }
  std::vector<Edge> edges;
  edges.reserve(input.size());
  for (const Edge& e : input) {
    if (e.u >= n || e.v >= n) {
      throw InputError("vertex id " + std::to_string(std::max(e.u, e.v)) +
                       " out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) continue;
    edges.push_back(make_edge(e.u, e.v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.num_edges_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v): the first pass writes each vertex's lower
  // neighbors in increasing order, the second its higher neighbors.
  for (const Edge& e : edges) g.adjacency_[cursor[e.v]++] = e.u;
  for (const Edge& e : edges) g.adjacency_[cursor[e.u]++] = e.v;
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t x = 0; x + 1 < offsets_.size(); ++x) {
    best = std::max(best, offsets_[x + 1] - offsets_[x]);
  }
  return best;
}

bool Graph::has_edge(VertexId x, VertexId y) const noexcept {
  if (degree(x) > degree(y)) std::swap(x, y);
  auto nbrs = neighbors(x);
  return std::binary_search(nbrs.begin(), nbrs.end(), y);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (VertexId x = 0; x < num_vertices(); ++x) {
    for (VertexId y : neighbors(x)) {
      if (x < y) out.push_back({x, y});
    }
  }
  return out;
}

std::size_t degree(const Graph& g, VertexId x) { return g.degree(x); }

std::size_t common_neighbor_count(const Graph& g, VertexId x, VertexId y) {
  auto a = g.neighbors(x);
  auto b = g.neighbors(y);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<std::int64_t> bfs_distances(const Graph& g, VertexId source) {
  std::vector<std::int64_t> dist(g.num_vertices(), -1);
  std::vector<VertexId> frontier{source};
  dist[source] = 0;
  std::size_t head = 0;
  while (head < frontier.size()) {
    VertexId x = frontier[head++];
    for (VertexId y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        frontier.push_back(y);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> shortest_path_length(const Graph& g, VertexId x, VertexId y) {
  if (x == y) return 0;
  // Early-exit BFS: stop as soon as y is labelled.
  std::vector<std::int64_t> dist(g.num_vertices(), -1);
  std::vector<VertexId> queue{x};
  dist[x] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      if (w == y) return static_cast<std::size_t>(dist[w]);
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

Components connected_components(const Graph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  Components c;
  c.label.assign(g.num_vertices(), kUnset);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (c.label[s] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId y : g.neighbors(x)) {
        if (c.label[y] == kUnset) {
          c.label[y] = id;
          stack.push_back(y);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return false;
  return connected_components(g).sizes.size() == 1;
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep) {
  constexpr auto kAbsent = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> remap(g.num_vertices(), kAbsent);
  for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<VertexId>(i);
  std::vector<Edge> edges;
  for (VertexId x : keep) {
    for (VertexId y : g.neighbors(x)) {
      if (x < y && remap[y] != kAbsent) edges.push_back(make_edge(remap[x], remap[y]));
    }
  }
  return Graph::from_edges(std::span<const Edge>(edges), keep.size());
}

void LaplacianView::apply(std::span<const double> x, std::span<double> y) const {
  apply_block(x.data(), y.data(), 1);
}

void LaplacianView::apply_block(const double* x, double* y, std::size_t cols) const {
  const Graph& g = *graph_;
  const std::size_t n = g.num_vertices();
  for (std::size_t i = 0; i < n; ++i) {
    const auto deg = static_cast<double>(g.degree(static_cast<VertexId>(i)));
    const double* xi = x + i * cols;
    double* yi = y + i * cols;
    for (std::size_t c = 0; c < cols; ++c) yi[c] = deg * xi[c];
    for (VertexId j : g.neighbors(static_cast<VertexId>(i))) {
      const double* xj = x + std::size_t{j} * cols;
      for (std::size_t c = 0; c < cols; ++c) yi[c] -= xj[c];
    }
  }
}

std::vector<double> LaplacianView::diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<double>(graph_->degree(static_cast<VertexId>(i)));
  }
  return d;
}

double LaplacianView::quadratic_form(std::span<const double> x) const {
  double sum = 0.0;
  for (const Edge& e : graph_->edges()) {
    const double diff = x[e.u] - x[e.v];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace linkpred
