#include "linkpred/local_predictors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>

#include "linkpred/errors.hpp"

namespace linkpred {

std::string_view to_string(LocalMetric m) {
  switch (m) {
    case LocalMetric::common_neighbors: return "common_neighbors";
    case LocalMetric::jaccard: return "jaccard";
    case LocalMetric::adamic_adar: return "adamic_adar";
    case LocalMetric::resource_allocation: return "resource_allocation";
  }
  return "unknown";
}

namespace {

// Calls f(z) for every common neighbor, in increasing z.
template <class F>
void for_each_common_neighbor(const Graph& g, VertexId x, VertexId y, F&& f) {
  auto a = g.neighbors(x);
  auto b = g.neighbors(y);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      f(*i);
      ++i;
      ++j;
    }
  }
}

double adamic_adar_weight(std::size_t deg) { return 1.0 / std::log(static_cast<double>(deg)); }
double resource_weight(std::size_t deg) { return 1.0 / static_cast<double>(deg); }

}  // namespace

double score_common_neighbors(const Graph& g, VertexId x, VertexId y) {
  return static_cast<double>(common_neighbor_count(g, x, y));
}

double score_jaccard(const Graph& g, VertexId x, VertexId y) {
  const std::size_t common = common_neighbor_count(g, x, y);
  const std::size_t uni = g.degree(x) + g.degree(y) - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double score_preferential_attachment(const Graph& g, VertexId x, VertexId y) {
  return static_cast<double>(std::uint64_t{g.degree(x)} * g.degree(y));
}

double score_adamic_adar(const Graph& g, VertexId x, VertexId y) {
  double sum = 0.0;
  for_each_common_neighbor(g, x, y, [&](VertexId z) { sum += adamic_adar_weight(g.degree(z)); });
  return sum;
}

double score_resource_allocation(const Graph& g, VertexId x, VertexId y) {
  double sum = 0.0;
  for_each_common_neighbor(g, x, y, [&](VertexId z) { sum += resource_weight(g.degree(z)); });
  return sum;
}

double local_score(const Graph& g, LocalMetric m, VertexId x, VertexId y) {
  switch (m) {
    case LocalMetric::common_neighbors: return score_common_neighbors(g, x, y);
    case LocalMetric::jaccard: return score_jaccard(g, x, y);
    case LocalMetric::adamic_adar: return score_adamic_adar(g, x, y);
    case LocalMetric::resource_allocation: return score_resource_allocation(g, x, y);
  }
  return 0.0;
}

std::vector<ScoredPair> predict_local(const Graph& g, LocalMetric m, std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  const std::size_t n = g.num_vertices();

  // Per-vertex weight contributed by a wedge centre z.
  std::vector<double> weight(n, 1.0);
  if (m == LocalMetric::adamic_adar || m == LocalMetric::resource_allocation) {
    for (VertexId z = 0; z < n; ++z) {
      const std::size_t deg = g.degree(z);
      if (deg < 2) continue;  // never a common neighbor of two distinct vertices
      weight[z] = m == LocalMetric::adamic_adar ? adamic_adar_weight(deg) : resource_weight(deg);
    }
  }

  TopK top(k);
  std::vector<double> acc(n, 0.0);
  std::vector<std::uint32_t> common(n, 0);
  std::vector<VertexId> touched;
  std::vector<char> adjacent(n, 0);

  for (VertexId x = 0; x < n; ++x) {
    for (VertexId z : g.neighbors(x)) adjacent[z] = 1;
    // z ascends, so each acc[y] sums its contributions in the same order as
    // a sorted-list intersection would.
    for (VertexId z : g.neighbors(x)) {
      const double w = weight[z];
      for (VertexId y : g.neighbors(z)) {
        if (y <= x || adjacent[y]) continue;
        if (common[y] == 0) touched.push_back(y);
        ++common[y];
        acc[y] += w;
      }
    }
    for (VertexId y : touched) {
      double score = 0.0;
      switch (m) {
        case LocalMetric::common_neighbors:
          score = static_cast<double>(common[y]);
          break;
        case LocalMetric::jaccard: {
          const std::size_t uni = g.degree(x) + g.degree(y) - common[y];
          score = static_cast<double>(common[y]) / static_cast<double>(uni);
          break;
        }
        case LocalMetric::adamic_adar:
        case LocalMetric::resource_allocation:
          score = acc[y];
          break;
      }
      top.push({x, y, score});
      acc[y] = 0.0;
      common[y] = 0;
    }
    touched.clear();
    for (VertexId z : g.neighbors(x)) adjacent[z] = 0;
  }
  return top.take_sorted();
}

std::vector<ScoredPair> predict_preferential_attachment(const Graph& g, std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  const std::size_t n = g.num_vertices();

  // Degree classes, highest degree first; members ascend by id.
  const std::size_t max_deg = g.max_degree();
  std::vector<std::int64_t> class_of(max_deg + 1, -1);
  std::vector<std::size_t> class_degree;
  std::vector<std::size_t> count(max_deg + 1, 0);
  for (VertexId x = 0; x < n; ++x) ++count[g.degree(x)];
  for (std::size_t deg = max_deg; deg >= 1; --deg) {
    if (count[deg] == 0) continue;
    class_of[deg] = static_cast<std::int64_t>(class_degree.size());
    class_degree.push_back(deg);
  }
  std::vector<std::vector<VertexId>> members(class_degree.size());
  for (VertexId x = 0; x < n; ++x) {
    const std::int64_t c = class_of[g.degree(x)];
    if (c >= 0) members[static_cast<std::size_t>(c)].push_back(x);
  }

  // Frontier over class pairs (i <= j): one entry per row i, advanced along j.
  using Entry = std::tuple<std::uint64_t, std::size_t, std::size_t>;  // product, i, j
  auto lower = [](const Entry& a, const Entry& b) { return std::get<0>(a) < std::get<0>(b); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> frontier(lower);
  for (std::size_t i = 0; i < class_degree.size(); ++i) {
    frontier.emplace(std::uint64_t{class_degree[i]} * class_degree[i], i, i);
  }

  std::vector<ScoredPair> out;
  std::vector<std::size_t> level_classes;
  std::vector<VertexId> level_vertices;
  while (out.size() < k && !frontier.empty()) {
    const std::uint64_t product = std::get<0>(frontier.top());
    level_classes.clear();
    while (!frontier.empty() && std::get<0>(frontier.top()) == product) {
      auto [p, i, j] = frontier.top();
      frontier.pop();
      level_classes.push_back(i);
      level_classes.push_back(j);
      if (j + 1 < class_degree.size()) {
        frontier.emplace(std::uint64_t{class_degree[i]} * class_degree[j + 1], i, j + 1);
      }
    }
    std::sort(level_classes.begin(), level_classes.end());
    level_classes.erase(std::unique(level_classes.begin(), level_classes.end()),
                        level_classes.end());
    level_vertices.clear();
    for (std::size_t c : level_classes) {
      level_vertices.insert(level_vertices.end(), members[c].begin(), members[c].end());
    }
    std::sort(level_vertices.begin(), level_vertices.end());

    // Within a level the partner of x is determined: deg(y) = product / deg(x).
    const auto score = static_cast<double>(product);
    for (VertexId x : level_vertices) {
      if (out.size() >= k) break;
      const std::uint64_t partner_deg = product / g.degree(x);
      if (partner_deg > max_deg || class_of[partner_deg] < 0) continue;
      const auto& partners = members[static_cast<std::size_t>(class_of[partner_deg])];
      auto nbrs = g.neighbors(x);
      auto nb = std::upper_bound(nbrs.begin(), nbrs.end(), x);
      for (auto it = std::upper_bound(partners.begin(), partners.end(), x);
           it != partners.end() && out.size() < k; ++it) {
        while (nb != nbrs.end() && *nb < *it) ++nb;
        if (nb != nbrs.end() && *nb == *it) continue;
        out.push_back({x, *it, score});
      }
    }
  }
  return out;
}

}  // namespace linkpred
