#include "ogw/generators.hpp"

#include "ogw/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ogw {

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, std::move(e));
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

Graph random_connected_graph(int n, double extra_p, std::mt19937_64& rng) {
  if (n < 1) throw InvalidArgument("graph order must be >= 1");
  std::set<std::pair<int, int>> edges;
  auto order = random_permutation(n, rng);
  for (int k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    int a = order[static_cast<std::size_t>(k)];
    int b = order[static_cast<std::size_t>(pick(rng))];
    edges.emplace(std::min(a, b), std::max(a, b));
  }
  std::bernoulli_distribution coin(extra_p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!edges.count({i, j}) && coin(rng)) edges.emplace(i, j);
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

Graph erdos_renyi_connected(int n, std::mt19937_64& rng) {
  if (n < 2) throw InvalidArgument("erdos_renyi_connected needs n >= 2");
  const double p = std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / n);
  std::bernoulli_distribution coin(p);
  while (true) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) e.emplace_back(i, j);
    Graph g = Graph::from_edges(n, std::move(e));
    if (is_connected(g)) return g;
  }
}

Graph perturb_edges(const Graph& g, int delta, std::mt19937_64& rng) {
  const long long pairs = static_cast<long long>(g.n) * (g.n - 1) / 2;
  if (delta < 0 || delta > pairs) throw InvalidArgument("perturb_edges: delta out of range");
  std::uniform_int_distribution<int> node(0, std::max(0, g.n - 1));
  while (true) {
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    std::set<std::pair<int, int>> toggled;
    while (static_cast<int>(toggled.size()) < delta) {
      int a = node(rng), b = node(rng);
      if (a == b) continue;
      toggled.emplace(std::min(a, b), std::max(a, b));
    }
    for (const auto& e : toggled)
      if (!edges.erase(e)) edges.insert(e);
    Graph out = Graph::from_edges(g.n, {edges.begin(), edges.end()});
    if (is_connected(out)) return out;
  }
}

Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n) throw DimensionMismatch("permutation length");
  std::vector<std::pair<int, int>> e;
  e.reserve(g.edges.size());
  for (auto [u, v] : g.edges)
    e.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  Graph out = Graph::from_edges(g.n, std::move(e));
  out.label = g.label;
  if (g.features) {
    Matrix f(g.features->rows(), g.features->cols());
    for (int i = 0; i < g.n; ++i) f.row(perm[static_cast<std::size_t>(i)]) = g.features->row(i);
    out.features = std::move(f);
  }
  return out;
}

}  // namespace ogw
