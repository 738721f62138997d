#pragma once

// Seeded synthetic graphs for the benchmarks and tests.

#include "ogw/graph_io.hpp"

#include <random>

namespace ogw {

Graph path_graph(int n);
Graph cycle_graph(int n);

/// Random spanning tree plus each remaining pair with probability `extra_p`.
Graph random_connected_graph(int n, double extra_p, std::mt19937_64& rng);

/// G(n, p) with p = 2 ln(n) / n, resampled until connected.
Graph erdos_renyi_connected(int n, std::mt19937_64& rng);

/// Toggles `delta` distinct node pairs of `g`; repeats until the result is
/// connected.
Graph perturb_edges(const Graph& g, int delta, std::mt19937_64& rng);

/// Relabels nodes: node i of `g` becomes node perm[i].
Graph permute_graph(const Graph& g, const std::vector<int>& perm);

std::vector<int> random_permutation(int n, std::mt19937_64& rng);

}  // namespace ogw
