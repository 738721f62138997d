#pragma once

// Graph ingestion and per-graph cost construction.
//
// Two on-disk formats are understood:
//   * edge lists: one "u v" pair per line, 0-indexed, '#' starts a comment,
//     an optional "n <count>" header fixes the order;
//   * TU flat files (DS_A.txt, DS_graph_indicator.txt and optional label /
//     attribute files), 1-indexed and reindexed per graph on load.

#include "ogw/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ogw {

struct Graph {
  int n = 0;
  /// Undirected edges stored with first < second, sorted and unique.
  std::vector<std::pair<int, int>> edges;
  /// Optional n x d node features.
  std::optional<Matrix> features;
  std::optional<int> label;

  /// Validates endpoints, drops duplicates, rejects self-loops.
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  Matrix adjacency() const;
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> neighbors() const;
};

enum class CostMode { distance, similarity };

/// Symmetric intra-graph cost. Distance mode additionally requires a zero
/// diagonal and nonnegative entries.
class CostMatrix {
 public:
  explicit CostMatrix(Matrix entries, CostMode mode = CostMode::distance);

  const Matrix& matrix() const noexcept { return entries_; }
  Index order() const noexcept { return entries_.rows(); }
  CostMode mode() const noexcept { return mode_; }

 private:
  Matrix entries_;
  CostMode mode_;
};

/// Cross-graph feature cost, M(i, k) = ||x_i - y_k||^2.
class FeatureDistance {
 public:
  explicit FeatureDistance(Matrix entries);

  const Matrix& matrix() const noexcept { return entries_; }
  Index rows() const noexcept { return entries_.rows(); }
  Index cols() const noexcept { return entries_.cols(); }

 private:
  Matrix entries_;
};

Graph parse_edge_list(std::string_view text);
Graph read_edge_list(const std::filesystem::path& path);

/// Loads every graph of a TU dataset directory. The dataset prefix is taken
/// from the single "<DS>_A.txt" file in `dir`.
std::vector<Graph> parse_tu_dataset(const std::filesystem::path& dir);

/// One row per node, comma or whitespace separated reals.
Matrix parse_feature_csv(std::string_view text);
Matrix read_feature_csv(const std::filesystem::path& path);

/// Unweighted all-pairs hop distances. Unreachable pairs get
/// `disconnected_value`, which defaults to the graph order.
CostMatrix shortest_path_cost(const Graph& g,
                              std::optional<double> disconnected_value = std::nullopt);

/// 1 - A off the diagonal, 0 on it.
CostMatrix adjacency_complement_cost(const Graph& g);

/// Pairwise Euclidean distances between the rows of `points`.
CostMatrix euclidean_cost(const Matrix& points);

FeatureDistance feature_distance(const Graph& gx, const Graph& gy);

/// Copy of `g` whose features are the n x 1 column of node degrees.
Graph degree_features(Graph g);

bool is_connected(const Graph& g);

}  // namespace ogw
