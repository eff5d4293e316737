#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "agc/error.hpp"

namespace agc {

using Index = std::int32_t;
using Label = std::int64_t;

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, Index>;
using DenseMatrix = Eigen::MatrixXd;
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct Edge {
  Index src = 0;
  Index dst = 0;
  double weight = 1.0;
};

/// Undirected, nonnegatively weighted graph with dense node features and
/// optional integer labels. The adjacency is stored symmetric (both
/// directions) with an empty diagonal. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Entries with the same orientation
  /// have their weights summed; an edge listed in both orientations is one
  /// undirected edge whose weight is the larger of the two sums. Self-loops
  /// are dropped and counted in dropped_self_loops().
  static Graph from_edges(Index num_nodes, std::span<const Edge> edges,
                          FeatureMatrix features,
                          std::optional<std::vector<Label>> labels = std::nullopt);

  /// Wraps an already symmetric adjacency. Throws invalid_graph when any
  /// invariant is violated.
  static Graph from_adjacency(SparseMatrix adjacency, FeatureMatrix features,
                              std::optional<std::vector<Label>> labels = std::nullopt);

  Index num_nodes() const noexcept { return num_nodes_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  Eigen::Index feature_dim() const noexcept { return features_.cols(); }

  const SparseMatrix& adjacency() const noexcept { return adjacency_; }
  const FeatureMatrix& features() const noexcept { return features_; }
  const std::optional<std::vector<Label>>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return labels_.has_value(); }

  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }

  /// Sum of A_ij over i < j.
  double total_edge_weight() const;

  /// Undirected edges with src < dst, sorted.
  std::vector<Edge> edges() const;

  Graph with_features(FeatureMatrix features) const;

 private:
  void validate() const;

  Index num_nodes_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t dropped_self_loops_ = 0;
  SparseMatrix adjacency_;
  FeatureMatrix features_;
  std::optional<std::vector<Label>> labels_;
};

/// Unnormalized Laplacian L = D - A.
struct Laplacian {
  enum class Kind { unnormalized };

  SparseMatrix matrix;
  Kind kind = Kind::unnormalized;

  Index size() const noexcept { return static_cast<Index>(matrix.rows()); }
};

Laplacian build_laplacian(const SparseMatrix& adjacency);
Laplacian build_laplacian(const Graph& g);

/// Fraction of undirected edges whose endpoints carry different labels.
double heterophily_factor(const Graph& g);

/// Per-column z-scoring; constant columns are centered only.
FeatureMatrix standardize_columns(const FeatureMatrix& features);

}  // namespace agc
