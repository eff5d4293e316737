#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "agc/graph.hpp"

namespace agc {

enum class Aggregate { mean, max, median };

Aggregate parse_aggregate(std::string_view name);
std::string_view to_string(Aggregate a) noexcept;

/// Gaussian random projections over the augmented input [features | structure].
/// Column k of `weights` is projector k; its first `feature_dim` rows act on
/// node features and the remaining rows on the node's structural row.
struct ProjectionSet {
  DenseMatrix weights;
  Vector bias;
  std::uint64_t seed = 0;

  Eigen::Index input_dim() const noexcept { return weights.rows(); }
  Eigen::Index num_projectors() const noexcept { return weights.cols(); }

  auto feature_block(Eigen::Index feature_dim) const { return weights.topRows(feature_dim); }
  auto structure_block(Eigen::Index feature_dim) const {
    return weights.bottomRows(weights.rows() - feature_dim);
  }
};

/// Entries of W and b are i.i.d. N(0, 1) drawn from a seeded mt19937_64.
/// Throws invalid_dimension when either dimension is zero.
ProjectionSet sample_projections(Eigen::Index input_dim, Eigen::Index num_projectors,
                                 std::uint64_t seed);

struct ScoreVector {
  Vector scores;
  std::optional<DenseMatrix> per_projector;
  double alpha_used = 0.0;
};

struct ScoreOptions {
  Aggregate aggregate = Aggregate::mean;
  bool keep_per_projector = false;
};

/// Scores for rows of the augmented matrix F = (1 - alpha) X (+) alpha S without
/// forming F: s_ik = (1 - alpha) <Wx_k, X_i> + alpha <Ws_k, S_i> + b_k.
/// `structure` may be rectangular; its column count fixes the structural part
/// of the projection input.
ScoreVector project_rows(const FeatureMatrix& features, const SparseMatrix& structure, double alpha,
                         const ProjectionSet& projections, const ScoreOptions& options = {});

/// project_rows with the graph's features and adjacency.
ScoreVector project_scores(const Graph& g, double alpha, const ProjectionSet& projections,
                           const ScoreOptions& options = {});

/// Nodes sorted by ascending score, ties by ascending node id.
struct NodeOrder {
  std::vector<Index> order;
  std::vector<Index> rank;

  Index size() const noexcept { return static_cast<Index>(order.size()); }
  static NodeOrder identity(Index n);
};

NodeOrder build_order(const Vector& scores);
inline NodeOrder build_order(const ScoreVector& s) { return build_order(s.scores); }

}  // namespace agc
