#include "agc/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace agc {

Aggregate parse_aggregate(std::string_view name) {
  if (name == "mean") return Aggregate::mean;
  if (name == "max") return Aggregate::max;
  if (name == "median") return Aggregate::median;
  throw Error(ErrorCode::invalid_params, "unknown aggregate `" + std::string(name) + "`");
}

std::string_view to_string(Aggregate a) noexcept {
  switch (a) {
    case Aggregate::mean: return "mean";
    case Aggregate::max: return "max";
    case Aggregate::median: return "median";
  }
  return "mean";
}

ProjectionSet sample_projections(Eigen::Index input_dim, Eigen::Index num_projectors,
                                 std::uint64_t seed) {
  if (input_dim <= 0 || num_projectors <= 0) {
    throw Error(ErrorCode::invalid_dimension,
                "projection dimensions must be positive (input " + std::to_string(input_dim) +
                    ", projectors " + std::to_string(num_projectors) + ")");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ProjectionSet p;
  p.seed = seed;
  p.weights.resize(input_dim, num_projectors);
  // Column-major fill: projector k is drawn as one contiguous block.
  double* w = p.weights.data();
  for (Eigen::Index i = 0; i < p.weights.size(); ++i) w[i] = normal(rng);
  p.bias.resize(num_projectors);
  for (Eigen::Index k = 0; k < num_projectors; ++k) p.bias[k] = normal(rng);
  return p;
}

namespace {

double aggregate_row(const DenseMatrix& s, Eigen::Index row, Aggregate how,
                     std::vector<double>& scratch) {
  const Eigen::Index l = s.cols();
  switch (how) {
    case Aggregate::mean:
      return s.row(row).sum() / static_cast<double>(l);
    case Aggregate::max:
      return s.row(row).maxCoeff();
    case Aggregate::median: {
      scratch.resize(static_cast<std::size_t>(l));
      for (Eigen::Index k = 0; k < l; ++k) scratch[static_cast<std::size_t>(k)] = s(row, k);
      std::sort(scratch.begin(), scratch.end());
      const auto mid = scratch.size() / 2;
      return scratch.size() % 2 == 1 ? scratch[mid] : 0.5 * (scratch[mid - 1] + scratch[mid]);
    }
  }
  return 0.0;
}

}  // namespace

ScoreVector project_rows(const FeatureMatrix& features, const SparseMatrix& structure, double alpha,
                         const ProjectionSet& projections, const ScoreOptions& options) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (structure.rows() != n) {
    throw Error(ErrorCode::dimension_mismatch, "structure rows do not match feature rows");
  }
  if (projections.input_dim() != d + structure.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "projection input dimension " + std::to_string(projections.input_dim()) +
                    " does not match " + std::to_string(d) + " features + " +
                    std::to_string(structure.cols()) + " structural columns");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_params, "alpha must lie in [0, 1]");
  }

  DenseMatrix per_projector(n, projections.num_projectors());
  per_projector.noalias() = (1.0 - alpha) * (features * projections.feature_block(d));
  per_projector.noalias() += alpha * (structure * projections.structure_block(d));
  per_projector.rowwise() += projections.bias.transpose();

  ScoreVector out;
  out.alpha_used = alpha;
  out.scores.resize(n);
  std::vector<double> scratch;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.scores[i] = aggregate_row(per_projector, i, options.aggregate, scratch);
  }
  if (options.keep_per_projector) out.per_projector = std::move(per_projector);
  return out;
}

ScoreVector project_scores(const Graph& g, double alpha, const ProjectionSet& projections,
                           const ScoreOptions& options) {
  return project_rows(g.features(), g.adjacency(), alpha, projections, options);
}

NodeOrder NodeOrder::identity(Index n) {
  NodeOrder o;
  o.order.resize(static_cast<std::size_t>(n));
  std::iota(o.order.begin(), o.order.end(), Index{0});
  o.rank = o.order;
  return o;
}

NodeOrder build_order(const Vector& scores) {
  NodeOrder o = NodeOrder::identity(static_cast<Index>(scores.size()));
  std::sort(o.order.begin(), o.order.end(), [&](Index a, Index b) {
    const double sa = scores[a];
    const double sb = scores[b];
    return sa < sb || (sa == sb && a < b);
  });
  for (std::size_t t = 0; t < o.order.size(); ++t) {
    o.rank[static_cast<std::size_t>(o.order[t])] = static_cast<Index>(t);
  }
  return o;
}

}  // namespace agc
