#include "agc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace agc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_graph: return "InvalidGraph";
    case ErrorCode::missing_labels: return "MissingLabels";
    case ErrorCode::empty_graph: return "EmptyGraph";
    case ErrorCode::invalid_dimension: return "InvalidDimension";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::invalid_ratio: return "InvalidRatio";
    case ErrorCode::ratio_below_schedule: return "RatioBelowSchedule";
    case ErrorCode::size_mismatch: return "SizeMismatch";
    case ErrorCode::empty_type: return "EmptyType";
    case ErrorCode::unknown_type: return "UnknownType";
    case ErrorCode::missing_target_labels: return "MissingTargetLabels";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::all_zero_eigenvalues: return "AllZeroEigenvalues";
    case ErrorCode::degenerate_features: return "DegenerateFeatures";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::zero_distance: return "ZeroDistance";
    case ErrorCode::degenerate_input: return "DegenerateInput";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

struct KeyedWeight {
  Index lo;
  Index hi;
  bool forward;
  double weight;
};

}  // namespace

Graph Graph::from_edges(Index num_nodes, std::span<const Edge> edges, FeatureMatrix features,
                        std::optional<std::vector<Label>> labels) {
  if (num_nodes < 0) {
    throw Error(ErrorCode::invalid_graph, "negative node count");
  }
  std::size_t self_loops = 0;
  std::vector<KeyedWeight> keyed;
  keyed.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.src < 0 || e.dst < 0 || e.src >= num_nodes || e.dst >= num_nodes) {
      throw Error(ErrorCode::invalid_graph,
                  "edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                      ") out of range for " + std::to_string(num_nodes) + " nodes");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::invalid_graph, "edge weights must be finite and nonnegative");
    }
    if (e.src == e.dst) {
      ++self_loops;
      continue;
    }
    keyed.push_back({std::min(e.src, e.dst), std::max(e.src, e.dst), e.src < e.dst, e.weight});
  }
  std::sort(keyed.begin(), keyed.end(), [](const KeyedWeight& a, const KeyedWeight& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  });

  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(2 * keyed.size());
  for (std::size_t i = 0; i < keyed.size();) {
    double fwd = 0.0;
    double bwd = 0.0;
    std::size_t j = i;
    for (; j < keyed.size() && keyed[j].lo == keyed[i].lo && keyed[j].hi == keyed[i].hi; ++j) {
      (keyed[j].forward ? fwd : bwd) += keyed[j].weight;
    }
    const double w = std::max(fwd, bwd);
    if (w > 0.0) {
      triplets.emplace_back(keyed[i].lo, keyed[i].hi, w);
      triplets.emplace_back(keyed[i].hi, keyed[i].lo, w);
    }
    i = j;
  }

  SparseMatrix adjacency(num_nodes, num_nodes);
  adjacency.setFromTriplets(triplets.begin(), triplets.end());
  Graph g = from_adjacency(std::move(adjacency), std::move(features), std::move(labels));
  g.dropped_self_loops_ = self_loops;
  return g;
}

Graph Graph::from_adjacency(SparseMatrix adjacency, FeatureMatrix features,
                            std::optional<std::vector<Label>> labels) {
  Graph g;
  adjacency.makeCompressed();
  g.num_nodes_ = static_cast<Index>(adjacency.rows());
  g.adjacency_ = std::move(adjacency);
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  g.validate();
  std::size_t upper = 0;
  for (Index i = 0; i < g.num_nodes_; ++i) {
    for (SparseMatrix::InnerIterator it(g.adjacency_, i); it; ++it) {
      if (it.col() > i && it.value() != 0.0) ++upper;
    }
  }
  g.edge_count_ = upper;
  return g;
}

void Graph::validate() const {
  if (adjacency_.rows() != adjacency_.cols()) {
    throw Error(ErrorCode::invalid_graph, "adjacency must be square");
  }
  if (features_.rows() != num_nodes_) {
    throw Error(ErrorCode::invalid_graph,
                "feature matrix has " + std::to_string(features_.rows()) + " rows, expected " +
                    std::to_string(num_nodes_));
  }
  if (labels_ && static_cast<Index>(labels_->size()) != num_nodes_) {
    throw Error(ErrorCode::invalid_graph,
                "label vector has " + std::to_string(labels_->size()) + " entries, expected " +
                    std::to_string(num_nodes_));
  }
  for (Index i = 0; i < num_nodes_; ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) {
      if (it.col() == i && it.value() != 0.0) {
        throw Error(ErrorCode::invalid_graph, "adjacency diagonal must be zero");
      }
      if (!(it.value() >= 0.0)) {
        throw Error(ErrorCode::invalid_graph, "adjacency weights must be nonnegative");
      }
      if (adjacency_.coeff(it.col(), i) != it.value()) {
        throw Error(ErrorCode::invalid_graph, "adjacency must be symmetric");
      }
    }
  }
}

double Graph::total_edge_weight() const {
  double total = 0.0;
  for (Index i = 0; i < num_nodes_; ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) {
      if (it.col() > i) total += it.value();
    }
  }
  return total;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Index i = 0; i < num_nodes_; ++i) {
    for (SparseMatrix::InnerIterator it(adjacency_, i); it; ++it) {
      if (it.col() > i && it.value() != 0.0) out.push_back({i, static_cast<Index>(it.col()), it.value()});
    }
  }
  return out;
}

Graph Graph::with_features(FeatureMatrix features) const {
  Graph g = *this;
  g.features_ = std::move(features);
  g.validate();
  return g;
}

Laplacian build_laplacian(const SparseMatrix& adjacency) {
  const Index n = static_cast<Index>(adjacency.rows());
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(static_cast<std::size_t>(adjacency.nonZeros()) + static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double degree = 0.0;
    for (SparseMatrix::InnerIterator it(adjacency, i); it; ++it) {
      if (it.col() == i) continue;
      degree += it.value();
      triplets.emplace_back(i, it.col(), -it.value());
    }
    if (degree != 0.0) triplets.emplace_back(i, i, degree);
  }
  Laplacian lap;
  lap.matrix.resize(n, n);
  lap.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lap.matrix.makeCompressed();
  return lap;
}

Laplacian build_laplacian(const Graph& g) { return build_laplacian(g.adjacency()); }

double heterophily_factor(const Graph& g) {
  if (!g.has_labels()) {
    throw Error(ErrorCode::missing_labels, "heterophily factor requires node labels");
  }
  if (g.edge_count() == 0) {
    throw Error(ErrorCode::empty_graph, "heterophily factor requires at least one edge");
  }
  const auto& y = *g.labels();
  std::size_t cross = 0;
  for (const Edge& e : g.edges()) {
    if (y[static_cast<std::size_t>(e.src)] != y[static_cast<std::size_t>(e.dst)]) ++cross;
  }
  return static_cast<double>(cross) / static_cast<double>(g.edge_count());
}

FeatureMatrix standardize_columns(const FeatureMatrix& features) {
  FeatureMatrix out = features;
  const auto rows = features.rows();
  if (rows == 0) return out;
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    const double mean = features.col(c).mean();
    out.col(c).array() -= mean;
    const double var = out.col(c).squaredNorm() / static_cast<double>(rows);
    if (var > 0.0) out.col(c) /= std::sqrt(var);
  }
  return out;
}

}  // namespace agc
