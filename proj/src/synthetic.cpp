#include "agc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_map>

namespace agc::synthetic {

Graph random_geometric(const GeometricSpec& spec) {
  const Index n = spec.num_nodes;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> px(static_cast<std::size_t>(n));
  std::vector<double> py(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    px[static_cast<std::size_t>(i)] = unit(rng);
    py[static_cast<std::size_t>(i)] = unit(rng);
  }
  const Index classes = std::max<Index>(spec.num_classes, 1);
  std::vector<std::pair<double, double>> centres(static_cast<std::size_t>(classes));
  for (auto& c : centres) c = {unit(rng), unit(rng)};
  DenseMatrix class_means(classes, spec.feature_dim);
  for (Eigen::Index i = 0; i < class_means.size(); ++i) class_means.data()[i] = normal(rng);
  DenseMatrix position_map(2, spec.feature_dim);
  for (Eigen::Index i = 0; i < position_map.size(); ++i) position_map.data()[i] = 2.0 * normal(rng);

  std::vector<Label> labels(static_cast<std::size_t>(n));
  FeatureMatrix features(n, spec.feature_dim);
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < classes; ++c) {
      const auto [cx, cy] = centres[static_cast<std::size_t>(c)];
      const double d = (px[ui] - cx) * (px[ui] - cx) + (py[ui] - cy) * (py[ui] - cy);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    labels[ui] = best;
    for (Index f = 0; f < spec.feature_dim; ++f) {
      features(i, f) = class_means(best, f) + px[ui] * position_map(0, f) +
                       py[ui] * position_map(1, f) + 0.5 * normal(rng);
    }
  }

  const double radius =
      n > 0 ? std::sqrt(spec.avg_degree / (std::numbers::pi * static_cast<double>(n))) : 1.0;
  const Index cells = std::max<Index>(1, static_cast<Index>(1.0 / radius));
  auto cell_of = [&](double v) { return std::min<Index>(cells - 1, static_cast<Index>(v * cells)); };
  std::vector<std::vector<Index>> grid(static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells));
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    grid[static_cast<std::size_t>(cell_of(px[ui]) * cells + cell_of(py[ui]))].push_back(i);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * spec.avg_degree / 2.0 * 1.1));
  const double r2 = radius * radius;
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Index cx = cell_of(px[ui]);
    const Index cy = cell_of(py[ui]);
    for (Index gx = std::max<Index>(0, cx - 1); gx <= std::min<Index>(cells - 1, cx + 1); ++gx) {
      for (Index gy = std::max<Index>(0, cy - 1); gy <= std::min<Index>(cells - 1, cy + 1); ++gy) {
        for (Index j : grid[static_cast<std::size_t>(gx * cells + gy)]) {
          if (j <= i) continue;
          const auto uj = static_cast<std::size_t>(j);
          const double dx = px[ui] - px[uj];
          const double dy = py[ui] - py[uj];
          if (dx * dx + dy * dy < r2) edges.push_back({i, j, 1.0});
        }
      }
    }
  }
  return Graph::from_edges(n, edges, std::move(features), std::move(labels));
}

Graph erdos_renyi(Index num_nodes, double edge_probability, Index feature_dim, Index num_classes,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Label> label(0, std::max<Index>(num_classes, 1) - 1);
  std::vector<Edge> edges;
  for (Index i = 0; i < num_nodes; ++i) {
    for (Index j = i + 1; j < num_nodes; ++j) {
      if (unit(rng) < edge_probability) edges.push_back({i, j, 0.5 + 1.5 * unit(rng)});
    }
  }
  FeatureMatrix features(num_nodes, feature_dim);
  for (Eigen::Index i = 0; i < features.size(); ++i) features.data()[i] = normal(rng);
  std::vector<Label> labels(static_cast<std::size_t>(num_nodes));
  for (auto& y : labels) y = label(rng);
  return Graph::from_edges(num_nodes, edges, std::move(features), std::move(labels));
}

namespace {

SparseMatrix random_bipartite(Index rows, Index cols, Index per_row, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> pick(0, cols - 1);
  std::vector<Eigen::Triplet<double, Index>> triplets;
  for (Index i = 0; i < rows; ++i) {
    for (Index e = 0; e < per_row; ++e) triplets.emplace_back(i, pick(rng), 1.0);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

FeatureMatrix gaussian_features(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FeatureMatrix f(rows, cols);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = normal(rng);
  return f;
}

}  // namespace

HeteroGraph three_type_hetero(Index papers, Index authors, Index terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Label> label(0, 3);
  std::vector<NodeType> types;
  NodeType paper{"paper", papers, gaussian_features(papers, 8, rng), std::vector<Label>{}};
  for (Index i = 0; i < papers; ++i) paper.labels->push_back(label(rng));
  types.push_back(std::move(paper));
  types.push_back({"author", authors, gaussian_features(authors, 6, rng), std::nullopt});
  types.push_back({"term", terms, std::nullopt, std::nullopt});

  std::vector<Relation> relations;
  relations.push_back({{"author", "writes", "paper"}, random_bipartite(authors, papers, 3, rng)});
  relations.push_back({{"paper", "has", "term"}, random_bipartite(papers, terms, 4, rng)});
  relations.push_back({{"paper", "cites", "paper"}, random_bipartite(papers, papers, 2, rng)});
  return HeteroGraph::create(std::move(types), std::move(relations), "paper");
}

}  // namespace agc::synthetic
