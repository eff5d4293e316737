#pragma once

#include <cstdint>

#include "agc/graph.hpp"
#include "agc/hetero.hpp"

namespace agc::synthetic {

struct GeometricSpec {
  Index num_nodes = 1000;
  Index feature_dim = 32;
  Index num_classes = 8;
  double avg_degree = 10.0;
  std::uint64_t seed = 0;
};

/// Random geometric graph on the unit square. Nodes are uniform points,
/// joined when closer than sqrt(avg_degree / (pi N)) with weight 1. The
/// label is the index of the nearest of num_classes random centres; features
/// are a per-class mean plus a random linear map of the position plus
/// N(0, 0.25) noise. Edge search uses a uniform grid, so generation is
/// O(N * avg_degree).
Graph random_geometric(const GeometricSpec& spec);

/// G(n, p) with uniform random weights in [0.5, 2), N(0, 1) features and
/// labels uniform in [0, num_classes).
Graph erdos_renyi(Index num_nodes, double edge_probability, Index feature_dim, Index num_classes,
                  std::uint64_t seed);

/// Three node types: `paper` (target, features, labels), `author`
/// (features) and `term` (no features). Relations: author-writes-paper,
/// paper-has-term and paper-cites-paper.
HeteroGraph three_type_hetero(Index papers, Index authors, Index terms, std::uint64_t seed);

}  // namespace agc::synthetic
