#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agc/graph.hpp"
#include "agc/lsh.hpp"
#include "agc/schedule.hpp"

namespace agc {

struct NodeType {
  std::string name;
  Index count = 0;
  std::optional<FeatureMatrix> features;
  std::optional<std::vector<Label>> labels;
};

struct RelationKey {
  std::string src;
  std::string rel;
  std::string dst;

  std::string to_string() const { return src + "__" + rel + "__" + dst; }
  auto operator<=>(const RelationKey&) const = default;
};

/// Typed bipartite block: rows index src-type nodes, columns dst-type nodes.
struct Relation {
  RelationKey key;
  SparseMatrix matrix;
};

class HeteroGraph {
 public:
  /// Validates type names, relation shapes, endpoint ranges and the target
  /// type. Throws invalid_graph / unknown_type.
  static HeteroGraph create(std::vector<NodeType> types, std::vector<Relation> relations,
                            std::string target_type);

  const std::vector<NodeType>& types() const noexcept { return types_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const std::string& target_type() const noexcept { return target_; }

  /// Throws unknown_type.
  const NodeType& type(std::string_view name) const;
  bool has_type(std::string_view name) const;

 private:
  std::vector<NodeType> types_;
  std::vector<Relation> relations_;
  std::string target_;
};

/// Hashing input for one node type.
struct TypeInput {
  FeatureMatrix features;
  SparseMatrix structure;
  double alpha = 0.0;
  /// True when the type has no features and its incidence rows stand in.
  bool structural_only = false;
};

/// Features pass through; the structure is the symmetrized sum of same-type
/// relations. A feature-less type hashes the concatenation of its incidence
/// rows over every relation touching it, with alpha fixed to 1. Without
/// same-type edges alpha is 0. Otherwise alpha is `alpha_override`, the
/// heterophily factor for the labelled target type, or 0.5.
TypeInput type_features(const HeteroGraph& h, std::string_view type,
                        std::optional<double> alpha_override = std::nullopt);

struct HeteroOptions {
  double eta = 0.5;
  std::map<std::string, double> eta_per_type;
  Index projectors = 10;
  std::uint64_t seed = 0;
  Aggregate aggregate = Aggregate::mean;
  std::optional<double> alpha;
};

struct CoarsenedType {
  std::string name;
  double eta = 1.0;
  double alpha = 0.0;
  CoarseningMatrix partition;
  std::optional<FeatureMatrix> features;
  std::optional<std::vector<Label>> labels;
};

struct HeteroCoarsenedGraph {
  std::vector<CoarsenedType> types;
  std::vector<Relation> relations;
  std::string target_type;

  const CoarsenedType& type(std::string_view name) const;
};

/// sum over nonzeros (i, j, w): out(src_map[i], dst_map[j]) += w.
SparseMatrix coarsen_relation(const SparseMatrix& relation, const CoarseningMatrix& src,
                              const CoarseningMatrix& dst);

/// Independent adaptive coarsening per node type, then every relation is
/// coarsened through its endpoint types' maps.
HeteroCoarsenedGraph coarsen_hetero(const HeteroGraph& h, const HeteroOptions& options);

/// Fraction of supernodes (over all types) whose members share one node type,
/// checked on the combined global node index.
double type_purity(const HeteroGraph& h, const HeteroCoarsenedGraph& coarse);

}  // namespace agc
