#include "agc/hetero.hpp"

#include <algorithm>
#include <set>

#include "agc/coarsen.hpp"
#include "agc/seed.hpp"

namespace agc {

HeteroGraph HeteroGraph::create(std::vector<NodeType> types, std::vector<Relation> relations,
                                std::string target_type) {
  HeteroGraph h;
  std::set<std::string> names;
  for (const auto& t : types) {
    if (t.name.empty()) throw Error(ErrorCode::invalid_graph, "node type name is empty");
    if (!names.insert(t.name).second) {
      throw Error(ErrorCode::invalid_graph, "duplicate node type `" + t.name + "`");
    }
    if (t.count < 0) throw Error(ErrorCode::invalid_graph, "negative count for `" + t.name + "`");
    if (t.features && t.features->rows() != t.count) {
      throw Error(ErrorCode::invalid_graph, "features of `" + t.name + "` have " +
                                                std::to_string(t.features->rows()) +
                                                " rows, expected " + std::to_string(t.count));
    }
    if (t.labels && static_cast<Index>(t.labels->size()) != t.count) {
      throw Error(ErrorCode::invalid_graph, "labels of `" + t.name + "` have wrong length");
    }
  }
  h.types_ = std::move(types);

  std::set<RelationKey> keys;
  for (const auto& r : relations) {
    if (!keys.insert(r.key).second) {
      throw Error(ErrorCode::invalid_graph, "duplicate relation " + r.key.to_string());
    }
    const NodeType& src = h.type(r.key.src);
    const NodeType& dst = h.type(r.key.dst);
    if (r.matrix.rows() != src.count || r.matrix.cols() != dst.count) {
      throw Error(ErrorCode::invalid_graph,
                  "relation " + r.key.to_string() + " endpoints exceed their type ranges");
    }
    for (Index i = 0; i < r.matrix.outerSize(); ++i) {
      for (SparseMatrix::InnerIterator it(r.matrix, i); it; ++it) {
        if (!(it.value() >= 0.0)) {
          throw Error(ErrorCode::invalid_graph,
                      "relation " + r.key.to_string() + " has a negative weight");
        }
      }
    }
  }
  h.relations_ = std::move(relations);
  h.type(target_type);
  h.target_ = std::move(target_type);
  return h;
}

bool HeteroGraph::has_type(std::string_view name) const {
  return std::any_of(types_.begin(), types_.end(), [&](const NodeType& t) { return t.name == name; });
}

const NodeType& HeteroGraph::type(std::string_view name) const {
  for (const auto& t : types_) {
    if (t.name == name) return t;
  }
  throw Error(ErrorCode::unknown_type, "unknown node type `" + std::string(name) + "`");
}

const CoarsenedType& HeteroCoarsenedGraph::type(std::string_view name) const {
  for (const auto& t : types) {
    if (t.name == name) return t;
  }
  throw Error(ErrorCode::unknown_type, "unknown node type `" + std::string(name) + "`");
}

namespace {

SparseMatrix symmetrize_without_diagonal(const SparseMatrix& m) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      edges.push_back({static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value()});
    }
  }
  const Index n = static_cast<Index>(m.rows());
  return Graph::from_edges(n, edges, FeatureMatrix(n, 0)).adjacency();
}

SparseMatrix hstack(const std::vector<SparseMatrix>& blocks, Index rows) {
  Index cols = 0;
  std::vector<Eigen::Triplet<double, Index>> triplets;
  for (const auto& b : blocks) {
    for (Index i = 0; i < b.outerSize(); ++i) {
      for (SparseMatrix::InnerIterator it(b, i); it; ++it) {
        triplets.emplace_back(it.row(), cols + it.col(), it.value());
      }
    }
    cols += static_cast<Index>(b.cols());
  }
  SparseMatrix out(rows, cols);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace

TypeInput type_features(const HeteroGraph& h, std::string_view type,
                        std::optional<double> alpha_override) {
  const NodeType& t = h.type(type);
  TypeInput in;
  if (!t.features) {
    std::vector<SparseMatrix> blocks;
    for (const auto& r : h.relations()) {
      if (r.key.src == t.name) blocks.push_back(r.matrix);
      if (r.key.dst == t.name) blocks.push_back(SparseMatrix(r.matrix.transpose()));
    }
    in.features = FeatureMatrix(t.count, 0);
    in.structure = hstack(blocks, t.count);
    in.alpha = 1.0;
    in.structural_only = true;
    return in;
  }

  in.features = *t.features;
  in.structure = SparseMatrix(t.count, t.count);
  for (const auto& r : h.relations()) {
    if (r.key.src == t.name && r.key.dst == t.name) {
      in.structure += symmetrize_without_diagonal(r.matrix);
    }
  }
  in.structure.makeCompressed();
  if (in.structure.nonZeros() == 0) {
    in.alpha = 0.0;
  } else if (alpha_override) {
    in.alpha = *alpha_override;
  } else if (t.name == h.target_type() && t.labels) {
    in.alpha = heterophily_factor(Graph::from_adjacency(in.structure, in.features, t.labels));
  } else {
    in.alpha = 0.5;
  }
  return in;
}

SparseMatrix coarsen_relation(const SparseMatrix& relation, const CoarseningMatrix& src,
                              const CoarseningMatrix& dst) {
  if (relation.rows() != src.num_nodes() || relation.cols() != dst.num_nodes()) {
    throw Error(ErrorCode::size_mismatch, "relation shape does not match its type partitions");
  }
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(static_cast<std::size_t>(relation.nonZeros()));
  for (Index i = 0; i < relation.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(relation, i); it; ++it) {
      triplets.emplace_back(src.assignment[static_cast<std::size_t>(it.row())],
                            dst.assignment[static_cast<std::size_t>(it.col())], it.value());
    }
  }
  SparseMatrix out(src.num_supernodes, dst.num_supernodes);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

HeteroCoarsenedGraph coarsen_hetero(const HeteroGraph& h, const HeteroOptions& options) {
  if (h.types().empty()) throw Error(ErrorCode::empty_type, "graph has no node types");
  const NodeType& target = h.type(h.target_type());
  if (!target.labels) {
    throw Error(ErrorCode::missing_target_labels,
                "target type `" + target.name + "` has no labels");
  }
  for (const auto& [name, eta] : options.eta_per_type) {
    h.type(name);
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw Error(ErrorCode::invalid_ratio, "ratio for `" + name + "` must lie in (0, 1]");
    }
  }
  if (!(options.eta > 0.0 && options.eta <= 1.0)) {
    throw Error(ErrorCode::invalid_ratio, "eta must lie in (0, 1]");
  }

  HeteroCoarsenedGraph out;
  out.target_type = h.target_type();
  for (const auto& t : h.types()) {
    if (t.count == 0) throw Error(ErrorCode::empty_type, "node type `" + t.name + "` is empty");
    const auto override_it = options.eta_per_type.find(t.name);
    const double eta = override_it != options.eta_per_type.end() ? override_it->second : options.eta;

    const TypeInput in = type_features(h, t.name, options.alpha);
    const std::uint64_t type_seed = options.seed ^ fnv1a(t.name);
    const auto projections = sample_projections(in.features.cols() + in.structure.cols(),
                                                options.projectors, mix_seed(type_seed, 0));
    ScoreOptions so;
    so.aggregate = options.aggregate;
    const ScoreVector scores = project_rows(in.features, in.structure, in.alpha, projections, so);
    const auto schedule = MergeSchedule::build(build_order(scores), target_supernodes(t.count, eta),
                                               mix_seed(type_seed, 1));

    CoarsenedType ct;
    ct.name = t.name;
    ct.eta = eta;
    ct.alpha = in.alpha;
    ct.partition = schedule.partition_after(schedule.merges().size());
    if (t.features) ct.features = average_features(*t.features, ct.partition);
    if (t.name == h.target_type()) ct.labels = majority_vote(*t.labels, ct.partition);
    out.types.push_back(std::move(ct));
  }

  for (const auto& r : h.relations()) {
    out.relations.push_back({r.key, coarsen_relation(r.matrix, out.type(r.key.src).partition,
                                                     out.type(r.key.dst).partition)});
  }
  return out;
}

double type_purity(const HeteroGraph& h, const HeteroCoarsenedGraph& coarse) {
  std::vector<std::size_t> node_type;
  std::vector<Index> global_assignment;
  Index supernode_offset = 0;
  for (std::size_t ti = 0; ti < h.types().size(); ++ti) {
    const auto& ct = coarse.type(h.types()[ti].name);
    for (Index a : ct.partition.assignment) {
      node_type.push_back(ti);
      global_assignment.push_back(supernode_offset + a);
    }
    supernode_offset += ct.partition.num_supernodes;
  }
  if (supernode_offset == 0) return 1.0;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> seen(static_cast<std::size_t>(supernode_offset), unset);
  std::vector<char> pure(static_cast<std::size_t>(supernode_offset), 1);
  for (std::size_t v = 0; v < global_assignment.size(); ++v) {
    const auto s = static_cast<std::size_t>(global_assignment[v]);
    if (seen[s] == unset) {
      seen[s] = node_type[v];
    } else if (seen[s] != node_type[v]) {
      pure[s] = 0;
    }
  }
  const auto pure_count = std::count(pure.begin(), pure.end(), 1);
  return static_cast<double>(pure_count) / static_cast<double>(supernode_offset);
}

}  // namespace agc
