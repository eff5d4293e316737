#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agc/graph.hpp"
#include "agc/lsh.hpp"
#include "agc/schedule.hpp"

namespace agc {

/// Graph over supernodes. Off-diagonal adjacency entries hold the total
/// original weight between two member sets; weight inside a supernode is
/// kept in self_weights and the adjacency diagonal stays zero.
struct CoarsenedGraph {
  Index num_supernodes = 0;
  SparseMatrix adjacency;
  Vector self_weights;
  FeatureMatrix features;
  std::optional<std::vector<Label>> labels;
  CoarseningMatrix partition;

  std::vector<Edge> edges() const;
  Graph as_graph() const;
};

CoarsenedGraph coarsen_graph(const Graph& g, const CoarseningMatrix& c);

/// Row u is the unweighted mean of the member rows of supernode u.
FeatureMatrix average_features(const FeatureMatrix& features, const CoarseningMatrix& c);

/// Most frequent member label per supernode; ties go to the smallest label.
std::vector<Label> majority_vote(std::span<const Label> labels, const CoarseningMatrix& c);

struct CoarsenOptions {
  /// Unset means automatic: the heterophily factor when labels and edges
  /// exist, 0 for an edgeless graph, otherwise 0.5.
  std::optional<double> alpha;
  Index projectors = 10;
  std::uint64_t seed = 0;
  Aggregate aggregate = Aggregate::mean;
  bool standardize = false;
};

double resolve_alpha(const Graph& g, const std::optional<double>& requested);

struct PipelineTimes {
  double project = 0.0;
  double sort = 0.0;
  double schedule = 0.0;
};

/// One hashing pass plus a merge schedule down to `min_ratio`; coarsened
/// graphs for any ratio in [min_ratio, 1] are then read off the schedule.
/// The graph must outlive the coarsener.
class AdaptiveCoarsener {
 public:
  AdaptiveCoarsener(const Graph& g, double min_ratio, const CoarsenOptions& options = {},
                    std::span<const double> checkpoint_ratios = {});

  double alpha() const noexcept { return scores_.alpha_used; }
  const ScoreVector& scores() const noexcept { return scores_; }
  const NodeOrder& order() const noexcept { return schedule_.base_order(); }
  const MergeSchedule& schedule() const noexcept { return schedule_; }
  const PipelineTimes& times() const noexcept { return times_; }

  CoarseningMatrix partition(double ratio) const { return schedule_.partition_at_ratio(ratio); }
  CoarsenedGraph coarsen(double ratio) const;
  std::vector<CoarsenedGraph> coarsen_all(std::span<const double> ratios) const;

 private:
  const Graph& graph_;
  ScoreVector scores_;
  MergeSchedule schedule_;
  PipelineTimes times_;
};

}  // namespace agc
