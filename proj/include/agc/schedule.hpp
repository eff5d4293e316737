#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agc/graph.hpp"
#include "agc/lsh.hpp"

namespace agc {

/// Node-to-supernode map realizing a binary coarsening matrix C (N x n):
/// C(i, assignment[i]) = 1 and every other entry is 0.
struct CoarseningMatrix {
  std::vector<Index> assignment;
  Index num_supernodes = 0;
  std::vector<Index> sizes;

  Index num_nodes() const noexcept { return static_cast<Index>(assignment.size()); }

  /// Supernode count is max(assignment) + 1. Throws size_mismatch if an id
  /// is negative or some id below the maximum is unused.
  static CoarseningMatrix from_assignment(std::vector<Index> assignment);
  static CoarseningMatrix identity(Index num_nodes);

  /// Member node ids per supernode, ascending.
  std::vector<std::vector<Index>> members() const;
  DenseMatrix to_dense() const;
};

/// Returns a description of the first violated structural constraint, or
/// nullopt if the map is a valid partition with consistent size bookkeeping.
std::optional<std::string> check_structure(const CoarseningMatrix& c);

/// max(1, round(ratio * n)), clamped to n.
Index target_supernodes(Index num_nodes, double ratio);

struct Merge {
  std::size_t step = 0;
  /// Base-order position of the first member of the supernode that absorbs
  /// its clockwise neighbour.
  Index left = 0;
};

/// Seeded sequence of rightward merges over a sorted node ring. Any prefix of
/// the sequence yields a partition; longer prefixes only coalesce supernodes,
/// so partitions taken from one schedule are nested.
class MergeSchedule {
 public:
  /// Samples merges uniformly over live supernodes until `target_count`
  /// remain. `checkpoint_ratios` at or above the final ratio get a stored
  /// snapshot so later queries replay only from the nearest finer snapshot.
  static MergeSchedule build(NodeOrder order, Index target_count, std::uint64_t seed,
                             std::span<const double> checkpoint_ratios = {});

  /// Replays an explicit list of left heads (e.g. recorded elsewhere).
  /// Throws invalid_params if a head is not live when its merge is applied.
  static MergeSchedule from_merges(NodeOrder order, std::span<const Index> left_heads);

  const NodeOrder& base_order() const noexcept { return order_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Index num_nodes() const noexcept { return order_.size(); }
  Index min_supernodes() const noexcept {
    return num_nodes() - static_cast<Index>(merges_.size());
  }
  double min_ratio() const noexcept { return min_ratio_; }

  struct Checkpoint {
    double ratio = 1.0;
    std::size_t merges_applied = 0;
    std::vector<Index> heads;
  };
  const std::vector<Checkpoint>& checkpoints() const noexcept { return checkpoints_; }

  CoarseningMatrix partition_after(std::size_t num_merges) const;

  /// Partition with target_supernodes(N, ratio) supernodes. Throws
  /// invalid_ratio outside (0, 1] and ratio_below_schedule below min_ratio().
  CoarseningMatrix partition_at_ratio(double ratio) const;

  /// All requested partitions from one forward replay; output follows the
  /// input order of `ratios`.
  std::vector<CoarseningMatrix> partitions_at_ratios(std::span<const double> ratios) const;

 private:
  friend MergeSchedule build_schedule(const NodeOrder&, double, std::uint64_t,
                                      std::span<const double>);

  std::size_t merges_for_ratio(double ratio) const;

  NodeOrder order_;
  std::vector<Merge> merges_;
  std::uint64_t seed_ = 0;
  double min_ratio_ = 1.0;
  std::vector<Checkpoint> checkpoints_;
};

/// Schedule reaching max(1, round(min_ratio * N)) supernodes.
/// Throws invalid_ratio when min_ratio is outside (0, 1].
MergeSchedule build_schedule(const NodeOrder& order, double min_ratio, std::uint64_t seed,
                             std::span<const double> checkpoint_ratios = {});

inline CoarseningMatrix partition_at_ratio(const MergeSchedule& schedule, double ratio) {
  return schedule.partition_at_ratio(ratio);
}

}  // namespace agc
