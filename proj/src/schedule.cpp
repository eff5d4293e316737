#include "agc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace agc {

CoarseningMatrix CoarseningMatrix::from_assignment(std::vector<Index> assignment) {
  CoarseningMatrix c;
  Index max_id = -1;
  for (Index a : assignment) {
    if (a < 0) throw Error(ErrorCode::size_mismatch, "negative supernode id");
    max_id = std::max(max_id, a);
  }
  c.num_supernodes = max_id + 1;
  c.sizes.assign(static_cast<std::size_t>(c.num_supernodes), 0);
  for (Index a : assignment) ++c.sizes[static_cast<std::size_t>(a)];
  for (std::size_t s = 0; s < c.sizes.size(); ++s) {
    if (c.sizes[s] == 0) {
      throw Error(ErrorCode::size_mismatch, "supernode " + std::to_string(s) + " is empty");
    }
  }
  c.assignment = std::move(assignment);
  return c;
}

CoarseningMatrix CoarseningMatrix::identity(Index num_nodes) {
  std::vector<Index> a(static_cast<std::size_t>(num_nodes));
  std::iota(a.begin(), a.end(), Index{0});
  return from_assignment(std::move(a));
}

std::vector<std::vector<Index>> CoarseningMatrix::members() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(num_supernodes));
  for (std::size_t s = 0; s < out.size() && s < sizes.size(); ++s) {
    out[s].reserve(static_cast<std::size_t>(sizes[s]));
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[static_cast<std::size_t>(assignment[i])].push_back(static_cast<Index>(i));
  }
  return out;
}

DenseMatrix CoarseningMatrix::to_dense() const {
  DenseMatrix c = DenseMatrix::Zero(num_nodes(), num_supernodes);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    c(static_cast<Eigen::Index>(i), assignment[i]) = 1.0;
  }
  return c;
}

std::optional<std::string> check_structure(const CoarseningMatrix& c) {
  if (c.num_supernodes < 0 || static_cast<Index>(c.sizes.size()) != c.num_supernodes) {
    return "sizes vector length does not match supernode count";
  }
  if (c.num_nodes() > 0 && c.num_supernodes == 0) return "no supernodes for a nonempty graph";
  std::vector<Index> counted(c.sizes.size(), 0);
  for (std::size_t i = 0; i < c.assignment.size(); ++i) {
    const Index a = c.assignment[i];
    if (a < 0 || a >= c.num_supernodes) {
      return "node " + std::to_string(i) + " maps outside [0, n)";
    }
    ++counted[static_cast<std::size_t>(a)];
  }
  for (std::size_t s = 0; s < counted.size(); ++s) {
    if (counted[s] == 0) return "supernode " + std::to_string(s) + " is empty";
    if (counted[s] != c.sizes[s]) return "size of supernode " + std::to_string(s) + " is stale";
  }
  return std::nullopt;
}

Index target_supernodes(Index num_nodes, double ratio) {
  if (num_nodes <= 0) return 0;
  const auto rounded = static_cast<Index>(std::llround(ratio * static_cast<double>(num_nodes)));
  return std::clamp(rounded, Index{1}, num_nodes);
}

namespace {

/// Live supernodes on the ring, identified by the base-order position of
/// their first member. next_[h] is the clockwise neighbour of live head h.
class Ring {
 public:
  explicit Ring(Index n) : next_(static_cast<std::size_t>(n)), live_(static_cast<std::size_t>(n), 1) {
    for (Index h = 0; h < n; ++h) next_[static_cast<std::size_t>(h)] = n == 0 ? 0 : (h + 1) % n;
    live_count_ = n;
  }

  Ring(Index n, std::span<const Index> sorted_heads)
      : next_(static_cast<std::size_t>(n), 0), live_(static_cast<std::size_t>(n), 0) {
    for (std::size_t i = 0; i < sorted_heads.size(); ++i) {
      const Index h = sorted_heads[i];
      next_[static_cast<std::size_t>(h)] = sorted_heads[(i + 1) % sorted_heads.size()];
      live_[static_cast<std::size_t>(h)] = 1;
    }
    live_count_ = static_cast<Index>(sorted_heads.size());
  }

  bool is_live(Index h) const { return live_[static_cast<std::size_t>(h)] != 0; }
  Index live_count() const { return live_count_; }

  /// Absorbs the clockwise neighbour of `left`; returns the removed head.
  Index merge(Index left) {
    const Index right = next_[static_cast<std::size_t>(left)];
    next_[static_cast<std::size_t>(left)] = next_[static_cast<std::size_t>(right)];
    live_[static_cast<std::size_t>(right)] = 0;
    --live_count_;
    return right;
  }

  std::vector<Index> heads() const {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(live_count_));
    for (std::size_t h = 0; h < live_.size(); ++h) {
      if (live_[h]) out.push_back(static_cast<Index>(h));
    }
    return out;
  }

  /// Positions before the first head belong to the segment wrapping around
  /// from the last head. Supernode ids are then renumbered by smallest member
  /// node id, so the identity partition is labelled 0..N-1.
  CoarseningMatrix label(const NodeOrder& order) const {
    const Index n = static_cast<Index>(live_.size());
    std::vector<Index> assignment(static_cast<std::size_t>(n));
    std::vector<Index> sizes(static_cast<std::size_t>(live_count_), 0);
    Index first = 0;
    while (first < n && !live_[static_cast<std::size_t>(first)]) ++first;
    Index id = -1;
    for (Index p = first; p < n; ++p) {
      if (live_[static_cast<std::size_t>(p)]) ++id;
      assignment[static_cast<std::size_t>(order.order[static_cast<std::size_t>(p)])] = id;
      ++sizes[static_cast<std::size_t>(id)];
    }
    for (Index p = 0; p < first; ++p) {
      assignment[static_cast<std::size_t>(order.order[static_cast<std::size_t>(p)])] = id;
      ++sizes[static_cast<std::size_t>(id)];
    }
    std::vector<Index> renumber(sizes.size(), -1);
    Index next_id = 0;
    for (Index& a : assignment) {
      Index& target = renumber[static_cast<std::size_t>(a)];
      if (target < 0) target = next_id++;
      a = target;
    }
    CoarseningMatrix c;
    c.sizes.assign(sizes.size(), 0);
    for (std::size_t s = 0; s < sizes.size(); ++s) c.sizes[static_cast<std::size_t>(renumber[s])] = sizes[s];
    c.assignment = std::move(assignment);
    c.num_supernodes = live_count_;
    return c;
  }

 private:
  std::vector<Index> next_;
  std::vector<char> live_;
  Index live_count_ = 0;
};

}  // namespace

MergeSchedule MergeSchedule::build(NodeOrder order, Index target_count, std::uint64_t seed,
                                   std::span<const double> checkpoint_ratios) {
  const Index n = order.size();
  if (n > 0 && (target_count < 1 || target_count > n)) {
    throw Error(ErrorCode::invalid_params, "target supernode count must lie in [1, N]");
  }
  MergeSchedule s;
  s.seed_ = seed;
  s.order_ = std::move(order);
  s.min_ratio_ = n > 0 ? static_cast<double>(target_count) / static_cast<double>(n) : 1.0;

  std::vector<std::pair<std::size_t, double>> wanted;
  for (double r : checkpoint_ratios) {
    if (r > 0.0 && r <= 1.0) {
      const Index count = target_supernodes(n, r);
      if (count >= target_count) wanted.emplace_back(static_cast<std::size_t>(n - count), r);
    }
  }
  std::sort(wanted.begin(), wanted.end());
  auto next_checkpoint = wanted.begin();

  Ring ring(n);
  // Live heads in sampling order; swap-remove keeps sampling O(1).
  std::vector<Index> live(static_cast<std::size_t>(n));
  std::iota(live.begin(), live.end(), Index{0});
  std::vector<Index> slot(live);

  std::mt19937_64 rng(seed);
  const std::size_t total = n > 0 ? static_cast<std::size_t>(n - target_count) : 0;
  s.merges_.reserve(total);
  for (std::size_t step = 0; step <= total; ++step) {
    for (; next_checkpoint != wanted.end() && next_checkpoint->first == step; ++next_checkpoint) {
      s.checkpoints_.push_back({next_checkpoint->second, step, ring.heads()});
    }
    if (step == total) break;
    std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
    const Index left = live[pick(rng)];
    const Index right = ring.merge(left);
    const Index hole = slot[static_cast<std::size_t>(right)];
    live[static_cast<std::size_t>(hole)] = live.back();
    slot[static_cast<std::size_t>(live.back())] = hole;
    live.pop_back();
    s.merges_.push_back({step, left});
  }
  return s;
}

MergeSchedule MergeSchedule::from_merges(NodeOrder order, std::span<const Index> left_heads) {
  const Index n = order.size();
  if (static_cast<Index>(left_heads.size()) >= std::max<Index>(n, 1)) {
    throw Error(ErrorCode::invalid_params, "too many merges for the node count");
  }
  Ring ring(n);
  MergeSchedule s;
  s.order_ = std::move(order);
  for (std::size_t step = 0; step < left_heads.size(); ++step) {
    const Index left = left_heads[step];
    if (left < 0 || left >= n || !ring.is_live(left)) {
      throw Error(ErrorCode::invalid_params,
                  "merge " + std::to_string(step) + " names a supernode that is not live");
    }
    ring.merge(left);
    s.merges_.push_back({step, left});
  }
  s.min_ratio_ = n > 0 ? static_cast<double>(s.min_supernodes()) / static_cast<double>(n) : 1.0;
  return s;
}

std::size_t MergeSchedule::merges_for_ratio(double ratio) const {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::invalid_ratio, "ratio must lie in (0, 1]");
  }
  const Index count = target_supernodes(num_nodes(), ratio);
  if (ratio < min_ratio_ || count < min_supernodes()) {
    throw Error(ErrorCode::ratio_below_schedule,
                "ratio " + std::to_string(ratio) + " is below the schedule minimum " +
                    std::to_string(min_ratio_));
  }
  return static_cast<std::size_t>(num_nodes() - count);
}

CoarseningMatrix MergeSchedule::partition_after(std::size_t num_merges) const {
  if (num_merges > merges_.size()) {
    throw Error(ErrorCode::ratio_below_schedule, "schedule has fewer merges than requested");
  }
  const Checkpoint* base = nullptr;
  for (const auto& cp : checkpoints_) {
    if (cp.merges_applied <= num_merges && (!base || cp.merges_applied > base->merges_applied)) {
      base = &cp;
    }
  }
  Ring ring = base ? Ring(num_nodes(), base->heads) : Ring(num_nodes());
  for (std::size_t t = base ? base->merges_applied : 0; t < num_merges; ++t) {
    ring.merge(merges_[t].left);
  }
  return ring.label(order_);
}

CoarseningMatrix MergeSchedule::partition_at_ratio(double ratio) const {
  return partition_after(merges_for_ratio(ratio));
}

std::vector<CoarseningMatrix> MergeSchedule::partitions_at_ratios(
    std::span<const double> ratios) const {
  std::vector<std::pair<std::size_t, std::size_t>> wanted;  // (merges, output slot)
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    wanted.emplace_back(merges_for_ratio(ratios[i]), i);
  }
  std::sort(wanted.begin(), wanted.end());
  std::vector<CoarseningMatrix> out(ratios.size());
  Ring ring(num_nodes());
  std::size_t applied = 0;
  for (const auto& [count, slot] : wanted) {
    for (; applied < count; ++applied) ring.merge(merges_[applied].left);
    out[slot] = ring.label(order_);
  }
  return out;
}

MergeSchedule build_schedule(const NodeOrder& order, double min_ratio, std::uint64_t seed,
                             std::span<const double> checkpoint_ratios) {
  if (!(min_ratio > 0.0 && min_ratio <= 1.0)) {
    throw Error(ErrorCode::invalid_ratio, "min_ratio must lie in (0, 1]");
  }
  MergeSchedule s = MergeSchedule::build(order, target_supernodes(order.size(), min_ratio), seed,
                                         checkpoint_ratios);
  s.min_ratio_ = std::min(s.min_ratio_, min_ratio);
  return s;
}

}  // namespace agc
