#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "agc/schedule.hpp"
#include "oracles.hpp"

using namespace agc;

namespace {

std::set<std::set<Index>> as_sets(const CoarseningMatrix& c) {
  std::set<std::set<Index>> out;
  for (const auto& m : c.members()) out.insert(std::set<Index>(m.begin(), m.end()));
  return out;
}

NodeOrder shuffled(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector s(n);
  std::uniform_real_distribution<double> u;
  for (Index i = 0; i < n; ++i) s[i] = u(rng);
  return build_order(s);
}

bool refines(const CoarseningMatrix& fine, const CoarseningMatrix& coarse) {
  std::vector<Index> image(static_cast<std::size_t>(fine.num_supernodes), -1);
  for (Index v = 0; v < fine.num_nodes(); ++v) {
    Index& slot = image[static_cast<std::size_t>(fine.assignment[static_cast<std::size_t>(v)])];
    const Index target = coarse.assignment[static_cast<std::size_t>(v)];
    if (slot == -1) slot = target;
    if (slot != target) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("coarsening matrix structure") {
  CoarseningMatrix c = CoarseningMatrix::from_assignment({0, 1, 1, 2, 0});
  CHECK(c.num_supernodes == 3);
  CHECK(c.sizes == std::vector<Index>{2, 2, 1});
  CHECK_FALSE(check_structure(c));
  DenseMatrix d = c.to_dense();
  DenseMatrix gram = d.transpose() * d;
  CHECK(gram.diagonal() == Vector((Vector(3) << 2, 2, 1).finished()));
  CHECK(d.rowwise().sum() == Vector::Ones(5));

  CHECK_THROWS_AS(CoarseningMatrix::from_assignment({0, 2}), Error);
  CoarseningMatrix broken = c;
  broken.sizes[0] = 5;
  CHECK(check_structure(broken));
  broken = c;
  broken.assignment[0] = 7;
  CHECK(check_structure(broken));
}

TEST_CASE("target supernode rounding") {
  CHECK(target_supernodes(10, 0.25) == 3);
  CHECK(target_supernodes(10, 0.01) == 1);
  CHECK(target_supernodes(10, 1.0) == 10);
  CHECK(target_supernodes(4, 0.75) == 3);
}

TEST_CASE("schedule merge counts") {
  NodeOrder o = NodeOrder::identity(4);
  CHECK(build_schedule(o, 1.0, 5).merges().empty());
  MergeSchedule s = build_schedule(o, 0.25, 5);
  CHECK(s.merges().size() == 3);
  CoarseningMatrix all = s.partition_at_ratio(0.25);
  CHECK(all.num_supernodes == 1);
  CHECK(all.sizes == std::vector<Index>{4});
}

TEST_CASE("schedule replay is deterministic") {
  NodeOrder o = shuffled(1000, 1);
  MergeSchedule a = build_schedule(o, 0.1, 99);
  MergeSchedule b = build_schedule(o, 0.1, 99);
  REQUIRE(a.merges().size() == 900);
  REQUIRE(a.merges().size() == b.merges().size());
  for (std::size_t i = 0; i < a.merges().size(); ++i) {
    CHECK(a.merges()[i].left == b.merges()[i].left);
    CHECK(a.merges()[i].step == i);
  }
  MergeSchedule c = build_schedule(o, 0.1, 100);
  bool differs = false;
  for (std::size_t i = 0; i < a.merges().size(); ++i) differs |= a.merges()[i].left != c.merges()[i].left;
  CHECK(differs);
}

TEST_CASE("schedule rejects bad ratios") {
  NodeOrder o = NodeOrder::identity(10);
  for (double r : {0.0, -0.5, 1.5}) {
    try {
      build_schedule(o, r, 1);
      FAIL("expected invalid_ratio");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_ratio);
    }
  }
  MergeSchedule s = build_schedule(o, 0.5, 1);
  try {
    s.partition_at_ratio(0.2);
    FAIL("expected ratio_below_schedule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ratio_below_schedule);
  }
  CHECK_THROWS_AS(s.partition_at_ratio(1.01), Error);
}

TEST_CASE("identity partition at ratio one") {
  MergeSchedule s = build_schedule(shuffled(20, 4), 0.3, 2);
  CoarseningMatrix c = s.partition_at_ratio(1.0);
  CHECK(c.num_supernodes == 20);
  for (Index v = 0; v < 20; ++v) CHECK(c.sizes[static_cast<std::size_t>(v)] == 1);
}

TEST_CASE("hand-replayed single merge") {
  Vector scores(4);
  scores << 1, 2, 3, 4;
  const std::vector<Index> heads{1};
  MergeSchedule s = MergeSchedule::from_merges(build_order(scores), heads);
  CoarseningMatrix c = s.partition_at_ratio(0.75);
  CHECK(as_sets(c) == std::set<std::set<Index>>{{0}, {1, 2}, {3}});
}

TEST_CASE("ring wrap-around merges last with first") {
  const std::vector<Index> heads{3};
  MergeSchedule s = MergeSchedule::from_merges(NodeOrder::identity(4), heads);
  CHECK(as_sets(s.partition_after(1)) == std::set<std::set<Index>>{{0, 3}, {1}, {2}});
  const std::vector<Index> dead{1, 2};
  CHECK_THROWS_AS(MergeSchedule::from_merges(NodeOrder::identity(4), dead), Error);
}

TEST_CASE("partition constraints, contiguity and nesting hold on random schedules") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(2, 300)(rng);
    NodeOrder o = shuffled(n, rng());
    const std::vector<double> ratios{0.9, 0.7, 0.5, 0.3, 0.1};
    MergeSchedule s = build_schedule(o, 0.1, rng(), ratios);
    std::vector<CoarseningMatrix> parts = s.partitions_at_ratios(ratios);
    REQUIRE(parts.size() == ratios.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const CoarseningMatrix& c = parts[i];
      CHECK_FALSE(check_structure(c));
      CHECK(c.num_supernodes == target_supernodes(n, ratios[i]));
      CHECK(as_sets(c) == as_sets(s.partition_at_ratio(ratios[i])));
      DenseMatrix d = c.to_dense();
      DenseMatrix gram = d.transpose() * d;
      DenseMatrix diag = DenseMatrix(gram.diagonal().asDiagonal());
      CHECK((gram - diag).cwiseAbs().maxCoeff() == 0.0);

      // Ring contiguity: walking the base order, supernode id changes at most
      // once per supernode (plus one wrap).
      Index changes = 0;
      for (Index t = 0; t < n; ++t) {
        const Index a = c.assignment[static_cast<std::size_t>(o.order[static_cast<std::size_t>(t)])];
        const Index b = c.assignment[static_cast<std::size_t>(o.order[static_cast<std::size_t>((t + 1) % n)])];
        changes += a != b;
      }
      CHECK(changes == (c.num_supernodes == 1 ? 0 : c.num_supernodes));
      if (i > 0) CHECK(refines(parts[i - 1], c));
    }
  }
}

TEST_CASE("checkpoint replay agrees with full replay") {
  NodeOrder o = shuffled(500, 8);
  const std::vector<double> cps{0.8, 0.4};
  MergeSchedule with = build_schedule(o, 0.05, 77, cps);
  MergeSchedule without = build_schedule(o, 0.05, 77);
  CHECK(with.checkpoints().size() >= 2);
  for (double r : {1.0, 0.95, 0.8, 0.61, 0.4, 0.33, 0.05}) {
    CHECK(with.partition_at_ratio(r).assignment == without.partition_at_ratio(r).assignment);
    CHECK(with.partition_at_ratio(r).assignment ==
          with.partition_after(500 - static_cast<std::size_t>(target_supernodes(500, r))).assignment);
  }
}
