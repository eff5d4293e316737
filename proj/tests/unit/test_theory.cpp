#include <doctest.h>

#include <cmath>

#include "agc/theory.hpp"

using namespace agc;
using namespace agc::theory;

namespace {

constexpr double kErfOne = 0.842700792949714869;
constexpr double kBound10000 = 860.5170185988092;
constexpr double kPhi0025 = 0.509972518195238;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("load balance bound") {
  CHECK(std::abs(load_balance_bound(10000, 100, 3.0) - kBound10000) < 1e-9);
  CHECK(load_balance_bound(100, 1, 0.5) >= 100.0);
  CHECK(load_balance_bound(50, 50, 2.0) >= 1.0);
  CHECK_THROWS_AS(load_balance_bound(10, 0, 1.0), Error);
  CHECK_THROWS_AS(load_balance_bound(10, 20, 1.0), Error);
}

TEST_CASE("load balance validation") {
  BoundCheck full = validate_load_balance(200, 200, 1.0, 20, 1);
  CHECK(full.empirical == 1.0);
  CHECK(full.pass);
  BoundCheck small = validate_load_balance(1000, 10, 5.0, 300, 2);
  CHECK(small.analytic == doctest::Approx(1.0 - std::exp(-5.0)));
  CHECK(small.empirical >= small.analytic - 3.0 * small.sigma);
  CHECK(small.pass);
}

TEST_CASE("proximity probability") {
  CHECK(proximity_probability(0.0, 4, 1.0).probability == 0.0);
  CHECK(std::abs(proximity_probability(std::sqrt(8.0), 4, 1.0).probability - kErfOne) < 1e-15);
  double prev = 0.0;
  for (double eps = 0.5; eps < 40.0; eps *= 1.5) {
    const double p = proximity_probability(eps, 4, 1.0).probability;
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(prev > 1.0 - 1e-12);
  CHECK(proximity_probability(1.0, 4, 0.0).zero_distance);
}

TEST_CASE("proximity validation rejects identical points") {
  try {
    validate_proximity(vec({1, 2}), vec({1, 2}), 4, 1.0, 100, 1);
    FAIL("expected degenerate_input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_input);
  }
}

TEST_CASE("proximity Monte Carlo") {
  BoundCheck b = validate_proximity(vec({0, 0}), vec({1, 0}), 4, std::sqrt(8.0), 20000, 3);
  CHECK(std::abs(b.empirical - kErfOne) <= std::max(0.01, 3.0 * b.sigma));
  VarianceCheck v = validate_gap_variance(vec({0, 0}), vec({0.6, 0.8}), 4, 20000, 4, 0.05);
  CHECK(v.expected_variance == doctest::Approx(4.0));
  CHECK(v.pass);
  std::vector<CurvePoint> curve = proximity_curve(vec({0}), vec({1}), 4, {1.0, 2.0, 4.0}, 5000, 5);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].analytic < curve[2].analytic);
}

TEST_CASE("separation bound") {
  CHECK(standard_normal_cdf(0.0) == 0.5);
  CHECK(std::abs(separation_bound(vec({0, 0}), vec({0.1, 0}), vec({0, 1}), 16) - kPhi0025) < 1e-12);
  CHECK(separation_bound(vec({0, 0}), vec({0, 0}), vec({0, 1}), 16) == 0.5);
  CHECK(separation_bound(vec({0, 0}), vec({1e6, 0}), vec({0, 1}), 16) > 1.0 - 1e-12);
  try {
    separation_bound(vec({0, 0}), vec({1, 0}), vec({0, 0}), 16);
    FAIL("expected zero_distance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::zero_distance);
  }
  BoundCheck b = validate_separation(vec({0, 0}), vec({0.1, 0}), vec({0, 1}), 16, 20000, 6);
  CHECK(b.pass);
  CHECK(b.empirical <= b.analytic + 3.0 * b.sigma);
}
