#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agc/graph.hpp"

namespace agc::theory {

/// Outcome of a Monte-Carlo check against an analytic probability.
struct BoundCheck {
  std::string name;
  std::map<std::string, double> params;
  double empirical = 0.0;
  double analytic = 0.0;
  std::size_t trials = 0;
  /// Binomial standard error at the analytic probability.
  double sigma = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

double standard_normal_cdf(double x);

/// n / k + n (ln k + c) / k. Throws invalid_params unless 1 <= k <= n, c > 0.
double load_balance_bound(std::size_t n, std::size_t k, double c);

/// Runs the production merge scheduler on n ring positions down to k
/// supernodes per trial and counts trials whose largest supernode is within
/// load_balance_bound. Passes when empirical >= 1 - e^-c - 3 sigma.
BoundCheck validate_load_balance(std::size_t n, std::size_t k, double c, std::size_t trials,
                                 std::uint64_t seed);

struct Proximity {
  double probability = 0.0;
  /// Set when dist == 0; the probability is then 1 by continuity.
  bool zero_distance = false;
};

/// erf(eps / (sqrt(2 l) dist)).
Proximity proximity_probability(double eps, std::size_t projectors, double dist);

/// Samples of h(x) - h(y) with h(v) = sum_j r_j^T v, r_j ~ N(0, I), one fresh
/// projection set per trial.
std::vector<double> sample_projection_gaps(const Vector& x, const Vector& y, std::size_t projectors,
                                           std::size_t trials, std::uint64_t seed);

/// Two-sided: |empirical - erf(...)| <= max(0.01, 3 sigma).
/// Throws degenerate_input when x == y.
BoundCheck validate_proximity(const Vector& x, const Vector& y, std::size_t projectors, double eps,
                              std::size_t trials, std::uint64_t seed);

struct VarianceCheck {
  double sample_variance = 0.0;
  double expected_variance = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};

/// Sample variance of h(x) - h(y) against l ||x - y||^2, relative tolerance.
VarianceCheck validate_gap_variance(const Vector& x, const Vector& y, std::size_t projectors,
                                    std::size_t trials, std::uint64_t seed,
                                    double relative_tolerance = 0.02);

struct CurvePoint {
  double eps = 0.0;
  double empirical = 0.0;
  double analytic = 0.0;
};

/// Empirical vs analytic Pr[|h(x) - h(y)| <= eps] over a grid of eps values,
/// sharing one set of samples.
std::vector<CurvePoint> proximity_curve(const Vector& x, const Vector& y, std::size_t projectors,
                                        const std::vector<double>& eps_values, std::size_t trials,
                                        std::uint64_t seed);

/// Phi(||x - y|| / (sqrt(l) ||x - z||)). Throws zero_distance when x == z.
double separation_bound(const Vector& x, const Vector& y, const Vector& z, std::size_t projectors);

/// One-sided: frequency of h(x) < h(z) < h(y) <= bound + 3 sigma.
BoundCheck validate_separation(const Vector& x, const Vector& y, const Vector& z,
                               std::size_t projectors, std::size_t trials, std::uint64_t seed);

}  // namespace agc::theory
