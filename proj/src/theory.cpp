#include "agc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "agc/lsh.hpp"
#include "agc/schedule.hpp"
#include "agc/seed.hpp"

namespace agc::theory {

namespace {

double binomial_sigma(double p, std::size_t trials) {
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

void require_trials(std::size_t trials) {
  if (trials == 0) throw Error(ErrorCode::invalid_params, "trials must be at least 1");
}

}  // namespace

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double load_balance_bound(std::size_t n, std::size_t k, double c) {
  if (k < 1 || k > n || !(c > 0.0)) {
    throw Error(ErrorCode::invalid_params, "load balance bound needs 1 <= k <= n and c > 0");
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return nn / kk + nn * (std::log(kk) + c) / kk;
}

BoundCheck validate_load_balance(std::size_t n, std::size_t k, double c, std::size_t trials,
                                 std::uint64_t seed) {
  require_trials(trials);
  const double bound = load_balance_bound(n, k, c);
  const NodeOrder ring = NodeOrder::identity(static_cast<Index>(n));
  std::size_t within = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto schedule = MergeSchedule::build(ring, static_cast<Index>(k), mix_seed(seed, t));
    const auto partition = schedule.partition_after(schedule.merges().size());
    const Index largest = *std::max_element(partition.sizes.begin(), partition.sizes.end());
    if (static_cast<double>(largest) <= bound) ++within;
  }
  BoundCheck check;
  check.name = "load_balance";
  check.params = {{"n", static_cast<double>(n)},
                  {"k", static_cast<double>(k)},
                  {"c", c},
                  {"bound", bound}};
  check.trials = trials;
  check.empirical = static_cast<double>(within) / static_cast<double>(trials);
  check.analytic = 1.0 - std::exp(-c);
  check.sigma = binomial_sigma(check.analytic, trials);
  check.tolerance = 3.0 * check.sigma;
  check.pass = check.empirical >= check.analytic - check.tolerance;
  return check;
}

Proximity proximity_probability(double eps, std::size_t projectors, double dist) {
  if (!(eps >= 0.0) || projectors < 1 || !(dist >= 0.0)) {
    throw Error(ErrorCode::invalid_params, "proximity needs eps >= 0, l >= 1, dist >= 0");
  }
  if (dist == 0.0) return {1.0, true};
  return {std::erf(eps / (std::sqrt(2.0 * static_cast<double>(projectors)) * dist)), false};
}

std::vector<double> sample_projection_gaps(const Vector& x, const Vector& y, std::size_t projectors,
                                           std::size_t trials, std::uint64_t seed) {
  if (x.size() != y.size()) throw Error(ErrorCode::dimension_mismatch, "x and y differ in length");
  const Vector diff = x - y;
  std::vector<double> gaps(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    // h(x) - h(y) = (sum_j r_j)^T (x - y): the column sums of a fresh W.
    const auto p = sample_projections(diff.size(), static_cast<Eigen::Index>(projectors),
                                      mix_seed(seed, t));
    gaps[t] = (p.weights.transpose() * diff).sum();
  }
  return gaps;
}

BoundCheck validate_proximity(const Vector& x, const Vector& y, std::size_t projectors, double eps,
                              std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const double dist = (x - y).norm();
  if (dist == 0.0) throw Error(ErrorCode::degenerate_input, "x and y coincide");
  const auto gaps = sample_projection_gaps(x, y, projectors, trials, seed);
  const auto within = std::count_if(gaps.begin(), gaps.end(),
                                    [&](double g) { return std::abs(g) <= eps; });
  BoundCheck check;
  check.name = "proximity";
  check.params = {{"dist", dist}, {"projectors", static_cast<double>(projectors)}, {"eps", eps}};
  check.trials = trials;
  check.empirical = static_cast<double>(within) / static_cast<double>(trials);
  check.analytic = proximity_probability(eps, projectors, dist).probability;
  check.sigma = binomial_sigma(check.analytic, trials);
  check.tolerance = std::max(0.01, 3.0 * check.sigma);
  check.pass = std::abs(check.empirical - check.analytic) <= check.tolerance;
  return check;
}

VarianceCheck validate_gap_variance(const Vector& x, const Vector& y, std::size_t projectors,
                                    std::size_t trials, std::uint64_t seed,
                                    double relative_tolerance) {
  if (trials < 2) throw Error(ErrorCode::invalid_params, "variance needs at least 2 trials");
  const double dist = (x - y).norm();
  if (dist == 0.0) throw Error(ErrorCode::degenerate_input, "x and y coincide");
  const auto gaps = sample_projection_gaps(x, y, projectors, trials, seed);
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double g : gaps) ss += (g - mean) * (g - mean);
  VarianceCheck v;
  v.sample_variance = ss / static_cast<double>(trials - 1);
  v.expected_variance = static_cast<double>(projectors) * dist * dist;
  v.relative_error = std::abs(v.sample_variance - v.expected_variance) / v.expected_variance;
  v.pass = v.relative_error <= relative_tolerance;
  return v;
}

std::vector<CurvePoint> proximity_curve(const Vector& x, const Vector& y, std::size_t projectors,
                                        const std::vector<double>& eps_values, std::size_t trials,
                                        std::uint64_t seed) {
  require_trials(trials);
  const double dist = (x - y).norm();
  if (dist == 0.0) throw Error(ErrorCode::degenerate_input, "x and y coincide");
  auto gaps = sample_projection_gaps(x, y, projectors, trials, seed);
  for (double& g : gaps) g = std::abs(g);
  std::sort(gaps.begin(), gaps.end());
  std::vector<CurvePoint> out;
  out.reserve(eps_values.size());
  for (double eps : eps_values) {
    const auto within = std::upper_bound(gaps.begin(), gaps.end(), eps) - gaps.begin();
    out.push_back({eps, static_cast<double>(within) / static_cast<double>(trials),
                   proximity_probability(eps, projectors, dist).probability});
  }
  return out;
}

double separation_bound(const Vector& x, const Vector& y, const Vector& z, std::size_t projectors) {
  if (projectors < 1) throw Error(ErrorCode::invalid_params, "need at least one projector");
  const double far = (x - z).norm();
  if (far == 0.0) throw Error(ErrorCode::zero_distance, "x and z coincide");
  return standard_normal_cdf((x - y).norm() / (std::sqrt(static_cast<double>(projectors)) * far));
}

BoundCheck validate_separation(const Vector& x, const Vector& y, const Vector& z,
                               std::size_t projectors, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  if (x.size() != y.size() || x.size() != z.size()) {
    throw Error(ErrorCode::dimension_mismatch, "x, y, z differ in length");
  }
  const double bound = separation_bound(x, y, z, projectors);
  std::size_t between = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto p = sample_projections(x.size(), static_cast<Eigen::Index>(projectors),
                                      mix_seed(seed, t));
    const Vector r = p.weights.rowwise().sum();
    const double hx = r.dot(x);
    const double hy = r.dot(y);
    const double hz = r.dot(z);
    if (std::min(hx, hy) < hz && hz < std::max(hx, hy)) ++between;
  }
  BoundCheck check;
  check.name = "separation";
  check.params = {{"near", (x - y).norm()},
                  {"far", (x - z).norm()},
                  {"projectors", static_cast<double>(projectors)}};
  check.trials = trials;
  check.empirical = static_cast<double>(between) / static_cast<double>(trials);
  check.analytic = bound;
  check.sigma = binomial_sigma(bound, trials);
  check.tolerance = 3.0 * check.sigma;
  check.pass = check.empirical <= check.analytic + check.tolerance;
  return check;
}

}  // namespace agc::theory
