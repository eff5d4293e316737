#include "agc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

namespace agc {

SpectrumEnd parse_spectrum_end(std::string_view name) {
  if (name == "low") return SpectrumEnd::low;
  if (name == "high") return SpectrumEnd::high;
  throw Error(ErrorCode::invalid_params, "spectrum end must be `low` or `high`");
}

LiftMode parse_lift_mode(std::string_view name) {
  if (name == "binary") return LiftMode::binary;
  if (name == "normalized") return LiftMode::normalized;
  throw Error(ErrorCode::invalid_params, "lift mode must be `binary` or `normalized`");
}

namespace {

Vector pick_end(const Vector& ascending, Index k, SpectrumEnd end) {
  if (end == SpectrumEnd::low) return ascending.head(k);
  return ascending.tail(k);
}

}  // namespace

Vector iterative_eigenvalues(const Laplacian& lap, Index k, SpectrumEnd end, std::uint64_t seed) {
  const Index n = lap.size();
  const SparseMatrix& l = lap.matrix;
  if (k <= 0) return Vector(0);
  const Index block = std::min<Index>(n, k + std::max<Index>(k, 10));

  double max_diag = 0.0;
  for (Index i = 0; i < n; ++i) max_diag = std::max(max_diag, l.coeff(i, i));
  max_diag = std::max(max_diag, 1.0);

  // Both ends use a positive definite shifted operator: L + s I for the low
  // end, s I - L for the high end (Gershgorin gives lambda_max <= 2 d_max).
  using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;
  ColMajor shifted = end == SpectrumEnd::low ? ColMajor(l) : ColMajor(-l);
  const double shift = end == SpectrumEnd::low ? 1e-3 * max_diag : 2.0 * max_diag * (1.0 + 1e-6);
  for (Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<ColMajor> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) {
    throw Error(ErrorCode::invalid_params, "shift-invert factorization failed");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix x(n, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);

  const double tolerance = 1e-10 * 2.0 * max_diag;
  Vector theta;
  for (int iteration = 0; iteration < 5000; ++iteration) {
    const DenseMatrix y = ldlt.solve(x);
    Eigen::HouseholderQR<DenseMatrix> qr(y);
    const DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, block);
    const DenseMatrix lq = l * q;
    const DenseMatrix h = q.transpose() * lq;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> ritz(0.5 * (h + h.transpose()));
    x = q * ritz.eigenvectors();
    theta = ritz.eigenvalues();
    const DenseMatrix residual = lq * ritz.eigenvectors() - x * theta.asDiagonal();
    const Index first = end == SpectrumEnd::low ? 0 : block - k;
    bool converged = true;
    for (Index j = first; j < first + k && converged; ++j) {
      converged = residual.col(j).norm() <= tolerance;
    }
    if (converged) break;
  }
  return pick_end(theta, k, end);
}

Vector laplacian_eigenvalues(const Laplacian& lap, Index k, SpectrumEnd end,
                             const EigenOptions& options) {
  const Index n = lap.size();
  if (k < 0 || k > n) {
    throw Error(ErrorCode::invalid_params,
                "k = " + std::to_string(k) + " exceeds matrix size " + std::to_string(n));
  }
  if (k == 0) return Vector();
  if (n > options.dense_limit) {
    if (!options.allow_iterative) {
      throw Error(ErrorCode::too_large, "N = " + std::to_string(n) + " exceeds the dense eigensolver limit " +
                                            std::to_string(options.dense_limit));
    }
    return iterative_eigenvalues(lap, k, end, options.seed);
  }
  const DenseMatrix dense = DenseMatrix(lap.matrix);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::invalid_params, "dense eigensolver did not converge");
  }
  return pick_end(solver.eigenvalues(), k, end);
}

EigenErrorResult relative_eigen_error(const Vector& original, const Vector& coarse) {
  if (original.size() != coarse.size()) {
    throw Error(ErrorCode::dimension_mismatch, "eigenvalue vectors differ in length");
  }
  EigenErrorResult r;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < original.size(); ++i) {
    if (original[i] < kZeroEigenvalue) {
      ++r.skipped;
      continue;
    }
    sum += std::abs(coarse[i] - original[i]) / original[i];
    ++r.k_used;
  }
  if (r.k_used == 0) {
    throw Error(ErrorCode::all_zero_eigenvalues, "no nonzero eigenvalue left to compare");
  }
  r.value = sum / static_cast<double>(r.k_used);
  return r;
}

EigenErrorResult relative_eigen_error(const Laplacian& original, const Laplacian& coarse, Index k,
                                      SpectrumEnd end, const EigenOptions& options) {
  if (k > coarse.size()) {
    throw Error(ErrorCode::invalid_params, "k exceeds the number of supernodes");
  }
  return relative_eigen_error(laplacian_eigenvalues(original, k, end, options),
                              laplacian_eigenvalues(coarse, k, end, options));
}

LiftedLaplacian::LiftedLaplacian(CoarseningMatrix partition, Laplacian coarse, LiftMode mode)
    : partition_(std::move(partition)), coarse_(std::move(coarse)), mode_(mode) {
  if (coarse_.size() != partition_.num_supernodes) {
    throw Error(ErrorCode::size_mismatch, "coarse Laplacian size does not match supernode count");
  }
}

double LiftedLaplacian::column_scale(Index s) const {
  return mode_ == LiftMode::binary ? 1.0
                                   : 1.0 / static_cast<double>(partition_.sizes[static_cast<std::size_t>(s)]);
}

double LiftedLaplacian::entry(Index i, Index j) const {
  const Index a = partition_.assignment[static_cast<std::size_t>(i)];
  const Index b = partition_.assignment[static_cast<std::size_t>(j)];
  return column_scale(a) * column_scale(b) * coarse_.matrix.coeff(a, b);
}

FeatureMatrix LiftedLaplacian::apply(const FeatureMatrix& x) const {
  FeatureMatrix pooled = FeatureMatrix::Zero(partition_.num_supernodes, x.cols());
  for (Index i = 0; i < size(); ++i) {
    pooled.row(partition_.assignment[static_cast<std::size_t>(i)]) += x.row(i);
  }
  for (Index s = 0; s < partition_.num_supernodes; ++s) pooled.row(s) *= column_scale(s);
  const FeatureMatrix mixed = coarse_.matrix * pooled;
  FeatureMatrix out(size(), x.cols());
  for (Index i = 0; i < size(); ++i) {
    const Index a = partition_.assignment[static_cast<std::size_t>(i)];
    out.row(i) = column_scale(a) * mixed.row(a);
  }
  return out;
}

DenseMatrix LiftedLaplacian::to_dense() const {
  DenseMatrix out(size(), size());
  for (Index i = 0; i < size(); ++i) {
    for (Index j = 0; j < size(); ++j) out(i, j) = entry(i, j);
  }
  return out;
}

double hyperbolic_error(const Laplacian& lap, const LiftedLaplacian& lift, const FeatureMatrix& x) {
  if (lap.size() != lift.size() || x.rows() != lap.size()) {
    throw Error(ErrorCode::dimension_mismatch, "Laplacian, lift and features disagree in size");
  }
  const FeatureMatrix lx = lap.matrix * x;
  const FeatureMatrix lift_x = lift.apply(x);
  const double trace_original = x.cwiseProduct(lx).sum();
  const double trace_lifted = x.cwiseProduct(lift_x).sum();
  if (trace_original <= 1e-12 || trace_lifted <= 1e-12) {
    throw Error(ErrorCode::degenerate_features,
                "tr(X^T L X) or tr(X^T L_lift X) is not positive; features are constant on components");
  }
  const double argument =
      (lx - lift_x).squaredNorm() * x.squaredNorm() / (2.0 * trace_original * trace_lifted) + 1.0;
  if (!(argument >= 1.0)) {
    throw Error(ErrorCode::degenerate_features, "arccosh argument fell below 1");
  }
  return std::acosh(argument);
}

ReconstructionError reconstruction_error(const Laplacian& lap, const LiftedLaplacian& lift) {
  if (lap.size() != lift.size()) {
    throw Error(ErrorCode::dimension_mismatch, "Laplacian and lift differ in size");
  }
  const auto& assignment = lift.partition().assignment;
  const auto n_coarse = static_cast<std::uint64_t>(lift.partition().num_supernodes);
  // Entries where L is stored are compared directly; everywhere else L is 0 and
  // the lifted block value is counted (block size - stored entries) times.
  std::unordered_map<std::uint64_t, std::int64_t> stored_per_block;
  double raw = 0.0;
  for (Index i = 0; i < lap.size(); ++i) {
    const auto a = static_cast<std::uint64_t>(assignment[static_cast<std::size_t>(i)]);
    for (SparseMatrix::InnerIterator it(lap.matrix, i); it; ++it) {
      const auto b = static_cast<std::uint64_t>(assignment[static_cast<std::size_t>(it.col())]);
      const double diff = it.value() - lift.entry(i, it.col());
      raw += diff * diff;
      ++stored_per_block[a * n_coarse + b];
    }
  }
  const auto& coarse = lift.coarse().matrix;
  const auto& sizes = lift.partition().sizes;
  for (Index a = 0; a < coarse.rows(); ++a) {
    for (SparseMatrix::InnerIterator it(coarse, a); it; ++it) {
      const Index b = it.col();
      const double value = lift.column_scale(a) * lift.column_scale(b) * it.value();
      const auto found = stored_per_block.find(static_cast<std::uint64_t>(a) * n_coarse +
                                               static_cast<std::uint64_t>(b));
      const std::int64_t stored = found == stored_per_block.end() ? 0 : found->second;
      const auto block = static_cast<std::int64_t>(sizes[static_cast<std::size_t>(a)]) *
                         static_cast<std::int64_t>(sizes[static_cast<std::size_t>(b)]);
      raw += static_cast<double>(block - stored) * value * value;
    }
  }
  return {raw, raw > 0.0 ? std::log10(raw) : -std::numeric_limits<double>::infinity()};
}

SpectralReport spectral_report(const Graph& original, const CoarsenedGraph& coarse,
                               const SpectralOptions& options) {
  const Laplacian lap = build_laplacian(original);
  Laplacian lap_c = build_laplacian(coarse.adjacency);
  SpectralReport report;

  const Index k = std::min<Index>(options.k, coarse.num_supernodes);
  if (k < 1) throw Error(ErrorCode::invalid_params, "k must be at least 1");
  const Vector eig = laplacian_eigenvalues(lap, k, options.end, options.eigen);
  const Vector eig_c = laplacian_eigenvalues(lap_c, k, options.end, options.eigen);
  try {
    const auto r = relative_eigen_error(eig, eig_c);
    report.ree = r.value;
    report.k_used = r.k_used;
    report.skipped = r.skipped;
  } catch (const Error& e) {
    report.ree_error = e.what();
    report.skipped = static_cast<Index>(k);
  }

  const LiftedLaplacian lift(coarse.partition, std::move(lap_c), options.lift);
  try {
    report.he = hyperbolic_error(lap, lift, original.features());
  } catch (const Error& e) {
    report.he_error = e.what();
  }
  const auto rce = reconstruction_error(lap, lift);
  report.rce_raw = rce.raw;
  report.rce_log10 = rce.log10;
  return report;
}

}  // namespace agc
