#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "agc/coarsen.hpp"
#include "agc/graph.hpp"
#include "agc/schedule.hpp"

namespace agc {

enum class SpectrumEnd { low, high };
SpectrumEnd parse_spectrum_end(std::string_view name);

struct EigenOptions {
  /// Largest N handled by the dense symmetric solver.
  Index dense_limit = 4000;
  /// Permits the iterative eigensolver above dense_limit.
  bool allow_iterative = false;
  std::uint64_t seed = 0;
};

/// k eigenvalues from one end of the spectrum, ascending. Throws too_large
/// when N > dense_limit and the iterative path is not allowed.
Vector laplacian_eigenvalues(const Laplacian& lap, Index k, SpectrumEnd end,
                             const EigenOptions& options = {});

inline Vector eigenvalues_smallest(const Laplacian& lap, Index k, const EigenOptions& options = {}) {
  return laplacian_eigenvalues(lap, k, SpectrumEnd::low, options);
}

/// Block subspace iteration with Rayleigh-Ritz on a shift-inverted operator.
/// Handles repeated eigenvalues (e.g. several zeros on a disconnected graph).
Vector iterative_eigenvalues(const Laplacian& lap, Index k, SpectrumEnd end, std::uint64_t seed);

struct EigenErrorResult {
  double value = 0.0;
  Index k_used = 0;
  Index skipped = 0;
};

/// Eigenvalues below this are skipped from the relative error sum.
inline constexpr double kZeroEigenvalue = 1e-8;

/// mean_i |coarse_i - original_i| / original_i over pairs whose original
/// eigenvalue is at least kZeroEigenvalue. Throws all_zero_eigenvalues if no
/// pair remains.
EigenErrorResult relative_eigen_error(const Vector& original, const Vector& coarse);

EigenErrorResult relative_eigen_error(const Laplacian& original, const Laplacian& coarse, Index k,
                                      SpectrumEnd end = SpectrumEnd::low,
                                      const EigenOptions& options = {});

enum class LiftMode { binary, normalized };
LiftMode parse_lift_mode(std::string_view name);

/// L_lift = C L_c C^T, held in factored form. With LiftMode::normalized the
/// columns of C are scaled by 1 / supernode size.
class LiftedLaplacian {
 public:
  LiftedLaplacian(CoarseningMatrix partition, Laplacian coarse, LiftMode mode = LiftMode::binary);

  Index size() const noexcept { return partition_.num_nodes(); }
  const CoarseningMatrix& partition() const noexcept { return partition_; }
  const Laplacian& coarse() const noexcept { return coarse_; }
  LiftMode mode() const noexcept { return mode_; }

  /// Scale of supernode s in C (1 or 1 / size).
  double column_scale(Index s) const;
  double entry(Index i, Index j) const;
  FeatureMatrix apply(const FeatureMatrix& x) const;
  DenseMatrix to_dense() const;

 private:
  CoarseningMatrix partition_;
  Laplacian coarse_;
  LiftMode mode_;
};

/// arccosh(||(L - L_lift) X||_F^2 ||X||_F^2 / (2 tr(X^T L X) tr(X^T L_lift X)) + 1).
/// Throws degenerate_features when either trace is at most 1e-12.
double hyperbolic_error(const Laplacian& lap, const LiftedLaplacian& lift, const FeatureMatrix& x);

struct ReconstructionError {
  double raw = 0.0;
  double log10 = 0.0;
};

/// ||L - L_lift||_F^2 and its base-10 logarithm (-inf when raw is 0).
ReconstructionError reconstruction_error(const Laplacian& lap, const LiftedLaplacian& lift);

struct SpectralOptions {
  Index k = 10;
  SpectrumEnd end = SpectrumEnd::low;
  LiftMode lift = LiftMode::binary;
  EigenOptions eigen;
};

struct SpectralReport {
  std::optional<double> ree;
  std::optional<double> he;
  double rce_raw = 0.0;
  double rce_log10 = 0.0;
  Index k_used = 0;
  Index skipped = 0;
  std::optional<std::string> ree_error;
  std::optional<std::string> he_error;
};

/// L_c is built from the coarsened adjacency (self weights excluded). REE and
/// HE failures are recorded in the report; a too_large eigen problem throws.
SpectralReport spectral_report(const Graph& original, const CoarsenedGraph& coarse,
                               const SpectralOptions& options = {});

}  // namespace agc
