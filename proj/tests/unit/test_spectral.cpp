#include <doctest.h>

#include <cmath>
#include <random>

#include "agc/spectral.hpp"
#include "agc/synthetic.hpp"
#include "oracles.hpp"

using namespace agc;

namespace {

// Frozen by an independent scripted evaluation of the HE formula on the P3
// fixture: arccosh(33/24 + 1).
constexpr double kHeP3 = 1.5105477504732074;
// Entrywise square sums on the same fixture.
constexpr double kRceP3Binary = 11.0;
constexpr double kRceP3Normalized = 7.75;
constexpr double kRceP3AgainstZero = 10.0;

Graph path3() {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  return Graph::from_edges(3, e, FeatureMatrix::Identity(3, 3));
}

Laplacian coarse_p3() {
  SparseMatrix a(2, 2);
  a.insert(0, 1) = 1.0;
  a.insert(1, 0) = 1.0;
  a.makeCompressed();
  return build_laplacian(a);
}

Laplacian from_dense(const DenseMatrix& d) { return Laplacian{d.sparseView()}; }

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

double ree_oracle(const std::vector<double>& a, const std::vector<double>& b, std::size_t k) {
  double sum = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] < 1e-8) continue;
    sum += std::abs(b[i] - a[i]) / a[i];
    ++used;
  }
  return sum / used;
}

}  // namespace

TEST_CASE("known spectra") {
  Vector p3 = eigenvalues_smallest(build_laplacian(path3()), 3);
  CHECK(std::abs(p3[0]) < 1e-8);
  CHECK(std::abs(p3[1] - 1.0) < 1e-8);
  CHECK(std::abs(p3[2] - 3.0) < 1e-8);

  std::vector<Edge> k4;
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j) k4.push_back({i, j});
  Vector ev = eigenvalues_smallest(build_laplacian(Graph::from_edges(4, k4, FeatureMatrix::Zero(4, 1))), 4);
  CHECK(std::abs(ev[0]) < 1e-8);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 4.0) < 1e-8);

  Vector top = laplacian_eigenvalues(build_laplacian(path3()), 1, SpectrumEnd::high);
  CHECK(std::abs(top[0] - 3.0) < 1e-8);
}

TEST_CASE("dense solver agrees with an independent Jacobi decomposition") {
  Graph g = synthetic::erdos_renyi(50, 0.15, 2, 2, 4);
  Laplacian lap = build_laplacian(g);
  std::vector<double> ref = oracle::jacobi_eigenvalues(oracle::dense_laplacian(oracle::dense_adjacency(g)));
  Vector got = eigenvalues_smallest(lap, 50);
  for (int i = 0; i < 50; ++i) {
    CHECK(std::abs(got[i] - ref[static_cast<std::size_t>(i)]) < 1e-8);
    CHECK(got[i] >= -1e-8);
  }
}

TEST_CASE("iterative solver agrees with the dense solver") {
  Graph g = synthetic::random_geometric({600, 4, 3, 8.0, 2});
  Laplacian lap = build_laplacian(g);
  for (SpectrumEnd end : {SpectrumEnd::low, SpectrumEnd::high}) {
    Vector dense = laplacian_eigenvalues(lap, 8, end);
    Vector iter = iterative_eigenvalues(lap, 8, end, 3);
    CHECK((dense - iter).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, dense.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("size guard") {
  Graph g = synthetic::erdos_renyi(30, 0.2, 2, 2, 1);
  EigenOptions small;
  small.dense_limit = 10;
  try {
    eigenvalues_smallest(build_laplacian(g), 3, small);
    FAIL("expected too_large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
  small.allow_iterative = true;
  Vector ev = eigenvalues_smallest(build_laplacian(g), 3, small);
  CHECK((ev - eigenvalues_smallest(build_laplacian(g), 3)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("relative eigen error") {
  Vector a(3), b(3);
  a << 0, 1, 3;
  b << 0, 2, 3;
  EigenErrorResult r = relative_eigen_error(a, b);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.skipped == 1);
  CHECK(r.k_used == 2);
  CHECK(relative_eigen_error(a, a).value == 0.0);
  try {
    relative_eigen_error(Vector::Zero(3), b);
    FAIL("expected all_zero_eigenvalues");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::all_zero_eigenvalues);
  }
}

TEST_CASE("relative eigen error matches a straight-line oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 4; ++trial) {
    Graph g = synthetic::erdos_renyi(40, 0.2, 2, 2, rng());
    CoarseningMatrix c = CoarseningMatrix::from_assignment(oracle::random_assignment(40, 20, rng));
    CoarsenedGraph cg = coarsen_graph(g, c);
    DenseMatrix cm = oracle::membership(c.assignment, 20);
    DenseMatrix ca = cm.transpose() * oracle::dense_adjacency(g) * cm;
    ca.diagonal().setZero();
    std::vector<double> ev = oracle::jacobi_eigenvalues(oracle::dense_laplacian(oracle::dense_adjacency(g)));
    std::vector<double> evc = oracle::jacobi_eigenvalues(oracle::dense_laplacian(ca));
    EigenErrorResult r = relative_eigen_error(build_laplacian(g), build_laplacian(cg.adjacency), 10);
    CHECK(std::abs(r.value - ree_oracle(ev, evc, 10)) < 1e-10);
  }
}

TEST_CASE("lifted Laplacian matches the dense product") {
  std::mt19937_64 rng(2);
  Graph g = synthetic::erdos_renyi(18, 0.3, 2, 2, 6);
  CoarseningMatrix c = CoarseningMatrix::from_assignment(oracle::random_assignment(18, 7, rng));
  Laplacian lc = build_laplacian(coarsen_graph(g, c).adjacency);
  DenseMatrix cm = oracle::membership(c.assignment, 7);
  DenseMatrix lcd = DenseMatrix(lc.matrix);
  LiftedLaplacian bin(c, lc, LiftMode::binary);
  CHECK((bin.to_dense() - cm * lcd * cm.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  DenseMatrix scaled = cm;
  for (Index s = 0; s < 7; ++s) scaled.col(s) /= c.sizes[static_cast<std::size_t>(s)];
  LiftedLaplacian norm(c, lc, LiftMode::normalized);
  CHECK((norm.to_dense() - scaled * lcd * scaled.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  FeatureMatrix x = FeatureMatrix::Random(18, 3);
  CHECK((DenseMatrix(bin.apply(x)) - bin.to_dense() * DenseMatrix(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("P3 fixture regression constants") {
  Graph g = path3();
  Laplacian lap = build_laplacian(g);
  CoarseningMatrix c = CoarseningMatrix::from_assignment({0, 0, 1});
  LiftedLaplacian bin(c, coarse_p3(), LiftMode::binary);
  CHECK(std::abs(hyperbolic_error(lap, bin, g.features()) - kHeP3) < 1e-12);
  CHECK(std::abs(reconstruction_error(lap, bin).raw - kRceP3Binary) < 1e-12);
  CHECK(std::abs(reconstruction_error(lap, bin).log10 - std::log10(kRceP3Binary)) < 1e-12);
  LiftedLaplacian norm(c, coarse_p3(), LiftMode::normalized);
  CHECK(std::abs(reconstruction_error(lap, norm).raw - kRceP3Normalized) < 1e-12);

  LiftedLaplacian zero(CoarseningMatrix::identity(3), from_dense(DenseMatrix::Zero(3, 3)));
  CHECK(reconstruction_error(lap, zero).raw == kRceP3AgainstZero);

  CoarsenedGraph cg = coarsen_graph(g, c);
  SpectralReport rep = spectral_report(g, cg, {3});
  REQUIRE(rep.he);
  CHECK(std::abs(*rep.he - kHeP3) < 1e-12);
  CHECK(rep.rce_raw == kRceP3Binary);
  CHECK(rep.k_used == 1);
  CHECK(rep.skipped == 1);
}

TEST_CASE("identity coarsening gives zero error") {
  Graph g = synthetic::random_geometric({80, 4, 3, 6.0, 1});
  CoarsenedGraph cg = coarsen_graph(g, CoarseningMatrix::identity(80));
  SpectralReport rep = spectral_report(g, cg);
  REQUIRE(rep.ree);
  REQUIRE(rep.he);
  CHECK(*rep.ree < 1e-9);
  CHECK(*rep.he < 1e-9);
  CHECK(rep.rce_raw < 1e-9);
  CHECK(std::isinf(rep.rce_log10));
}

TEST_CASE("reconstruction error matches the dense difference") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = synthetic::erdos_renyi(35, 0.2, 2, 2, rng());
    CoarseningMatrix c = CoarseningMatrix::from_assignment(oracle::random_assignment(35, 12, rng));
    Laplacian lc = build_laplacian(coarsen_graph(g, c).adjacency);
    Laplacian lap = build_laplacian(g);
    for (LiftMode mode : {LiftMode::binary, LiftMode::normalized}) {
      LiftedLaplacian lift(c, lc, mode);
      const double ref = (DenseMatrix(lap.matrix) - lift.to_dense()).squaredNorm();
      CHECK(std::abs(reconstruction_error(lap, lift).raw - ref) <= 1e-9 * ref);
    }
  }
}

TEST_CASE("constant features are degenerate") {
  Graph g = path3().with_features(FeatureMatrix::Constant(3, 1, 2.0));
  LiftedLaplacian lift(CoarseningMatrix::identity(3), build_laplacian(g));
  try {
    hyperbolic_error(build_laplacian(g), lift, g.features());
    FAIL("expected degenerate_features");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_features);
  }
  SpectralReport rep = spectral_report(g, coarsen_graph(g, CoarseningMatrix::identity(3)));
  CHECK_FALSE(rep.he);
  CHECK(rep.he_error);
}
