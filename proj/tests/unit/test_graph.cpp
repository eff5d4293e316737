#include <doctest.h>

#include <random>
#include <vector>

#include "agc/graph.hpp"
#include "oracles.hpp"

using namespace agc;

namespace {

Graph path3() {
  std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}};
  return Graph::from_edges(3, e, FeatureMatrix::Identity(3, 3));
}

Graph random_graph(Index n, double p, std::uint64_t seed, bool labels = false) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j, w(rng)});
  std::optional<std::vector<Label>> y;
  if (labels) {
    y.emplace();
    std::uniform_int_distribution<int> cls(0, 2);
    for (Index i = 0; i < n; ++i) y->push_back(cls(rng));
  }
  return Graph::from_edges(n, edges, FeatureMatrix::Zero(n, 2), y);
}

}  // namespace

TEST_CASE("Laplacian of the path on three nodes") {
  DenseMatrix l = DenseMatrix(build_laplacian(path3()).matrix);
  DenseMatrix expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((l - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Laplacian of an edgeless graph is zero") {
  Graph g = Graph::from_edges(3, {}, FeatureMatrix::Zero(3, 1));
  DenseMatrix l = DenseMatrix(build_laplacian(g).matrix);
  CHECK(l.rows() == 3);
  CHECK(l.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Laplacian matches the dense D minus A oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Graph g = random_graph(20, 0.3, seed);
    DenseMatrix l = DenseMatrix(build_laplacian(g).matrix);
    DenseMatrix ref = oracle::dense_laplacian(oracle::dense_adjacency(g));
    CHECK((l - ref).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("edge loading symmetrizes, deduplicates and drops self loops") {
  std::vector<Edge> e{{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 1.5}, {2, 2, 4.0}, {1, 2, 0.0}};
  Graph g = Graph::from_edges(3, e, FeatureMatrix::Zero(3, 1));
  CHECK(g.edge_count() == 1);
  CHECK(g.dropped_self_loops() == 1);
  CHECK(g.adjacency().coeff(0, 1) == doctest::Approx(3.0));
  CHECK(g.adjacency().coeff(1, 0) == doctest::Approx(3.0));
  CHECK(g.adjacency().coeff(2, 2) == 0.0);
  CHECK(g.total_edge_weight() == doctest::Approx(3.0));
}

TEST_CASE("edge loading rejects bad input") {
  std::vector<Edge> out_of_range{{0, 3, 1.0}};
  std::vector<Edge> negative{{0, 1, -1.0}};
  std::vector<Edge> nan{{0, 1, std::numeric_limits<double>::quiet_NaN()}};
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;
  };
  CHECK(code([&] { Graph::from_edges(3, out_of_range, FeatureMatrix::Zero(3, 1)); }) ==
        ErrorCode::invalid_graph);
  CHECK(code([&] { Graph::from_edges(3, negative, FeatureMatrix::Zero(3, 1)); }) ==
        ErrorCode::invalid_graph);
  CHECK(code([&] { Graph::from_edges(3, nan, FeatureMatrix::Zero(3, 1)); }) ==
        ErrorCode::invalid_graph);
  CHECK(code([&] { Graph::from_edges(3, {}, FeatureMatrix::Zero(2, 1)); }) ==
        ErrorCode::invalid_graph);
  CHECK(code([&] { Graph::from_edges(3, {}, FeatureMatrix::Zero(3, 1), std::vector<Label>{1}); }) ==
        ErrorCode::invalid_graph);
}

TEST_CASE("from_adjacency rejects asymmetric matrices") {
  SparseMatrix a(2, 2);
  a.insert(0, 1) = 1.0;
  a.makeCompressed();
  CHECK_THROWS_AS(Graph::from_adjacency(a, FeatureMatrix::Zero(2, 1)), Error);
}

TEST_CASE("heterophily factor") {
  std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  Graph same = Graph::from_edges(3, tri, FeatureMatrix::Zero(3, 1), std::vector<Label>{4, 4, 4});
  Graph alternating =
      Graph::from_edges(4, cycle, FeatureMatrix::Zero(4, 1), std::vector<Label>{0, 1, 0, 1});
  CHECK(heterophily_factor(same) == 0.0);
  CHECK(heterophily_factor(alternating) == 1.0);

  SUBCASE("weight scaling does not change it") {
    Graph g = random_graph(40, 0.2, 11, true);
    std::vector<Edge> scaled = g.edges();
    for (Edge& e : scaled) e.weight *= 7.5;
    Graph h = Graph::from_edges(40, scaled, g.features(), g.labels());
    const double a = heterophily_factor(g);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(heterophily_factor(h) == a);
  }

  SUBCASE("errors") {
    Graph unlabeled = Graph::from_edges(3, tri, FeatureMatrix::Zero(3, 1));
    Graph empty = Graph::from_edges(3, {}, FeatureMatrix::Zero(3, 1), std::vector<Label>{0, 1, 0});
    try {
      heterophily_factor(unlabeled);
      FAIL("expected missing_labels");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::missing_labels);
    }
    try {
      heterophily_factor(empty);
      FAIL("expected empty_graph");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::empty_graph);
    }
  }
}

TEST_CASE("column standardization") {
  FeatureMatrix x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  FeatureMatrix z = standardize_columns(x);
  CHECK(z.col(0).mean() == doctest::Approx(0.0));
  CHECK(z.col(1).cwiseAbs().maxCoeff() == 0.0);
}
