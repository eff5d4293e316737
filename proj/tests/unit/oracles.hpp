// Dense, straight-line reference computations used only by tests. Nothing
// here calls into the sparse/factored code paths under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "agc/graph.hpp"
#include "agc/schedule.hpp"

namespace agc::oracle {

inline DenseMatrix dense_adjacency(const Graph& g) {
  DenseMatrix a = DenseMatrix::Zero(g.num_nodes(), g.num_nodes());
  for (const Edge& e : g.edges()) {
    a(e.src, e.dst) = e.weight;
    a(e.dst, e.src) = e.weight;
  }
  return a;
}

inline DenseMatrix dense_laplacian(const DenseMatrix& a) {
  DenseMatrix l = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double d = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) d += a(i, j);
    l(i, i) = d - a(i, i);
  }
  return l;
}

inline DenseMatrix membership(const std::vector<Index>& assignment, Index n) {
  DenseMatrix c = DenseMatrix::Zero(static_cast<Eigen::Index>(assignment.size()), n);
  for (std::size_t i = 0; i < assignment.size(); ++i) c(static_cast<Eigen::Index>(i), assignment[i]) = 1.0;
  return c;
}

/// Explicit F = [(1 - alpha) X | alpha A], then F W + b, then row means.
inline Vector dense_scores(const FeatureMatrix& x, const DenseMatrix& a, double alpha,
                           const DenseMatrix& w, const Vector& b) {
  DenseMatrix f(x.rows(), x.cols() + a.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) f(i, j) = (1.0 - alpha) * x(i, j);
    for (Eigen::Index j = 0; j < a.cols(); ++j) f(i, x.cols() + j) = alpha * a(i, j);
  }
  Vector out(x.rows());
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
      double s = b[k];
      for (Eigen::Index j = 0; j < f.cols(); ++j) s += f(i, j) * w(j, k);
      total += s;
    }
    out[i] = total / static_cast<double>(w.cols());
  }
  return out;
}

/// Cyclic Jacobi eigenvalue iteration, ascending.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix m) {
  const Eigen::Index n = m.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-26) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Uniform random surjective assignment onto `n` supernodes.
inline std::vector<Index> random_assignment(Index num_nodes, Index n, std::mt19937_64& rng) {
  std::vector<Index> a(static_cast<std::size_t>(num_nodes));
  for (Index i = 0; i < num_nodes; ++i) a[static_cast<std::size_t>(i)] = i < n ? i : 0;
  std::uniform_int_distribution<Index> pick(0, n - 1);
  for (Index i = n; i < num_nodes; ++i) a[static_cast<std::size_t>(i)] = pick(rng);
  std::shuffle(a.begin(), a.end(), rng);
  return a;
}

}  // namespace agc::oracle
