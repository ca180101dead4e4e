#pragma once
// Exponential chart on hyperbolic m-space in the hyperboloid model: chart
// points, the moving orthonormal frame pushed forward from the center, the
// frame-component Jacobian of the chart map, and the frame Christoffel data
// obtained analytically from the derivative of the matrix exponential.

#include <hylab/expm.hpp>
#include <hylab/linalg.hpp>
#include <hylab/minkowski.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hylab {

namespace detail {
// U(V, W) = sum_k (-ad_V)^k W / (k+1)!  so that  d/dt exp(V + tW) |_{t=0}
// = exp(V) U(V, W).
inline Mat<double> dexp_factor(const Mat<double>& V, const Mat<double>& W) {
  Mat<double> term = W;
  Mat<double> sum = W;
  for (int k = 1; k < 80; ++k) {
    term = (term * V - V * term) * (1.0 / (k + 1));
    sum = sum + term;
    if (term.max_abs() < 1e-18) break;
  }
  return sum;
}
}  // namespace detail

struct CoreChart {
  int m;
  explicit CoreChart(int m_) : m(m_) {
    if (m < 2) throw std::invalid_argument("chart needs dimension at least 2");
  }

  // V(x) = sum_i x_i E_i in so(1, m).
  Mat<double> generator(const Vec<double>& x) const {
    Mat<double> V(m + 1, m + 1);
    for (int i = 1; i <= m; ++i) {
      V(0, i) = x.a[i - 1];
      V(i, 0) = x.a[i - 1];
    }
    return V;
  }

  Mat<double> g_of(const Vec<double>& x) const { return expm(generator(x)); }

  Vec<double> point(const Vec<double>& x) const {
    Vec<double> p0(m + 1);
    p0.a[0] = 1;
    return g_of(x).apply(p0);
  }

  // e_i(x): the chart isometry applied to the center frame.
  std::vector<Vec<double>> frame(const Vec<double>& x) const {
    auto g = g_of(x);
    std::vector<Vec<double>> e;
    for (int i = 1; i <= m; ++i) {
      Vec<double> ei(m + 1);
      ei.a[i] = 1;
      e.push_back(g.apply(ei));
    }
    return e;
  }

  // A(x)_{kl} = frame component k of the chart derivative along x_l.
  Mat<double> jacobian(const Vec<double>& x) const {
    auto V = generator(x);
    Mat<double> A(m, m);
    for (int l = 1; l <= m; ++l) {
      Mat<double> El(m + 1, m + 1);
      El(0, l) = 1;
      El(l, 0) = 1;
      auto U = detail::dexp_factor(V, El);
      for (int k = 1; k <= m; ++k) A(k - 1, l - 1) = U(k, 0);
    }
    return A;
  }

  Mat<double> jacobian_inverse(const Vec<double>& x) const {
    auto A = jacobian(x);
    Mat<double> inv(m, m);
    for (int j = 0; j < m; ++j) {
      Vec<double> ej(m);
      ej.a[j] = 1;
      auto col = lu_solve(A, ej);
      if (!col) throw std::runtime_error("chart Jacobian is singular");
      for (int i = 0; i < m; ++i) inv(i, j) = col->a[i];
    }
    return inv;
  }

  // c[j](i, k) = frame component k of the covariant derivative of e_i along
  // e_j; antisymmetric in (i, k).
  std::vector<Mat<double>> christoffels(const Vec<double>& x) const {
    auto V = generator(x);
    auto Ainv = jacobian_inverse(x);
    // raw[l](i, k) = component k of d e_i / d x_l, expressed at the center.
    std::vector<Mat<double>> raw;
    for (int l = 1; l <= m; ++l) {
      Mat<double> El(m + 1, m + 1);
      El(0, l) = 1;
      El(l, 0) = 1;
      auto U = detail::dexp_factor(V, El);
      Mat<double> rl(m, m);
      for (int i = 1; i <= m; ++i)
        for (int k = 1; k <= m; ++k) rl(i - 1, k - 1) = U(k, i);
      raw.push_back(rl);
    }
    std::vector<Mat<double>> c(m, Mat<double>(m, m));
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l)
        c[j] = c[j] + raw[l] * Ainv(l, j);
    return c;
  }

  // Riemannian volume density of the chart: sqrt(det A^T A).
  double sqrt_det_g(const Vec<double>& x) const {
    auto A = jacobian(x);
    Mat<double> G = A.transposed() * A;
    // Small symmetric positive matrix: Cholesky-free determinant via
    // elimination with partial pivoting.
    double det = 1;
    int n = G.rows;
    for (int c2 = 0; c2 < n; ++c2) {
      int piv = c2;
      for (int r2 = c2 + 1; r2 < n; ++r2)
        if (std::abs(G(r2, c2)) > std::abs(G(piv, c2))) piv = r2;
      if (piv != c2) {
        for (int k = 0; k < n; ++k) std::swap(G(piv, k), G(c2, k));
        det = -det;
      }
      det *= G(c2, c2);
      if (G(c2, c2) == 0) return 0;
      for (int r2 = c2 + 1; r2 < n; ++r2) {
        double f = G(r2, c2) / G(c2, c2);
        for (int k = c2; k < n; ++k) G(r2, k) -= f * G(c2, k);
      }
    }
    return std::sqrt(std::abs(det));
  }
};

// Poincare disk model maps for the hyperbolic plane (m = 2).
inline Vec<double> disk_to_hyperboloid(const Vec<double>& z) {
  double s = 1 - (z.a[0] * z.a[0] + z.a[1] * z.a[1]);
  Vec<double> p(3);
  p.a[0] = (2.0 - s) / s;
  p.a[1] = 2 * z.a[0] / s;
  p.a[2] = 2 * z.a[1] / s;
  return p;
}

inline Vec<double> hyperboloid_to_disk(const Vec<double>& p) {
  Vec<double> z(2);
  z.a[0] = p.a[1] / (1 + p.a[0]);
  z.a[1] = p.a[2] / (1 + p.a[0]);
  return z;
}

}  // namespace hylab
