// The hyperboloid model of hyperbolic n-space inside Minkowski space
// R^{1,n} with bilinear form J = diag(-1, 1, ..., 1):
//   points      <x,x> = -1, x_0 > 0
//   isometries  g^T J g = J with g_{00} >= 1 (orthochronous)
//   algebra     X^T J + J X = 0
// Everything here is generic over the scalar backend; the rational
// instantiation is exact, which the identity tests rely on.
#pragma once

#include <hylab/linalg.hpp>
#include <hylab/rng.hpp>

#include <cmath>
#include <stdexcept>

namespace hylab {

template <class S>
Mat<S> minkowski_J(int n) {
  Mat<S> J = Mat<S>::identity(n + 1);
  J(0, 0) = S(-1);
  return J;
}

template <class S>
S mink(const Mat<S>& J, const Vec<S>& x, const Vec<S>& y) {
  S s = scalar_traits<S>::zero();
  for (int i = 0; i <= J.rows - 1; ++i) s += J(i, i) * x.a[i] * y.a[i];
  return s;
}

template <class S>
Vec<S> basepoint(int n) {
  Vec<S> x(n + 1);
  x.a[0] = scalar_traits<S>::one();
  return x;
}

template <class S>
bool is_hpoint(const Mat<S>& J, const Vec<S>& x, double tol = 0) {
  double res = scalar_traits<S>::magnitude(mink(J, x, x) + scalar_traits<S>::one());
  return res <= tol && to_double(x.a[0]) > 0;
}

template <class S>
double isometry_residual(const Mat<S>& g) {
  auto J = minkowski_J<S>(g.rows - 1);
  return (g.transposed() * J * g - J).max_abs();
}

template <class S>
double algebra_residual(const Mat<S>& X) {
  auto J = minkowski_J<S>(X.rows - 1);
  return (X.transposed() * J + J * X).max_abs();
}

// For g in O(1,n): g^{-1} = J g^T J, exact in any backend.
template <class S>
Mat<S> isometry_inverse(const Mat<S>& g) {
  auto J = minkowski_J<S>(g.rows - 1);
  return J * g.transposed() * J;
}

inline double distance(const Mat<double>& J, const Vec<double>& x,
                       const Vec<double>& y) {
  double c = -mink(J, x, y);
  return std::acosh(std::max(1.0, c));
}

template <class S>
Mat<S> bracket(const Mat<S>& X, const Mat<S>& Y) {
  return X * Y - Y * X;
}

// Generator of the one-parameter translation group through p with
// initial velocity v (a tangent vector at p):  V = p v^T J - v p^T J.
// Then V p = v, V lies in the algebra, and the construction commutes
// with every isometry.
template <class S>
Mat<S> infinitesimal_translation(const Vec<S>& p, const Vec<S>& v) {
  int n1 = p.size();
  auto J = minkowski_J<S>(n1 - 1);
  Mat<S> V(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      V(i, j) = (p.a[i] * v.a[j] - v.a[i] * p.a[j]) * J(j, j);
  return V;
}

// Generator of the rotation at p spanned by the tangent pair (v, w):
// R = v w^T J - w v^T J.  It kills p and maps w to v <w,w> - w <v,w>;
// for orthonormal (v, w) it takes w to v.
template <class S>
Mat<S> infinitesimal_rotation(const Vec<S>& p, const Vec<S>& v,
                              const Vec<S>& w) {
  (void)p;  // present for the record: the generator is attached to p
  int n1 = v.size();
  auto J = minkowski_J<S>(n1 - 1);
  Mat<S> R(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      R(i, j) = (v.a[i] * w.a[j] - w.a[i] * v.a[j]) * J(j, j);
  return R;
}

// ---------------------------------------------------------------------------
// Invariant fiber metric on the algebra bundle.
//
// With S(p) = J + 2 p p^T (so S(x0) = Id and S(gp) = g S(p) g^T) put
//   <X, Y>_p = 1/2 tr(X S(p) Y^T S(p)^{-1}).
// At the base point this is the plain positive form tr(X Y^T)/2, and the
// conjugation identity above makes it isometry invariant.

template <class S>
Mat<S> metric_factor(const Vec<S>& p) {
  int n1 = p.size();
  auto M = minkowski_J<S>(n1 - 1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) M(i, j) += S(2) * p.a[i] * p.a[j];
  return M;
}

template <class S>
Mat<S> metric_factor_inverse(const Vec<S>& p) {
  // S^{-1} = J S J = J + 2 (Jp)(Jp)^T.
  int n1 = p.size();
  auto J = minkowski_J<S>(n1 - 1);
  return J * metric_factor(p) * J;
}

template <class S>
S bundle_metric(const Vec<S>& p, const Mat<S>& X, const Mat<S>& Y) {
  auto M = metric_factor(p);
  auto Minv = metric_factor_inverse(p);
  return (X * M * Y.transposed() * Minv).trace() / S(2);
}

// ---------------------------------------------------------------------------
// Exact rational constructions.

// Point reflection through u / |u| (u timelike), as a rational matrix:
// x -> -x + 2 (<x,u>/<u,u>) u.  (The +2 makes the cross terms cancel
// against <u,u> < 0; it fixes u and is an isometry for any timelike u.)
template <class S>
Mat<S> point_reflection(const Vec<S>& u) {
  int n1 = u.size();
  auto J = minkowski_J<S>(n1 - 1);
  S uu = mink(J, u, u);
  Mat<S> R(n1, n1);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j)
      R(i, j) = S(2) * u.a[i] * J(j, j) * u.a[j] / uu;
    R(i, i) -= scalar_traits<S>::one();
  }
  return R;
}

// The transvection carrying the base point to p (rational for rational
// p): the product of the point reflections through (p + x0)/|p + x0|
// and through x0.
template <class S>
Mat<S> transvection_to(const Vec<S>& p) {
  int n = p.size() - 1;
  auto x0 = basepoint<S>(n);
  return point_reflection(p + x0) * point_reflection(x0);
}

// Rational boost mixing coordinates (0, k): cosh/sinh pair built from
// the parameter t via (1+t^2, 2t)/(1-t^2).
inline Mat<Rat> rational_boost(int n, int k, const Rat& t) {
  if (abs(t) >= 1) throw std::invalid_argument("rational_boost: |t| < 1 required");
  Rat c = (1 + t * t) / (1 - t * t), s = 2 * t / (1 - t * t);
  auto g = Mat<Rat>::identity(n + 1);
  g(0, 0) = c;
  g(0, k) = s;
  g(k, 0) = s;
  g(k, k) = c;
  return g;
}

// Rational rotation mixing spatial coordinates (j, k): cos/sin pair
// (1-t^2, 2t)/(1+t^2).
inline Mat<Rat> rational_rotation(int n, int j, int k, const Rat& t) {
  Rat c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
  auto g = Mat<Rat>::identity(n + 1);
  g(j, j) = c;
  g(j, k) = -s;
  g(k, j) = s;
  g(k, k) = c;
  return g;
}

namespace detail {
inline Mat<Rat> random_isometry_mixing(int n, Rng& rng, int max_index) {
  auto g = Mat<Rat>::identity(n + 1);
  int factors = rng.int_in(2, 4);
  for (int f = 0; f < factors; ++f) {
    if (rng.below(2) == 0) {
      int k = rng.int_in(1, max_index);
      g = g * rational_boost(n, k, rng.rat_nonzero(2, 3) / 4);
    } else {
      int j = rng.int_in(1, max_index), k = j;
      while (k == j) k = rng.int_in(1, max_index);
      g = g * rational_rotation(n, j, k, rng.rat(3, 3));
    }
  }
  return g;
}
}  // namespace detail

// Random product of rational boosts and rotations: an exact element of
// the identity component of O(1,n).
inline Mat<Rat> random_isometry(int n, Rng& rng) {
  return detail::random_isometry_mixing(n, rng, n);
}

// Same, but mixing only coordinates 0..n-1, hence fixing the standard
// hyperplane {x_n = 0} pointwise in its normal direction.
inline Mat<Rat> random_isometry_fixing_hyperplane(int n, Rng& rng) {
  return detail::random_isometry_mixing(n, rng, n - 1);
}

inline Vec<Rat> random_hpoint(int n, Rng& rng) {
  return random_isometry(n, rng).apply(basepoint<Rat>(n));
}

// Random tangent vector at p, exact: push a spatial vector at the base
// point forward with the transvection to p.
inline Vec<Rat> random_tangent(const Vec<Rat>& p, Rng& rng) {
  int n = p.size() - 1;
  Vec<Rat> s(n + 1);
  for (int i = 1; i <= n; ++i) s.a[i] = rng.rat(4, 4);
  return transvection_to(p).apply(s);
}

// Does g preserve the standard hyperplane {x_n = 0} setwise?  True
// exactly when the last column is +/- e_n.
template <class S>
bool preserves_hyperplane(const Mat<S>& g) {
  int n = g.rows - 1;
  for (int i = 0; i < n; ++i)
    if (!scalar_traits<S>::is_zero(g(i, n))) return false;
  return g(n, n) == scalar_traits<S>::one() ||
         g(n, n) == -scalar_traits<S>::one();
}

// ---------------------------------------------------------------------------
// Splitting of the algebra along the standard hyperplane {x_n = 0}:
// the stabilizer subalgebra h keeps the last row and column empty, the
// complement s lives entirely in the last row and column.

template <class S>
Mat<S> split_h(const Mat<S>& X) {
  Mat<S> Y = X;
  int n = X.rows - 1;
  for (int i = 0; i <= n; ++i) Y(i, n) = Y(n, i) = scalar_traits<S>::zero();
  return Y;
}

template <class S>
Mat<S> split_s(const Mat<S>& X) {
  return X - split_h(X);
}

inline int split_dim_h(int n) { return n * (n - 1) / 2; }  // = so(1, n-1)
inline int split_dim_s(int n) { return n; }

}  // namespace hylab
