// Dense matrices and vectors over a generic scalar, with exact
// (rational) elimination kernels and small floating-point solvers:
// Gauss-Jordan rank/solve/nullspace, Bareiss fraction-free rank,
// partial-pivot LU, cyclic Jacobi eigensolver, one-sided Jacobi SVD.
#pragma once

#include <hylab/scalar.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace hylab {

template <class S>
struct Vec {
  std::vector<S> a;

  Vec() = default;
  explicit Vec(int n) : a(n, scalar_traits<S>::zero()) {}
  static Vec from(std::initializer_list<double> xs) {
    Vec v;
    for (double x : xs) v.a.push_back(S(x));
    return v;
  }
  int size() const { return static_cast<int>(a.size()); }
  S& operator[](int i) { return a[i]; }
  const S& operator[](int i) const { return a[i]; }

  Vec operator+(const Vec& o) const {
    Vec r(*this);
    for (int i = 0; i < size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(*this);
    for (int i = 0; i < size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  Vec operator*(const S& c) const {
    Vec r(*this);
    for (auto& x : r.a) x *= c;
    return r;
  }
  S dot(const Vec& o) const {
    S s = scalar_traits<S>::zero();
    for (int i = 0; i < size(); ++i) s += a[i] * o.a[i];
    return s;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, scalar_traits<S>::magnitude(x));
    return m;
  }
  double norm() const {
    double s = 0;
    for (const auto& x : a) {
      double d = to_double(x);
      s += d * d;
    }
    return std::sqrt(s);
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }
};

template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, scalar_traits<S>::zero()) {}

  static Mat zero(int r, int c) { return Mat(r, c); }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }
  static Mat from(std::initializer_list<std::initializer_list<double>> rows_) {
    Mat m(static_cast<int>(rows_.size()),
          static_cast<int>(rows_.begin()->size()));
    int i = 0;
    for (const auto& row : rows_) {
      int j = 0;
      for (double x : row) m(i, j++) = S(x);
      ++i;
    }
    return m;
  }

  S& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

  Mat operator+(const Mat& o) const {
    Mat r(*this);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r(*this);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const S& x = (*this)(i, k);
        if (scalar_traits<S>::is_zero(x)) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  Mat operator*(const S& c) const {
    Mat r(*this);
    for (auto& x : r.a) x *= c;
    return r;
  }
  Vec<S> apply(const Vec<S>& v) const {
    Vec<S> r(rows);
    for (int i = 0; i < rows; ++i) {
      S s = scalar_traits<S>::zero();
      for (int j = 0; j < cols; ++j) s += (*this)(i, j) * v.a[j];
      r.a[i] = s;
    }
    return r;
  }
  Mat transposed() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  S trace() const {
    S s = scalar_traits<S>::zero();
    for (int i = 0; i < std::min(rows, cols); ++i) s += (*this)(i, i);
    return s;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, scalar_traits<S>::magnitude(x));
    return m;
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }
  bool is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        S want = (i == j) ? scalar_traits<S>::one() : scalar_traits<S>::zero();
        if ((*this)(i, j) != want) return false;
      }
    return true;
  }
  Vec<S> col(int j) const {
    Vec<S> v(rows);
    for (int i = 0; i < rows; ++i) v.a[i] = (*this)(i, j);
    return v;
  }
  Vec<S> row(int i) const {
    Vec<S> v(cols);
    for (int j = 0; j < cols; ++j) v.a[j] = (*this)(i, j);
    return v;
  }
};

template <class S>
Mat<double> to_double_mat(const Mat<S>& m) {
  Mat<double> r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = to_double(m(i, j));
  return r;
}

template <class S>
Vec<double> to_double_vec(const Vec<S>& v) {
  Vec<double> r(v.size());
  for (int i = 0; i < v.size(); ++i) r.a[i] = to_double(v.a[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Exact elimination (rational scalars).

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> rref_inplace(Mat<Rat>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rat inv = Rat(1) / m(r, c);
    for (int j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank_rref(Mat<Rat> m) { return static_cast<int>(rref_inplace(m).size()); }

// Rank by Bareiss fraction-free elimination on the integer matrix
// obtained by clearing each row's denominators.  All intermediate
// values stay integral, which keeps the arithmetic exact and compact.
inline int rank_bareiss(const Mat<Rat>& q) {
  int n = q.rows, m = q.cols;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(m));
  for (int i = 0; i < n; ++i) {
    Int lcm = 1;
    for (int j = 0; j < m; ++j) {
      Int den = boost::multiprecision::denominator(q(i, j));
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    for (int j = 0; j < m; ++j) {
      Rat scaled = q(i, j) * Rat(lcm);
      a[i][j] = boost::multiprecision::numerator(scaled);
    }
  }
  Int prev = 1;
  int rank = 0;
  for (int c = 0; c < m && rank < n; ++c) {
    int p = -1;
    for (int i = rank; i < n; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[p], a[rank]);
    for (int i = rank + 1; i < n; ++i) {
      for (int j = c + 1; j < m; ++j)
        a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Basis of the exact kernel of m (as column vectors).
inline std::vector<Vec<Rat>> nullspace(Mat<Rat> m) {
  auto pivots = rref_inplace(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec<Rat>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    Vec<Rat> v(m.cols);
    v.a[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v.a[pivots[r]] = -m(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Exact solve; empty when the system is inconsistent or underdetermined
// pivots cannot produce one canonical solution (free columns are set to 0).
inline std::optional<Vec<Rat>> solve(const Mat<Rat>& m, const Vec<Rat>& b) {
  Mat<Rat> aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b.a[i];
  }
  auto pivots = rref_inplace(aug);
  for (int c : pivots)
    if (c == m.cols) return std::nullopt;  // row [0 ... 0 | 1]: inconsistent
  Vec<Rat> x(m.cols);
  for (size_t r = 0; r < pivots.size(); ++r) x.a[pivots[r]] = aug(static_cast<int>(r), m.cols);
  return x;
}

inline std::optional<Mat<Rat>> inverse(const Mat<Rat>& m) {
  if (m.rows != m.cols) return std::nullopt;
  int n = m.rows;
  Mat<Rat> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref_inplace(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  Mat<Rat> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Floating-point kernels.

// Partial-pivot LU solve.
inline std::optional<Vec<double>> lu_solve(Mat<double> A, Vec<double> b) {
  int n = A.rows;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int i = c + 1; i < n; ++i)
      if (std::abs(A(i, c)) > std::abs(A(p, c))) p = i;
    if (A(p, c) == 0.0) return std::nullopt;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      std::swap(b.a[p], b.a[c]);
    }
    for (int i = c + 1; i < n; ++i) {
      double f = A(i, c) / A(c, c);
      if (f == 0.0) continue;
      for (int j = c; j < n; ++j) A(i, j) -= f * A(c, j);
      b.a[i] -= f * b.a[c];
    }
  }
  Vec<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b.a[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x.a[j];
    x.a[i] = s / A(i, i);
  }
  return x;
}

// Cyclic Jacobi eigensolver for symmetric matrices.  Returns eigenvalues
// in ascending order with the matching orthonormal eigenvector columns.
inline std::pair<std::vector<double>, Mat<double>> sym_eigen(Mat<double> A) {
  int n = A.rows;
  Mat<double> V = Mat<double>::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(A(p, q)) < 1e-300) continue;
        double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return A(x, x) < A(y, y); });
  std::vector<double> evals(n);
  Mat<double> W(n, n);
  for (int j = 0; j < n; ++j) {
    evals[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) W(i, j) = V(i, order[j]);
  }
  return {evals, W};
}

// Singular values by one-sided Jacobi (Hestenes), descending order.
inline std::vector<double> singular_values(Mat<double> A) {
  if (A.rows < A.cols) A = A.transposed();
  int n = A.cols;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (int k = 0; k < A.rows; ++k) {
          app += A(k, p) * A(k, p);
          aqq += A(k, q) * A(k, q);
          apq += A(k, p) * A(k, q);
        }
        if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0) continue;
        rotated = true;
        double theta = (aqq - app) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < A.rows; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int k = 0; k < A.rows; ++k) s += A(k, j) * A(k, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

// Numerical rank: count singular values above rel_tol times the largest.
inline int rank_svd(const Mat<double>& A, double rel_tol) {
  auto sv = singular_values(A);
  if (sv.empty() || sv[0] == 0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > rel_tol * sv[0]) ++r;
  return r;
}

}  // namespace hylab
