// Matrix exponential for dense double matrices: Pade(13) approximant
// with scaling and squaring, accurate to about 1e-13 relative error for
// the moderate norms used throughout this library.
#pragma once

#include <hylab/linalg.hpp>

#include <cmath>
#include <stdexcept>

namespace hylab {

namespace detail {
// Column-sum (1-) norm.
inline double norm1(const Mat<double>& A) {
  double m = 0;
  for (int j = 0; j < A.cols; ++j) {
    double s = 0;
    for (int i = 0; i < A.rows; ++i) s += std::abs(A(i, j));
    m = std::max(m, s);
  }
  return m;
}

// Solve A X = B column by column with partial-pivot LU.
inline Mat<double> mat_solve(const Mat<double>& A, const Mat<double>& B) {
  Mat<double> X(B.rows, B.cols);
  for (int j = 0; j < B.cols; ++j) {
    auto x = lu_solve(A, B.col(j));
    if (!x) throw std::runtime_error("expm: singular Pade denominator");
    for (int i = 0; i < B.rows; ++i) X(i, j) = x->a[i];
  }
  return X;
}
}  // namespace detail

inline Mat<double> expm(Mat<double> A) {
  if (A.rows != A.cols) throw std::invalid_argument("expm: square input required");
  const int n = A.rows;
  // Scale so the Pade(13) approximant is in its accuracy region.
  const double theta13 = 5.371920351148152;
  double nrm = detail::norm1(A);
  int s = 0;
  if (nrm > theta13) {
    s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    A = A * std::pow(2.0, -s);
  }
  static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
  Mat<double> I = Mat<double>::identity(n);
  Mat<double> A2 = A * A;
  Mat<double> A4 = A2 * A2;
  Mat<double> A6 = A2 * A4;
  Mat<double> U = A * (A6 * (A6 * b[13] + A4 * b[11] + A2 * b[9]) +
                       A6 * b[7] + A4 * b[5] + A2 * b[3] + I * b[1]);
  Mat<double> V = A6 * (A6 * b[12] + A4 * b[10] + A2 * b[8]) +
                  A6 * b[6] + A4 * b[4] + A2 * b[2] + I * b[0];
  Mat<double> R = detail::mat_solve(V - U, V + U);
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

}  // namespace hylab
