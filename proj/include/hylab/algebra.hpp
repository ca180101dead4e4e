// Ordered bases of the Lorentz algebra so(1,n) with exact coordinates
// and structure constants.
//
// Plain basis:      E_1..E_n, then R_ab (a < b, lexicographic).
// Boundary basis:   N = E_n, E_1..E_m, R_ab (a < b <= m), Rn_1..Rn_m,
//                   where m = n - 1 and Rn_i = [N, E_i].
// Both are orthonormal for the fiber metric at the base point, so
// coordinates are recovered by c_a = tr(X B_a^T) / 2.
#pragma once

#include <hylab/minkowski.hpp>

#include <map>
#include <string>
#include <vector>

namespace hylab {

struct LieBasis {
  int n = 0;  // ambient algebra so(1, n)
  std::vector<Mat<Rat>> B;
  std::vector<std::string> names;
  std::map<std::string, int> index;

  int dim() const { return static_cast<int>(B.size()); }
  int ambient() const { return n + 1; }

  int index_of(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) throw std::invalid_argument("unknown basis name " + name);
    return it->second;
  }

  Vec<Rat> coords(const Mat<Rat>& X) const {
    Vec<Rat> c(dim());
    for (int a = 0; a < dim(); ++a)
      c.a[a] = (X * B[a].transposed()).trace() / 2;
    return c;
  }

  Vec<double> coords_d(const Mat<double>& X) const {
    Vec<double> c(dim());
    for (int a = 0; a < dim(); ++a)
      c.a[a] = (X * to_double_mat(B[a]).transposed()).trace() / 2;
    return c;
  }

  Mat<Rat> from_coords(const Vec<Rat>& c) const {
    Mat<Rat> X(ambient(), ambient());
    for (int a = 0; a < dim(); ++a)
      if (c.a[a] != 0) X = X + B[a] * c.a[a];
    return X;
  }

  Mat<Rat> random_element(Rng& rng) const {
    Vec<Rat> c(dim());
    for (auto& x : c.a) x = rng.rat(4, 4);
    return from_coords(c);
  }

  // ad(X) as an exact matrix in this basis.
  Mat<Rat> ad_matrix(const Mat<Rat>& X) const {
    Mat<Rat> M(dim(), dim());
    for (int b = 0; b < dim(); ++b) {
      auto col = coords(bracket(X, B[b]));
      for (int a = 0; a < dim(); ++a) M(a, b) = col.a[a];
    }
    return M;
  }

  // Ad(g) as an exact matrix in this basis.
  Mat<Rat> Ad_matrix(const Mat<Rat>& g) const {
    auto gi = isometry_inverse(g);
    Mat<Rat> M(dim(), dim());
    for (int b = 0; b < dim(); ++b) {
      auto col = coords(g * B[b] * gi);
      for (int a = 0; a < dim(); ++a) M(a, b) = col.a[a];
    }
    return M;
  }
};

namespace detail {
inline Mat<Rat> translation_generator(int n, int i) {
  Mat<Rat> E(n + 1, n + 1);
  E(0, i) = 1;
  E(i, 0) = 1;
  return E;
}
inline Mat<Rat> rotation_generator(int n, int a, int b) {  // takes e_b to e_a
  Mat<Rat> R(n + 1, n + 1);
  R(a, b) = 1;
  R(b, a) = -1;
  return R;
}
inline void push(LieBasis& basis, const std::string& name, Mat<Rat> M) {
  basis.index[name] = basis.dim();
  basis.names.push_back(name);
  basis.B.push_back(std::move(M));
}
}  // namespace detail

inline LieBasis plain_basis(int n) {
  LieBasis basis;
  basis.n = n;
  for (int i = 1; i <= n; ++i)
    detail::push(basis, "E" + std::to_string(i), detail::translation_generator(n, i));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      detail::push(basis, "R" + std::to_string(a) + std::to_string(b),
                   detail::rotation_generator(n, a, b));
  return basis;
}

// Basis adapted to the standard hyperplane {x_n = 0}; m = n - 1 is the
// hyperplane dimension.  Rn_i = [N, E_i] = rotation carrying e_i to e_n.
inline LieBasis boundary_basis(int n) {
  LieBasis basis;
  basis.n = n;
  int m = n - 1;
  detail::push(basis, "N", detail::translation_generator(n, n));
  for (int i = 1; i <= m; ++i)
    detail::push(basis, "E" + std::to_string(i), detail::translation_generator(n, i));
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      detail::push(basis, "R" + std::to_string(a) + std::to_string(b),
                   detail::rotation_generator(n, a, b));
  for (int i = 1; i <= m; ++i)
    detail::push(basis, "Rn" + std::to_string(i),
                 detail::rotation_generator(n, n, i));
  return basis;
}

}  // namespace hylab
