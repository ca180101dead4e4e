#pragma once
// Covariant calculus for bundle-valued forms over the warped collar.  Fields
// are plain functions from chart coordinates (x, r) to coefficient vectors
// with respect to the moving fiber basis and the moving coframe; all
// differential operators combine centered directional differences of the
// coefficients with the analytic connection matrices of the collar.
// A FieldCalc instance must outlive the fields its operators return.

#include <hylab/forms.hpp>
#include <hylab/pointwise.hpp>
#include <hylab/warped.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hylab {

using CoeffFun = std::function<Vec<double>(const Vec<double>&, double)>;

struct EField {
  int deg = 0;
  CoeffFun coeff;
};

namespace detail {
// Sorts a slot list in place, returning the permutation sign, or 0 when the
// list has a repeated slot.
inline int sort_sign(std::vector<int>& v) {
  int sgn = 1;
  for (size_t i = 0; i + 1 < v.size(); ++i)
    for (size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return 0;
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sgn = -sgn;
      }
    }
  return sgn;
}
}  // namespace detail

struct FieldCalc {
  int m;
  WarpedChart wc;
  FormContext ctx;
  double h;

  // Constant coefficient matrices: wedge and contraction per slot and
  // degree, and the algebraic operators.
  std::vector<std::vector<Mat<double>>> Wd, Cd;  // [deg][slot]
  std::vector<Mat<double>> Td, Tsd;              // [deg]

  explicit FieldCalc(int m_, double h_ = 1e-3)
      : m(m_), wc(m_), ctx(warped_context(m_)), h(h_) {
    int S = ctx.slots;
    Wd.resize(S);
    Cd.resize(S + 1);
    for (int deg = 0; deg < S; ++deg) {
      for (int s = 0; s < S; ++s)
        Wd[deg].push_back(to_double_mat(mat_wedge_slot(ctx, s, deg)));
      Td.push_back(to_double_mat(mat_T(ctx, deg)));
    }
    for (int deg = 1; deg <= S; ++deg) {
      for (int s = 0; s < S; ++s)
        Cd[deg].push_back(to_double_mat(mat_contract_slot(ctx, s, deg)));
      Tsd.push_back(to_double_mat(mat_Tstar(ctx, deg)));
    }
  }

  // Frame connection in the direction of a spatial slot, indexed by slots
  // (entry (k, i) = component k of the derivative of frame vector i).
  Mat<double> theta(const Vec<double>& x, double r, int slot) const {
    Mat<double> th(m + 1, m + 1);
    if (slot == 0) return th;
    auto c = wc.core.christoffels(x);
    double t = std::tanh(r), se = 1.0 / std::cosh(r);
    for (int i = 1; i <= m; ++i)
      for (int k = 1; k <= m; ++k) th(k, i) = se * c[slot - 1](i - 1, k - 1);
    th(0, slot) = -t;
    th(slot, 0) = t;
    return th;
  }

  // Fiber connection matrices, one per slot direction (the normal direction
  // is flat for the parallel moving basis).
  std::vector<Mat<double>> fiber_gammas(const Vec<double>& x, double r) const {
    int dim = ctx.basis.dim();
    std::vector<Mat<double>> gam(m + 1, Mat<double>(dim, dim));
    auto c = wc.core.christoffels(x);
    double t = std::tanh(r), se = 1.0 / std::cosh(r);

    int iN = ctx.basis.index_of("N");
    auto iE = [&](int i) { return ctx.basis.index_of("E" + std::to_string(i)); };
    auto iRn = [&](int i) { return ctx.basis.index_of("Rn" + std::to_string(i)); };
    auto iR = [&](int a, int b) {
      return ctx.basis.index_of("R" + std::to_string(a) + std::to_string(b));
    };
    // Adds v times the canonical generator carrying axis b to axis a; the
    // collar axis is encoded as m + 1.
    auto rot_add = [&](Mat<double>& g, int col, int a, int b, double v) {
      if (a == b) return;
      if (a == m + 1)
        g(iRn(b), col) += v;
      else if (b == m + 1)
        g(iRn(a), col) -= v;
      else if (a < b)
        g(iR(a, b), col) += v;
      else
        g(iR(b, a), col) -= v;
    };

    for (int j = 1; j <= m; ++j) {
      auto& g = gam[j];
      auto ct = [&](int i, int k) { return se * c[j - 1](i - 1, k - 1); };
      // Translations.
      g(iE(j), iN) += t;
      for (int i = 1; i <= m; ++i) {
        for (int k = 1; k <= m; ++k) g(iE(k), iE(i)) += ct(i, k);
        if (i == j) g(iN, iE(i)) -= t;
      }
      // Slice rotations.
      for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
          int col = iR(a, b);
          for (int k = 1; k <= m; ++k) {
            rot_add(g, col, k, b, ct(a, k));
            rot_add(g, col, a, k, ct(b, k));
          }
          if (a == j) rot_add(g, col, m + 1, b, -t);
          if (b == j) rot_add(g, col, m + 1, a, t);
        }
      // Mixed rotations.
      for (int i = 1; i <= m; ++i) {
        int col = iRn(i);
        rot_add(g, col, j, i, t);
        for (int k = 1; k <= m; ++k) g(iRn(k), col) += ct(i, k);
      }
    }
    return gam;
  }

  // Full connection matrix on degree-deg coefficients for one slot
  // direction: fiber part plus the induced coframe part.
  Mat<double> coeff_gamma(const Vec<double>& x, double r, int slot, int deg) const {
    int dim = ctx.dim(deg);
    Mat<double> M(dim, dim);
    if (slot == 0) return M;
    auto gam = fiber_gammas(x, r)[slot];
    auto kappa = theta(x, r, slot).transposed() * (-1.0);

    int nK = ctx.n_subsets(deg);
    for (int a = 0; a < ctx.basis.dim(); ++a)
      for (int b = 0; b < ctx.basis.dim(); ++b) {
        if (gam(b, a) == 0) continue;
        for (int kp = 0; kp < nK; ++kp)
          M(ctx.coeff_index(deg, b, kp), ctx.coeff_index(deg, a, kp)) += gam(b, a);
      }
    for (int kp = 0; kp < nK; ++kp) {
      const auto& K = ctx.subsets[deg][kp];
      for (size_t pos = 0; pos < K.size(); ++pos) {
        int t = K[pos];
        for (int u = 0; u <= m; ++u) {
          double kv = kappa(u, t);
          if (kv == 0) continue;
          std::vector<int> L = K;
          L[pos] = u;
          int sgn = detail::sort_sign(L);
          if (sgn == 0) continue;
          int lp = ctx.subset_pos(deg, L);
          for (int a = 0; a < ctx.basis.dim(); ++a)
            M(ctx.coeff_index(deg, a, lp), ctx.coeff_index(deg, a, kp)) += sgn * kv;
        }
      }
    }
    return M;
  }

  // Centered difference of a coefficient function along a frame direction.
  Vec<double> dir_diff(const CoeffFun& f, const Vec<double>& x, double r,
                       int slot) const {
    auto v = wc.coord_velocity(x, r, slot);
    Vec<double> xp = x, xm = x;
    for (int l = 0; l < m; ++l) {
      xp.a[l] += h * v.a[l];
      xm.a[l] -= h * v.a[l];
    }
    auto fp = f(xp, r + h * v.a[m]);
    auto fm = f(xm, r - h * v.a[m]);
    return (fp - fm) * (1.0 / (2 * h));
  }

  // Metric covariant exterior derivative.
  EField d_D(const EField& phi) const {
    int deg = phi.deg;
    CoeffFun f = phi.coeff;
    EField out;
    out.deg = deg + 1;
    out.coeff = [this, f, deg](const Vec<double>& x, double r) {
      Vec<double> res(ctx.dim(deg + 1));
      auto base = f(x, r);
      for (int s = 0; s <= m; ++s) {
        auto der = dir_diff(f, x, r, s);
        if (s != 0) der = der + coeff_gamma(x, r, s, deg).apply(base);
        res = res + Wd[deg][s].apply(der);
      }
      return res;
    };
    return out;
  }

  // Metric codifferential: minus the contraction of the covariant
  // derivative over the frame.
  EField delta_D(const EField& phi) const {
    int deg = phi.deg;
    CoeffFun f = phi.coeff;
    EField out;
    out.deg = deg - 1;
    out.coeff = [this, f, deg](const Vec<double>& x, double r) {
      Vec<double> res(ctx.dim(deg - 1));
      auto base = f(x, r);
      for (int s = 0; s <= m; ++s) {
        auto der = dir_diff(f, x, r, s);
        if (s != 0) der = der + coeff_gamma(x, r, s, deg).apply(base);
        res = res - Cd[deg][s].apply(der);
      }
      return res;
    };
    return out;
  }

  // Algebraic parts.
  EField d_T(const EField& phi) const {
    int deg = phi.deg;
    CoeffFun f = phi.coeff;
    return {deg + 1, [this, f, deg](const Vec<double>& x, double r) {
              return Td[deg].apply(f(x, r));
            }};
  }
  EField delta_T(const EField& phi) const {
    int deg = phi.deg;
    CoeffFun f = phi.coeff;
    return {deg - 1, [this, f, deg](const Vec<double>& x, double r) {
              return Tsd[deg - 1].apply(f(x, r));
            }};
  }

  static EField add(const EField& a, const EField& b) {
    CoeffFun fa = a.coeff, fb = b.coeff;
    return {a.deg, [fa, fb](const Vec<double>& x, double r) {
              return fa(x, r) + fb(x, r);
            }};
  }

  // Twisted (flat) differential and its adjoint.
  EField d_E(const EField& phi) const { return add(d_D(phi), d_T(phi)); }
  EField delta_E(const EField& phi) const { return add(delta_D(phi), delta_T(phi)); }

  EField laplacian_E(const EField& phi) const {
    auto a = delta_E(d_E(phi));
    if (phi.deg == 0) return a;
    return add(a, d_E(delta_E(phi)));
  }

  // Canonical lift of a vector field given by frame components (slot 0 is
  // the normal component): translational coefficients are the components,
  // rotational coefficients are the skew part of the covariant derivative.
  EField lift(const CoeffFun& u) const {
    EField out;
    out.deg = 0;
    out.coeff = [this, u](const Vec<double>& x, double r) {
      auto u0 = u(x, r);
      // Du(k, l) = component l of the covariant derivative along slot k.
      Mat<double> Du(m + 1, m + 1);
      for (int k = 0; k <= m; ++k) {
        auto der = dir_diff(u, x, r, k);
        if (k != 0) der = der + theta(x, r, k).apply(u0);
        for (int l = 0; l <= m; ++l) Du(k, l) = der.a[l];
      }
      Vec<double> s(ctx.dim(0));
      s.a[ctx.basis.index_of("N")] = u0.a[0];
      for (int i = 1; i <= m; ++i)
        s.a[ctx.basis.index_of("E" + std::to_string(i))] = u0.a[i];
      // Coefficient of the generator carrying axis b to axis a is the skew
      // derivative pairing (direction b, component a).
      for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b)
          s.a[ctx.basis.index_of("R" + std::to_string(a) + std::to_string(b))] =
              0.5 * (Du(b, a) - Du(a, b));
      for (int i = 1; i <= m; ++i)
        s.a[ctx.basis.index_of("Rn" + std::to_string(i))] =
            0.5 * (Du(i, 0) - Du(0, i));
      return s;
    };
    return out;
  }
};

}  // namespace hylab
