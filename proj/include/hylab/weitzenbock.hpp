#pragma once
// Boundary calculus for the collar: tangential blocks of the normal
// contraction, the boundary integrand as an exact quadratic form, the
// vanishing-block conditions for boundary-adapted lifts, and the
// integrated first-order balance identity on a product patch
//
//   |d_E w|^2 + |delta_E w|^2
//     = |D w|^2 + |D* w|^2 + (H w, w) - int_bdry (*Tw ^ w + T*w ^ *w).
//
// The patch is a coordinate box times [0, rmax]; all six face fluxes of
// the boundary form are reported so that test data need not vanish on
// the truncation faces.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hylab/fieldcalc.hpp"
#include "hylab/pointwise.hpp"

namespace hylab {

// Tangential rows of the dr-contraction of T applied to a 1-form,
// grouped by fiber family, plus the scalar boundary integrand.
struct BoundaryBlockReport {
  Mat<Rat> row_N;    // 1 x m
  Mat<Rat> rows_E;   // m x m
  Mat<Rat> rows_R;   // m(m-1)/2 x m
  Mat<Rat> rows_Rn;  // m x m
  Rat integrand;
};

inline BoundaryBlockReport boundary_report(const FormContext& ctx,
                                           const EForm<Rat>& w) {
  if (ctx.dr_slot < 0)
    throw std::invalid_argument(
        "boundary report needs a collar slot in the coframe");
  int m = ctx.slots - 1;
  auto inT = mat_contract_slot(ctx, ctx.dr_slot, 2) * mat_T(ctx, 1);
  auto c = inT.apply(w.c);
  auto at = [&](const std::string& name, int j) {
    return c.a[ctx.coeff_index(1, ctx.basis.index_of(name),
                               ctx.subset_pos(1, std::vector<int>{j}))];
  };
  BoundaryBlockReport rep;
  rep.row_N = Mat<Rat>(1, m);
  rep.rows_E = Mat<Rat>(m, m);
  rep.rows_R = Mat<Rat>(m * (m - 1) / 2, m);
  rep.rows_Rn = Mat<Rat>(m, m);
  for (int j = 1; j <= m; ++j) {
    rep.row_N(0, j - 1) = at("N", j);
    for (int i = 1; i <= m; ++i) {
      rep.rows_E(i - 1, j - 1) = at("E" + std::to_string(i), j);
      rep.rows_Rn(i - 1, j - 1) = at("Rn" + std::to_string(i), j);
    }
    int row = 0;
    for (int a = 1; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b)
        rep.rows_R(row++, j - 1) =
            at("R" + std::to_string(a) + std::to_string(b), j);
  }
  rep.integrand = boundary_integrand_blocks(ctx, block_decompose(ctx, w));
  return rep;
}

// The boundary integrand as a symmetric quadratic form on degree-1
// coefficients, obtained by polarizing the block formula.
inline Mat<Rat> boundary_quadratic(const FormContext& ctx) {
  int d = ctx.dim(1);
  auto eval = [&](const Vec<Rat>& c) {
    EForm<Rat> w;
    w.deg = 1;
    w.c = c;
    return boundary_integrand_blocks(ctx, block_decompose(ctx, w));
  };
  std::vector<Rat> diag(d);
  for (int i = 0; i < d; ++i) {
    Vec<Rat> e(d);
    e.a[i] = Rat(1);
    diag[i] = eval(e);
  }
  Mat<Rat> Q(d, d);
  for (int i = 0; i < d; ++i) {
    Q(i, i) = diag[i];
    for (int j = i + 1; j < d; ++j) {
      Vec<Rat> e(d);
      e.a[i] = Rat(1);
      e.a[j] = Rat(1);
      Rat cross = (eval(e) - diag[i] - diag[j]) / Rat(2);
      Q(i, j) = cross;
      Q(j, i) = cross;
    }
  }
  return Q;
}

// Text rendering of the tangential contraction table: rows are fiber
// basis elements, columns the tangential coframe slots, entries linear
// combinations of the input block symbols (c, b, d, e, a, f per block;
// g and h would flag a bookkeeping regression).
inline std::string render_table2(int m) {
  auto ctx = warped_context(m);
  int d = ctx.dim(1);
  // Symbol for each input coefficient, plus a family rank for stable
  // term ordering inside an entry.
  std::vector<std::string> sym(d);
  std::vector<int> rank(d);
  for (int a = 0; a < ctx.basis.dim(); ++a) {
    const std::string& name = ctx.basis.names[a];
    for (int j = 0; j <= m; ++j) {
      int idx = ctx.coeff_index(1, a, ctx.subset_pos(1, std::vector<int>{j}));
      std::string tail = name.substr(1);
      bool dr = (j == 0);
      std::string wj = std::to_string(j);
      if (name == "N") {
        sym[idx] = dr ? "f" : "g" + wj;
        rank[idx] = dr ? 5 : 6;
      } else if (name[0] == 'E') {
        sym[idx] = dr ? "e" + tail : "a" + tail + wj;
        rank[idx] = dr ? 3 : 4;
      } else if (name[1] == 'n') {
        std::string i = name.substr(2);
        sym[idx] = dr ? "c" + i : "b" + i + wj;
        rank[idx] = dr ? 0 : 1;
      } else {
        sym[idx] = dr ? "d" + tail : "h" + tail + "w" + wj;
        rank[idx] = dr ? 2 : 7;
      }
    }
  }
  auto inT = mat_contract_slot(ctx, ctx.dr_slot, 2) * mat_T(ctx, 1);
  auto entry = [&](int a, int j) {
    int row = ctx.coeff_index(1, a, ctx.subset_pos(1, std::vector<int>{j}));
    std::vector<std::pair<int, std::string>> terms;
    for (int k = 0; k < d; ++k) {
      Rat v = inT(row, k);
      if (v == Rat(0)) continue;
      std::string t;
      if (v == Rat(1))
        t = "+" + sym[k];
      else if (v == Rat(-1))
        t = "-" + sym[k];
      else
        t = "+(" + rat_to_string(v) + ")" + sym[k];
      terms.push_back({rank[k] * d + k, t});
    }
    if (terms.empty()) return std::string("0");
    std::sort(terms.begin(), terms.end());
    std::string out;
    for (auto& t : terms) out += t.second;
    if (out[0] == '+') out = out.substr(1);
    return out;
  };
  std::string out = "tangential contraction blocks, m = " + std::to_string(m) +
                    "\ncolumns: ";
  for (int j = 1; j <= m; ++j) out += "w" + std::to_string(j) + (j < m ? " " : "\n");
  for (int a = 0; a < ctx.basis.dim(); ++a) {
    out += ctx.basis.names[a] + ":";
    for (int j = 1; j <= m; ++j) out += " " + entry(a, j);
    out += "\n";
  }
  return out;
}

// Residual report for the four tangential/radial blocks of d_E s that
// the boundary conditions force to vanish on the boundary slice, with
// the derivative and algebraic contributions kept separate.
struct BlockSplit {
  double total = 0;
  double from_D = 0;
  double from_T = 0;
};

struct ZeroBlockReport {
  double pre_normal = 0;  // largest normal component of u on the slice
  double pre_radial = 0;  // largest tangential radial derivative of u
  BlockSplit B, D, E, G;
  double worst() const {
    return std::max(std::max(B.total, D.total), std::max(E.total, G.total));
  }
};

inline ZeroBlockReport check_zero_blocks(const FieldCalc& fc,
                                         const CoeffFun& u,
                                         const std::vector<Vec<double>>& nodes) {
  const FormContext& ctx = fc.ctx;
  int m = fc.m;
  auto s = fc.lift(u);
  auto dDs = fc.d_D(s);
  auto dTs = fc.d_T(s);
  auto idx = [&](const std::string& name, int j) {
    return ctx.coeff_index(1, ctx.basis.index_of(name),
                           ctx.subset_pos(1, std::vector<int>{j}));
  };
  ZeroBlockReport rep;
  auto fold = [](BlockSplit& blk, double vD, double vT) {
    blk.from_D = std::max(blk.from_D, std::abs(vD));
    blk.from_T = std::max(blk.from_T, std::abs(vT));
    blk.total = std::max(blk.total, std::abs(vD + vT));
  };
  for (const auto& x : nodes) {
    auto u0 = u(x, 0.0);
    rep.pre_normal = std::max(rep.pre_normal, std::abs(u0.a[0]));
    auto du = fc.dir_diff(u, x, 0.0, 0);
    for (int i = 1; i <= m; ++i)
      rep.pre_radial = std::max(rep.pre_radial, std::abs(du.a[i]));

    auto cD = dDs.coeff(x, 0.0);
    auto cT = dTs.coeff(x, 0.0);
    for (int j = 1; j <= m; ++j) {
      fold(rep.G, cD.a[idx("N", j)], cT.a[idx("N", j)]);
      for (int i = 1; i <= m; ++i)
        fold(rep.B, cD.a[idx("Rn" + std::to_string(i), j)],
             cT.a[idx("Rn" + std::to_string(i), j)]);
    }
    for (int i = 1; i <= m; ++i)
      fold(rep.E, cD.a[idx("E" + std::to_string(i), 0)],
           cT.a[idx("E" + std::to_string(i), 0)]);
    for (int a = 1; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b)
        fold(rep.D,
             cD.a[idx("R" + std::to_string(a) + std::to_string(b), 0)],
             cT.a[idx("R" + std::to_string(a) + std::to_string(b), 0)]);
  }
  return rep;
}

namespace detail {

inline double det_small(const Mat<double>& M) {
  int n = M.rows;
  if (n == 0) return 1.0;
  if (n == 1) return M(0, 0);
  if (n == 2) return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  double out = 0;
  for (int i = 0; i < n; ++i) {
    if (M(i, 0) == 0) continue;
    Mat<double> sub(n - 1, n - 1);
    int r = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      for (int j = 1; j < n; ++j) sub(r, j - 1) = M(k, j);
      ++r;
    }
    out += ((i % 2 == 0) ? 1.0 : -1.0) * M(i, 0) * det_small(sub);
  }
  return out;
}

}  // namespace detail

// Pointwise evaluator for the boundary (n-1)-form *Tw ^ w + T*w ^ *w,
// with the fibers paired by the bundle metric.
struct BoundaryFormCalc {
  const FieldCalc& fc;
  Mat<double> T1, Ts1, star1, star2, H1;

  explicit BoundaryFormCalc(const FieldCalc& fc_)
      : fc(fc_),
        T1(to_double_mat(mat_T(fc_.ctx, 1))),
        Ts1(to_double_mat(mat_Tstar(fc_.ctx, 1))),
        star1(to_double_mat(mat_star(fc_.ctx, 1))),
        star2(to_double_mat(mat_star(fc_.ctx, 2))),
        H1(to_double_mat(mat_H(fc_.ctx, 1))) {}

  // Coefficients of the boundary form over (n-1)-subsets of the coframe.
  Vec<double> boundary_form(const Vec<double>& c) const {
    const FormContext& ctx = fc.ctx;
    int n = ctx.slots;
    EForm<double> w;
    w.deg = 1;
    w.c = c;
    EForm<double> sTw;
    sTw.deg = n - 2;
    sTw.c = star2.apply(T1.apply(c));
    EForm<double> tsw;
    tsw.deg = 0;
    tsw.c = Ts1.apply(c);
    EForm<double> sw;
    sw.deg = n - 1;
    sw.c = star1.apply(c);
    return wedge_pair(ctx, sTw, w) + wedge_pair(ctx, tsw, sw);
  }

  // Evaluate the boundary form on the coordinate directions omitting
  // axis q (0-based; axes x_1..x_m then r).
  double face_density(const Vec<double>& psi, const Vec<double>& x, double r,
                      int q) const {
    int m = fc.m, n = m + 1;
    Mat<double> Phi(n, n);  // frame components of coordinate vectors
    auto A = fc.wc.core.jacobian(x);
    double ch = std::cosh(r);
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k) Phi(k + 1, l) = ch * A(k, l);
    Phi(0, m) = 1.0;
    std::vector<int> cols;
    for (int l = 0; l < n; ++l)
      if (l != q) cols.push_back(l);
    const auto& subs = fc.ctx.subsets[n - 1];
    double val = 0;
    for (size_t kp = 0; kp < subs.size(); ++kp) {
      if (psi.a[kp] == 0) continue;
      Mat<double> Mm(n - 1, n - 1);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) Mm(i, j) = Phi(subs[kp][i], cols[j]);
      val += psi.a[kp] * detail::det_small(Mm);
    }
    return val;
  }
};

struct PatchSpec {
  std::vector<double> xlo, xhi;  // coordinate box of the cross-section
  double rmax = 0.5;
};

struct BalanceReport {
  double lhs = 0;       // |d_E w|^2 + |delta_E w|^2
  double rhs_D = 0;     // |D w|^2 + |D* w|^2
  double rhs_H = 0;     // (H w, w)
  double boundary = 0;  // minus the total outward flux of the boundary form
  std::vector<std::pair<std::string, double>> faces;
  double defect() const { return lhs - rhs_D - rhs_H - boundary; }
};

// Trapezoid-rule evaluation of both sides of the balance identity for a
// degree-1 field over the patch, reporting each face flux separately.
inline BalanceReport weitzenbock_balance(const FieldCalc& fc, const EField& w,
                                         const PatchSpec& patch, int N) {
  int m = fc.m, n = m + 1;
  if (static_cast<int>(patch.xlo.size()) != m ||
      static_cast<int>(patch.xhi.size()) != m)
    throw std::invalid_argument("patch box dimension mismatch");
  if (N < 4) throw std::invalid_argument("patch too small for stencils");
  for (int i = 0; i < m; ++i)
    if (patch.xhi[i] - patch.xlo[i] < 4 * fc.h)
      throw std::invalid_argument("patch too small for stencils");
  if (patch.rmax < 4 * fc.h)
    throw std::invalid_argument("patch too small for stencils");

  BoundaryFormCalc bf(fc);
  std::vector<double> lo(patch.xlo), hi(patch.xhi);
  lo.push_back(0.0);
  hi.push_back(patch.rmax);
  std::vector<double> step(n);
  for (int i = 0; i < n; ++i) step[i] = (hi[i] - lo[i]) / N;

  BalanceReport rep;

  // Volume quadrature.
  std::vector<int> c(n, 0);
  while (true) {
    double wt = 1.0;
    Vec<double> x(m);
    for (int i = 0; i < n; ++i) {
      wt *= (c[i] == 0 || c[i] == N) ? 0.5 : 1.0;
      wt *= step[i];
      if (i < m) x.a[i] = lo[i] + c[i] * step[i];
    }
    double r = lo[m] + c[m] * step[m];
    wt *= std::pow(std::cosh(r), m) * fc.wc.core.sqrt_det_g(x);

    auto base = w.coeff(x, r);
    Vec<double> dD(fc.ctx.dim(2)), deltaD(fc.ctx.dim(0));
    for (int s = 0; s <= m; ++s) {
      auto der = fc.dir_diff(w.coeff, x, r, s);
      if (s != 0) der = der + fc.coeff_gamma(x, r, s, 1).apply(base);
      dD = dD + fc.Wd[1][s].apply(der);
      deltaD = deltaD - fc.Cd[1][s].apply(der);
    }
    auto dT = fc.Td[1].apply(base);
    auto deltaT = fc.Tsd[0].apply(base);
    auto dE = dD + dT;
    auto deltaE = deltaD + deltaT;
    auto dot = [](const Vec<double>& a, const Vec<double>& b) {
      double t = 0;
      for (size_t i = 0; i < a.a.size(); ++i) t += a.a[i] * b.a[i];
      return t;
    };
    rep.lhs += wt * (dot(dE, dE) + dot(deltaE, deltaE));
    rep.rhs_D += wt * (dot(dD, dD) + dot(deltaD, deltaD));
    rep.rhs_H += wt * dot(bf.H1.apply(base), base);

    int i = 0;
    for (; i < n; ++i) {
      if (++c[i] <= N) break;
      c[i] = 0;
    }
    if (i == n) break;
  }

  // Face fluxes: for the face with axis q fixed at a side, the outward
  // flux of the boundary form in coordinate orientation; the boundary
  // term of the identity is minus the total.
  for (int q = 0; q < n; ++q) {
    for (int side = 0; side < 2; ++side) {
      double fixed = side ? hi[q] : lo[q];
      double flux = 0;
      std::vector<int> axes;
      for (int i = 0; i < n; ++i)
        if (i != q) axes.push_back(i);
      std::vector<int> cc(n - 1, 0);
      while (true) {
        double wt = 1.0;
        Vec<double> x(m);
        double r = 0;
        for (int i = 0; i < n - 1; ++i) {
          wt *= (cc[i] == 0 || cc[i] == N) ? 0.5 : 1.0;
          wt *= step[axes[i]];
          double y = lo[axes[i]] + cc[i] * step[axes[i]];
          if (axes[i] < m)
            x.a[axes[i]] = y;
          else
            r = y;
        }
        if (q < m)
          x.a[q] = fixed;
        else
          r = fixed;
        auto psi = bf.boundary_form(w.coeff(x, r));
        flux += wt * bf.face_density(psi, x, r, q);
        int i = 0;
        for (; i < n - 1; ++i) {
          if (++cc[i] <= N) break;
          cc[i] = 0;
        }
        if (i == n - 1) break;
      }
      double sgn = (side ? 1.0 : -1.0) * ((q % 2 == 0) ? 1.0 : -1.0);
      std::string name =
          (q < m ? "x" + std::to_string(q + 1) : std::string("r")) +
          (side ? "+" : "-");
      rep.faces.push_back({name, -sgn * flux});
      rep.boundary += -sgn * flux;
    }
  }
  return rep;
}

}  // namespace hylab
