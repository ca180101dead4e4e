#pragma once
// Bend fields on the cross-section and the model 1-form on the collar.
//
// A bend field is a symmetric traceless m x m matrix field b over the
// cross-section chart, read in the orthonormal chart frame.  On surfaces
// it is produced from a polynomial quadratic differential via the disk
// model.  Its extension to the collar places b in the normal-rotation
// block and -tanh r b in the translation block, which is the unique
// r-flat continuation of the boundary data.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hylab/chart.hpp"
#include "hylab/fieldcalc.hpp"
#include "hylab/minkowski.hpp"

namespace hylab {

// Conformal factor of the disk model: the metric is lambda^2 |dz|^2 with
// lambda = 2 / (1 - |z|^2).
inline double disk_conformal_factor(const std::complex<double>& z) {
  return 2.0 / (1.0 - std::norm(z));
}

// J-orthonormal frame at the image of z under the disk-to-hyperboloid
// map: the coordinate differentials divided by the conformal factor.
inline std::vector<Vec<double>> disk_frame(const std::complex<double>& z) {
  double x = z.real(), y = z.imag();
  double q = 1.0 - (x * x + y * y);
  double q2 = q * q;
  Vec<double> dx(3), dy(3);
  dx.a[0] = 4 * x / q2;
  dx.a[1] = 2 / q + 4 * x * x / q2;
  dx.a[2] = 4 * x * y / q2;
  dy.a[0] = 4 * y / q2;
  dy.a[1] = 4 * x * y / q2;
  dy.a[2] = 2 / q + 4 * y * y / q2;
  double lam = disk_conformal_factor(z);
  return {dx * (1.0 / lam), dy * (1.0 / lam)};
}

inline std::complex<double> poly_eval(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> z) {
  std::complex<double> v = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) v = v * z + coeffs[k];
  return v;
}

// Bend matrix in the disk frame for a value phi of the differential: the
// real/imaginary pattern of phi dz^2 scaled by the conformal factor.
inline Mat<double> bend_disk_matrix(const std::complex<double>& phi,
                                    const std::complex<double>& z) {
  double lam = disk_conformal_factor(z);
  Mat<double> b(2, 2);
  b(0, 0) = phi.real();
  b(0, 1) = -phi.imag();
  b(1, 0) = -phi.imag();
  b(1, 1) = -phi.real();
  return b * (1.0 / (lam * lam));
}

// Rotation aligning the disk frame with the chart frame at the chart
// point x: R(k, j) is the pairing of disk direction k with chart
// direction j.
inline Mat<double> disk_frame_alignment(const CoreChart& chart,
                                        const Vec<double>& x) {
  if (chart.m != 2)
    throw std::invalid_argument("disk frame alignment needs a surface chart");
  auto p = chart.point(x);
  auto zv = hyperboloid_to_disk(p);
  auto d = disk_frame({zv.a[0], zv.a[1]});
  auto c = chart.frame(x);
  auto J = minkowski_J<double>(2);
  Mat<double> R(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) R(k, j) = mink(J, d[k], c[j]);
  return R;
}

// Matrix field over a cross-section chart, in the chart frame.
struct BendField {
  int m = 2;
  const CoreChart* chart = nullptr;
  std::function<Mat<double>(const Vec<double>&)> b;
};

// Bend field of the polynomial differential phi(z) dz^2 on a surface
// chart: evaluate in the disk frame, then rotate into the chart frame.
inline BendField bend_from_quadratic_differential(
    const CoreChart& chart, std::vector<std::complex<double>> phi) {
  if (chart.m != 2)
    throw std::invalid_argument(
        "quadratic-differential bend fields need dimension 2");
  BendField out;
  out.m = 2;
  out.chart = &chart;
  const CoreChart* ch = &chart;
  out.b = [ch, phi](const Vec<double>& x) {
    auto zv = hyperboloid_to_disk(ch->point(x));
    std::complex<double> z(zv.a[0], zv.a[1]);
    auto R = disk_frame_alignment(*ch, x);
    auto bd = bend_disk_matrix(poly_eval(phi, z), z);
    return R.transposed() * bd * R;
  };
  return out;
}

// Degree-1 field over the collar with rotational block b and
// translational block -tanh r b.
inline EField bend_extension_field(
    const FieldCalc& fc, std::function<Mat<double>(const Vec<double>&)> b) {
  const FormContext& ctx = fc.ctx;
  int m = fc.m;
  int dim1 = ctx.dim(1);
  std::vector<std::vector<int>> irn(m, std::vector<int>(m));
  std::vector<std::vector<int>> ie(m, std::vector<int>(m));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      int kp = ctx.subset_pos(1, std::vector<int>{j});
      irn[i - 1][j - 1] = ctx.coeff_index(
          1, ctx.basis.index_of("Rn" + std::to_string(i)), kp);
      ie[i - 1][j - 1] = ctx.coeff_index(
          1, ctx.basis.index_of("E" + std::to_string(i)), kp);
    }
  EField out;
  out.deg = 1;
  out.coeff = [m, dim1, b, irn, ie](const Vec<double>& x, double r) {
    auto bm = b(x);
    double t = std::tanh(r);
    Vec<double> c(dim1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        c.a[irn[i][j]] = bm(i, j);
        c.a[ie[i][j]] = -t * bm(i, j);
      }
    return c;
  };
  return out;
}

// Residuals of the cross-section covariant exterior derivative and
// divergence of a bend field, measured at r = 0, plus its symmetry and
// trace defects.
struct BendResiduals {
  double d = 0;
  double dstar = 0;
  double sym = 0;
  double trace = 0;
};

inline BendResiduals verify_bend_field(const FieldCalc& fc,
                                       const BendField& B,
                                       const std::vector<Vec<double>>& nodes) {
  // Only the rotational block is populated; at r = 0 the collar calculus
  // restricts to the cross-section calculus on such fields.
  auto zero_tanh = [&B](const Vec<double>& x) { return B.b(x); };
  EField w;
  {
    std::function<Mat<double>(const Vec<double>&)> bb = zero_tanh;
    // Build with a constant-in-r coefficient: reuse the extension but
    // with the translational part suppressed by evaluating at r = 0
    // semantics, i.e. place only the rotational block.
    const FormContext& ctx = fc.ctx;
    int m = fc.m;
    int dim1 = ctx.dim(1);
    std::vector<std::vector<int>> irn(m, std::vector<int>(m));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j)
        irn[i - 1][j - 1] = ctx.coeff_index(
            1, ctx.basis.index_of("Rn" + std::to_string(i)),
            ctx.subset_pos(1, std::vector<int>{j}));
    w.deg = 1;
    w.coeff = [m, dim1, bb, irn](const Vec<double>& x, double) {
      auto bm = bb(x);
      Vec<double> c(dim1);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c.a[irn[i][j]] = bm(i, j);
      return c;
    };
  }
  auto dw = fc.d_D(w);
  auto dsw = fc.delta_D(w);
  BendResiduals res;
  for (const auto& x : nodes) {
    res.d = std::max(res.d, dw.coeff(x, 0.0).max_abs());
    res.dstar = std::max(res.dstar, dsw.coeff(x, 0.0).max_abs());
    auto bm = B.b(x);
    double tr = 0;
    for (int i = 0; i < fc.m; ++i) {
      tr += bm(i, i);
      for (int j = i + 1; j < fc.m; ++j)
        res.sym = std::max(res.sym, std::abs(bm(i, j) - bm(j, i)));
    }
    res.trace = std::max(res.trace, std::abs(tr));
  }
  return res;
}

// Model 1-form over the collar determined by a bend field.
struct ModelForm {
  int m = 2;
  std::function<Mat<double>(const Vec<double>&)> b;
  EField omega;
};

inline std::vector<Vec<double>> default_probe_nodes(int m) {
  std::vector<Vec<double>> nodes;
  nodes.emplace_back(m);
  for (int i = 0; i < m; ++i)
    for (double s : {0.15, -0.15}) {
      Vec<double> x(m);
      x.a[i] = s;
      nodes.push_back(x);
    }
  Vec<double> mix(m);
  for (int i = 0; i < m; ++i) mix.a[i] = (i % 2 == 0 ? 0.1 : -0.08);
  nodes.push_back(mix);
  return nodes;
}

// Extend a bend field to the collar, verifying its invariants and
// harmonicity first; the acceptance threshold scales with the square of
// the calculus step.
inline ModelForm extend_model(const FieldCalc& fc, const BendField& B,
                              double tol_factor = 25.0) {
  auto res = verify_bend_field(fc, B, default_probe_nodes(fc.m));
  double tol = tol_factor * fc.h * fc.h;
  if (res.sym > 1e-8 || res.trace > 1e-8 || res.d > tol || res.dstar > tol)
    throw std::invalid_argument(
        "bend field fails harmonicity: d=" + std::to_string(res.d) +
        " dstar=" + std::to_string(res.dstar) +
        " sym=" + std::to_string(res.sym) +
        " trace=" + std::to_string(res.trace));
  ModelForm out;
  out.m = fc.m;
  out.b = B.b;
  out.omega = bend_extension_field(fc, B.b);
  return out;
}

// Residuals of the flat derivative, its adjoint, and the metric
// divergence on the extended form, at two steps, with measured orders.
struct ModelReport {
  double d_E_h = 0, d_E_half = 0;
  double delta_E_h = 0, delta_E_half = 0;
  double Dstar_h = 0, Dstar_half = 0;
  double order_d_E = 0, order_delta_E = 0, order_Dstar = 0;
};

inline ModelReport verify_model_harmonic(
    int m, const std::vector<std::complex<double>>& phi,
    const std::vector<std::pair<Vec<double>, double>>& samples, double h) {
  ModelReport rep;
  double res[2][3] = {{0, 0, 0}, {0, 0, 0}};
  for (int lev = 0; lev < 2; ++lev) {
    FieldCalc fc(m, lev == 0 ? h : h / 2);
    auto B = bend_from_quadratic_differential(fc.wc.core, phi);
    auto w = bend_extension_field(fc, B.b);
    auto dw = fc.d_E(w);
    auto cw = fc.delta_E(w);
    auto gw = fc.delta_D(w);
    for (const auto& s : samples) {
      res[lev][0] = std::max(res[lev][0], dw.coeff(s.first, s.second).max_abs());
      res[lev][1] = std::max(res[lev][1], cw.coeff(s.first, s.second).max_abs());
      res[lev][2] = std::max(res[lev][2], gw.coeff(s.first, s.second).max_abs());
    }
  }
  rep.d_E_h = res[0][0];
  rep.d_E_half = res[1][0];
  rep.delta_E_h = res[0][1];
  rep.delta_E_half = res[1][1];
  rep.Dstar_h = res[0][2];
  rep.Dstar_half = res[1][2];
  rep.order_d_E = std::log2(res[0][0] / res[1][0]);
  rep.order_delta_E = std::log2(res[0][1] / res[1][1]);
  rep.order_Dstar = std::log2(res[0][2] / res[1][2]);
  return rep;
}

}  // namespace hylab
