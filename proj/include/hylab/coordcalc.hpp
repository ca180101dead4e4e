#pragma once
// Independent scalar exterior calculus in chart coordinates on the warped
// collar: d by antisymmetrized centered differences of coordinate
// components, the codifferential through the metric density, and the form
// Laplacian assembled from them.  Shares no code path with the moving-frame
// machinery; used as an oracle against it.  Coordinates are packed as
// y = (x_1, ..., x_m, r).

#include <hylab/fieldcalc.hpp>
#include <hylab/warped.hpp>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace hylab {

struct CoordCalc {
  int m;
  WarpedChart wc;
  double h;
  explicit CoordCalc(int m_, double h_ = 1e-3) : m(m_), wc(m_), h(h_) {}

  int dims() const { return m + 1; }

  using SFun = std::function<double(const Vec<double>&)>;
  using VFun = std::function<Vec<double>(const Vec<double>&)>;

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> p;
    for (int a = 0; a < dims(); ++a)
      for (int b = a + 1; b < dims(); ++b) p.emplace_back(a, b);
    return p;
  }

  Vec<double> xpart(const Vec<double>& y) const {
    Vec<double> x(m);
    for (int l = 0; l < m; ++l) x.a[l] = y.a[l];
    return x;
  }

  Mat<double> metric(const Vec<double>& y) const {
    auto A = wc.core.jacobian(xpart(y));
    double ch = std::cosh(y.a[m]);
    Mat<double> G(dims(), dims());
    auto core = A.transposed() * A;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) G(a, b) = ch * ch * core(a, b);
    G(m, m) = 1;
    return G;
  }

  Mat<double> metric_inv(const Vec<double>& y) const {
    auto Ai = wc.core.jacobian_inverse(xpart(y));
    double se = 1.0 / std::cosh(y.a[m]);
    Mat<double> Gi(dims(), dims());
    auto core = Ai * Ai.transposed();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) Gi(a, b) = se * se * core(a, b);
    Gi(m, m) = 1;
    return Gi;
  }

  double sqrt_det(const Vec<double>& y) const {
    return std::pow(std::cosh(y.a[m]), m) * wc.core.sqrt_det_g(xpart(y));
  }

  double partial(const SFun& f, const Vec<double>& y, int a) const {
    auto yp = y, ym = y;
    yp.a[a] += h;
    ym.a[a] -= h;
    return (f(yp) - f(ym)) / (2 * h);
  }

  VFun d0(const SFun& f) const {
    return [this, f](const Vec<double>& y) {
      Vec<double> out(dims());
      for (int a = 0; a < dims(); ++a) out.a[a] = partial(f, y, a);
      return out;
    };
  }

  // Exterior derivative of a 1-form, components over lex pairs.
  VFun d1(const VFun& tau) const {
    return [this, tau](const Vec<double>& y) {
      auto ps = pairs();
      Vec<double> out(static_cast<int>(ps.size()));
      for (size_t p = 0; p < ps.size(); ++p) {
        auto [a, b] = ps[p];
        SFun ta = [tau, a](const Vec<double>& yy) { return tau(yy).a[a]; };
        SFun tb = [tau, b](const Vec<double>& yy) { return tau(yy).a[b]; };
        out.a[p] = partial(tb, y, a) - partial(ta, y, b);
      }
      return out;
    };
  }

  // Codifferential of a 1-form: minus the metric divergence.
  SFun delta1(const VFun& tau) const {
    return [this, tau](const Vec<double>& y) {
      double s = 0;
      for (int a = 0; a < dims(); ++a) {
        SFun flux = [this, tau, a](const Vec<double>& yy) {
          auto Gi = metric_inv(yy);
          auto t = tau(yy);
          double v = 0;
          for (int b = 0; b < dims(); ++b) v += Gi(a, b) * t.a[b];
          return sqrt_det(yy) * v;
        };
        s += partial(flux, y, a);
      }
      return -s / sqrt_det(y);
    };
  }

  // Codifferential of a 2-form (components over lex pairs): the divergence
  // identity for antisymmetric tensor densities, lowered at the end.
  VFun delta2(const VFun& beta) const {
    return [this, beta](const Vec<double>& y) {
      auto ps = pairs();
      // beta with raised indices as a full antisymmetric matrix function.
      auto raised = [this, beta, ps](const Vec<double>& yy) {
        auto Gi = metric_inv(yy);
        auto bv = beta(yy);
        Mat<double> B(dims(), dims());
        for (size_t p = 0; p < ps.size(); ++p) {
          B(ps[p].first, ps[p].second) = bv.a[p];
          B(ps[p].second, ps[p].first) = -bv.a[p];
        }
        return Gi * B * Gi.transposed();
      };
      Vec<double> up(dims());
      for (int nu = 0; nu < dims(); ++nu) {
        double s = 0;
        for (int mu = 0; mu < dims(); ++mu) {
          SFun flux = [this, raised, mu, nu](const Vec<double>& yy) {
            return sqrt_det(yy) * raised(yy)(mu, nu);
          };
          s += partial(flux, y, mu);
        }
        up.a[nu] = -s / sqrt_det(y);
      }
      auto G = metric(y);
      return G.apply(up);
    };
  }

  SFun laplace0(const SFun& f) const { return delta1(d0(f)); }

  VFun laplace1(const VFun& tau) const {
    auto a = d0(delta1(tau));
    auto b = delta2(d1(tau));
    return [a, b](const Vec<double>& y) { return a(y) + b(y); };
  }
};

// Conversions between frame components over slots (0 = normal) and
// coordinate components of the dual 1-form.
inline CoordCalc::VFun frame_to_coord_1form(const WarpedChart& wc, const CoeffFun& u) {
  int m = wc.m;
  return [wc, u, m](const Vec<double>& y) {
    Vec<double> x(m);
    for (int l = 0; l < m; ++l) x.a[l] = y.a[l];
    double r = y.a[m];
    auto comps = u(x, r);
    auto A = wc.core.jacobian(x);
    double ch = std::cosh(r);
    Vec<double> tau(m + 1);
    for (int l = 0; l < m; ++l) {
      double s = 0;
      for (int k = 1; k <= m; ++k) s += A(k - 1, l) * comps.a[k];
      tau.a[l] = ch * s;
    }
    tau.a[m] = comps.a[0];
    return tau;
  };
}

inline Vec<double> coord_1form_to_frame(const WarpedChart& wc, const Vec<double>& x,
                                        double r, const Vec<double>& tau) {
  int m = wc.m;
  auto Ai = wc.core.jacobian_inverse(x);
  double se = 1.0 / std::cosh(r);
  Vec<double> comps(m + 1);
  comps.a[0] = tau.a[m];
  for (int k = 1; k <= m; ++k) {
    double s = 0;
    for (int l = 0; l < m; ++l) s += Ai(l, k - 1) * tau.a[l];
    comps.a[k] = se * s;
  }
  return comps;
}

}  // namespace hylab
