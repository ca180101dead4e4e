// Unit tests for the exponential chart on the core hyperbolic slice and the
// warped collar built over it: moving frames, Jacobians, frame Christoffel
// data, the disk model in dimension two, and the collar frame/connection
// identities, each checked against an independent ambient-space oracle.

#include <catch2/catch_amalgamated.hpp>

#include <hylab/chart.hpp>
#include <hylab/rng.hpp>
#include <hylab/warped.hpp>

#include <cmath>

using namespace hylab;

namespace {

Vec<double> random_x(Rng& rng, int m, double box) {
  Vec<double> x(m);
  for (int i = 0; i < m; ++i) x.a[i] = rng.double_in(-box, box);
  return x;
}

// Fourth-order integration of the ambient geodesic equation y'' = <y',y'> y,
// used as an oracle independent of every closed-form expression.
std::pair<Vec<double>, Vec<double>> rk4_geodesic(const Mat<double>& J, Vec<double> p,
                                                 Vec<double> v, double time, int steps) {
  double dt = time / steps;
  auto acc = [&](const Vec<double>& pos, const Vec<double>& vel) {
    return pos * mink(J, vel, vel);
  };
  for (int s = 0; s < steps; ++s) {
    auto k1p = v, k1v = acc(p, v);
    auto k2p = v + k1v * (dt / 2), k2v = acc(p + k1p * (dt / 2), v + k1v * (dt / 2));
    auto k3p = v + k2v * (dt / 2), k3v = acc(p + k2p * (dt / 2), v + k2v * (dt / 2));
    auto k4p = v + k3v * dt, k4v = acc(p + k3p * dt, v + k3v * dt);
    p = p + (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (dt / 6);
    v = v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (dt / 6);
  }
  return {p, v};
}

}  // namespace

TEST_CASE("core chart: points, frames, Jacobian") {
  for (int m : {2, 3}) {
    CoreChart ch(m);
    auto J = minkowski_J<double>(m);
    Rng rng(500 + m);

    // Chart center.
    Vec<double> zero(m);
    CHECK((ch.point(zero) - to_double_vec(basepoint<Rat>(m))).max_abs() < 1e-14);
    auto A0 = ch.jacobian(zero);
    CHECK((A0 - Mat<double>::identity(m)).max_abs() < 1e-12);
    auto c0 = ch.christoffels(zero);
    for (const auto& cj : c0) CHECK(cj.max_abs() < 1e-10);

    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_x(rng, m, 0.8);
      auto p = ch.point(x);
      CHECK(std::abs(mink(J, p, p) + 1.0) < 1e-12);
      CHECK(p.a[0] > 0);

      // Orthonormal frame tangent to the hyperboloid.
      auto e = ch.frame(x);
      for (int i = 0; i < m; ++i) {
        CHECK(std::abs(mink(J, e[i], p)) < 1e-11);
        for (int j = 0; j < m; ++j)
          CHECK(std::abs(mink(J, e[i], e[j]) - (i == j ? 1.0 : 0.0)) < 1e-11);
      }

      // Radial rays are unit-speed geodesics from the center.
      double t = rng.double_in(0.2, 1.2);
      Vec<double> u(m);
      u.a[0] = std::sqrt(0.64);
      u.a[1] = 0.6;
      Vec<double> xu = u * t;
      auto along = ch.point(xu);
      Vec<double> want(m + 1);
      want.a[0] = std::cosh(t);
      for (int i = 0; i < m; ++i) want.a[i + 1] = std::sinh(t) * u.a[i];
      CHECK((along - want).max_abs() < 1e-12);

      // Jacobian columns against centered differences of the chart map.
      double h = 1e-5;
      auto A = ch.jacobian(x);
      for (int l = 0; l < m; ++l) {
        auto xp = x, xm = x;
        xp.a[l] += h;
        xm.a[l] -= h;
        auto fd = (ch.point(xp) - ch.point(xm)) * (1.0 / (2 * h));
        for (int k = 0; k < m; ++k)
          CHECK(std::abs(mink(J, fd, e[k]) - A(k, l)) < 1e-8);
      }
      // A_inv is the inverse.
      CHECK((ch.jacobian(x) * ch.jacobian_inverse(x) - Mat<double>::identity(m)).max_abs() <
            1e-10);
    }
  }
}

TEST_CASE("core chart: Christoffel data against an ambient oracle") {
  for (int m : {2, 3}) {
    CoreChart ch(m);
    auto J = minkowski_J<double>(m);
    Rng rng(520 + m);
    for (int trial = 0; trial < 4; ++trial) {
      auto x = random_x(rng, m, 0.7);
      auto e = ch.frame(x);
      auto c = ch.christoffels(x);
      auto Ainv = ch.jacobian_inverse(x);

      // Antisymmetry in the outer indices (metric frame).
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            CHECK(std::abs(c[j](i, k) + c[j](k, i)) < 1e-10);

      // Oracle: differentiate the frame field along the curve whose chart
      // velocity realizes the frame direction e_j, then project.
      double h = 1e-5;
      for (int j = 0; j < m; ++j) {
        Vec<double> v(m);
        for (int l = 0; l < m; ++l) v.a[l] = Ainv(l, j);
        for (int i = 0; i < m; ++i) {
          auto ep = ch.frame(x + v * h)[i];
          auto em = ch.frame(x - v * h)[i];
          auto fd = (ep - em) * (1.0 / (2 * h));
          for (int k = 0; k < m; ++k)
            CHECK(std::abs(mink(J, fd, e[k]) - c[j](i, k)) < 1e-7);
        }
      }
    }
  }
}

TEST_CASE("disk model round trips and distances (m = 2)") {
  CoreChart ch(2);
  auto J = minkowski_J<double>(2);
  Rng rng(530);
  for (int trial = 0; trial < 10; ++trial) {
    Vec<double> z(2);
    z.a[0] = rng.double_in(-0.6, 0.6);
    z.a[1] = rng.double_in(-0.6, 0.6);
    auto p = disk_to_hyperboloid(z);
    CHECK(std::abs(mink(J, p, p) + 1.0) < 1e-12);
    auto back = hyperboloid_to_disk(p);
    CHECK((back - z).max_abs() < 1e-12);

    Vec<double> w(2);
    w.a[0] = rng.double_in(-0.6, 0.6);
    w.a[1] = rng.double_in(-0.6, 0.6);
    auto q = disk_to_hyperboloid(w);
    // Poincare distance in the disk against the hyperboloid distance.
    double zz = 1 - (z.a[0] * z.a[0] + z.a[1] * z.a[1]);
    double ww = 1 - (w.a[0] * w.a[0] + w.a[1] * w.a[1]);
    double dd = (z - w).dot(z - w);
    double want = std::acosh(1 + 2 * dd / (zz * ww));
    CHECK(std::abs(distance(J, p, q) - want) < 1e-10);
  }
}

TEST_CASE("warped collar: points, frames, isometry") {
  for (int m : {2, 3}) {
    WarpedChart wc(m);
    int n = m + 1;
    auto J = minkowski_J<double>(n);
    Rng rng(540 + m);
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_x(rng, m, 0.7);
      double r = rng.double_in(-0.8, 0.8);
      auto P = wc.point(x, r);
      CHECK(std::abs(mink(J, P, P) + 1.0) < 1e-12);

      // Orthonormal frame; the collar direction is the last slot vector.
      std::vector<Vec<double>> f;
      for (int s = 0; s <= m; ++s) f.push_back(wc.frame_slot(x, r, s));
      for (int s = 0; s <= m; ++s) {
        CHECK(std::abs(mink(J, f[s], P)) < 1e-11);
        for (int t = 0; t <= m; ++t)
          CHECK(std::abs(mink(J, f[s], f[t]) - (s == t ? 1.0 : 0.0)) < 1e-11);
      }

      // d/dr of the chart is the collar normal exactly.
      double h = 1e-5;
      auto fd_r = (wc.point(x, r + h) - wc.point(x, r - h)) * (1.0 / (2 * h));
      CHECK((fd_r - f[0]).max_abs() < 1e-9);

      // d/dx_l carries the cosh-scaled core Jacobian.
      auto A = wc.core.jacobian(x);
      for (int l = 0; l < m; ++l) {
        auto xp = x, xm = x;
        xp.a[l] += h;
        xm.a[l] -= h;
        auto fd = (wc.point(xp, r) - wc.point(xm, r)) * (1.0 / (2 * h));
        for (int k = 1; k <= m; ++k)
          CHECK(std::abs(mink(J, fd, f[k]) - std::cosh(r) * A(k - 1, l)) < 1e-8);
      }

      // The frame-to-frame map is an exact isometry taking the center frame
      // to (P; frame).
      auto g = wc.g_of(x, r);
      CHECK(isometry_residual(g) < 1e-11);
      Vec<double> e0(n + 1);
      e0.a[0] = 1;
      CHECK((g.apply(e0) - P).max_abs() < 1e-12);
      for (int s = 0; s <= m; ++s) {
        Vec<double> es(n + 1);
        es.a[s == 0 ? n : s] = 1;  // collar slot pairs with the last axis
        CHECK((g.apply(es) - f[s]).max_abs() < 1e-12);
      }
    }
  }
}

TEST_CASE("warped collar: normal geodesics land on the core") {
  for (int m : {2, 3}) {
    WarpedChart wc(m);
    int n = m + 1;
    auto J = minkowski_J<double>(n);
    Rng rng(550 + m);
    for (int trial = 0; trial < 4; ++trial) {
      auto x = random_x(rng, m, 0.7);
      double r = rng.double_in(0.2, 1.0);
      auto P = wc.point(x, r);
      auto nvec = wc.frame_slot(x, r, 0);

      // Exact projection.
      auto base = wc.point(x, 0.0);
      auto proj = wc.project_to_core(x, r);
      CHECK((proj - base).max_abs() < 1e-12);

      // Independent oracle: integrate the geodesic flow from (P, -n) for
      // time r and compare with the core point.
      auto [land, vel] = rk4_geodesic(J, P, nvec * (-1.0), r, 400);
      CHECK((land - base).max_abs() < 1e-8);
      (void)vel;
    }
  }
}

TEST_CASE("warped collar: connection identities against ambient differences") {
  for (int m : {2, 3}) {
    WarpedChart wc(m);
    int n = m + 1;
    auto J = minkowski_J<double>(n);
    Rng rng(560 + m);
    for (int trial = 0; trial < 3; ++trial) {
      auto x = random_x(rng, m, 0.6);
      double r = rng.double_in(-0.7, 0.7);
      auto c = wc.core.christoffels(x);
      double th = std::tanh(r), se = 1.0 / std::cosh(r);

      std::vector<Vec<double>> f;
      for (int s = 0; s <= m; ++s) f.push_back(wc.frame_slot(x, r, s));

      double h = 1e-5;
      for (int j = 1; j <= m; ++j) {
        // Chart velocity realizing the slice frame direction j.
        auto v = wc.coord_velocity(x, r, j);
        auto fs_at = [&](double t, int s) {
          Vec<double> xt = x;
          for (int l = 0; l < m; ++l) xt.a[l] += t * v.a[l];
          return wc.frame_slot(xt, r + t * v.a[m], s);
        };
        for (int s = 0; s <= m; ++s) {
          auto fd = (fs_at(h, s) - fs_at(-h, s)) * (1.0 / (2 * h));
          if (s == 0) {
            // Ambient derivative of the collar normal: tanh(r) e_j.
            for (int k = 1; k <= m; ++k)
              CHECK(std::abs(mink(J, fd, f[k]) - th * (k == j ? 1.0 : 0.0)) < 1e-7);
          } else {
            // Slice directions: scaled core Christoffel data plus the
            // second-fundamental-form term.
            for (int k = 1; k <= m; ++k)
              CHECK(std::abs(mink(J, fd, f[k]) - se * c[j - 1](s - 1, k - 1)) < 1e-7);
            CHECK(std::abs(mink(J, fd, f[0]) + th * (s == j ? 1.0 : 0.0)) < 1e-7);
          }
        }
      }
    }
  }
}
