#pragma once
// Warped collar over the core slice: hyperbolic (m+1)-space fibered by the
// distance r to the totally geodesic copy of the core at r = 0, with the
// moving frame that is parallel along the normal geodesics.  Slot 0 of the
// collar coframe is dr (normal direction); slots 1..m are the slice
// directions.

#include <hylab/chart.hpp>

#include <cmath>
#include <vector>

namespace hylab {

struct WarpedChart {
  int m;
  CoreChart core;
  explicit WarpedChart(int m_) : m(m_), core(m_) {}

  int n() const { return m + 1; }        // collar dimension
  int ambient() const { return m + 2; }  // Minkowski coordinates

  // Embeds a core ambient vector into the collar's ambient space (the extra
  // axis is the last one).
  Vec<double> embed(const Vec<double>& u) const {
    Vec<double> v(ambient());
    for (int i = 0; i <= m; ++i) v.a[i] = u.a[i];
    return v;
  }

  Vec<double> point(const Vec<double>& x, double r) const {
    auto base = embed(core.point(x));
    Vec<double> en(ambient());
    en.a[ambient() - 1] = 1;
    return base * std::cosh(r) + en * std::sinh(r);
  }

  // Frame vector of a coframe slot: slot 0 is the collar normal, slot j >= 1
  // is the (r-parallel) slice direction.
  Vec<double> frame_slot(const Vec<double>& x, double r, int slot) const {
    if (slot == 0) {
      auto base = embed(core.point(x));
      Vec<double> en(ambient());
      en.a[ambient() - 1] = 1;
      return base * std::sinh(r) + en * std::cosh(r);
    }
    return embed(core.frame(x)[slot - 1]);
  }

  // Isometry taking the center point and frame to the chart point and frame;
  // columns are (P, e_1, ..., e_m, n).
  Mat<double> g_of(const Vec<double>& x, double r) const {
    Mat<double> g(ambient(), ambient());
    auto put = [&](int col, const Vec<double>& v) {
      for (int i = 0; i < ambient(); ++i) g(i, col) = v.a[i];
    };
    put(0, point(x, r));
    for (int j = 1; j <= m; ++j) put(j, frame_slot(x, r, j));
    put(ambient() - 1, frame_slot(x, r, 0));
    return g;
  }

  // The foot of the normal geodesic through (x, r) on the core.
  Vec<double> project_to_core(const Vec<double>& x, double r) const {
    auto P = point(x, r);
    auto nvec = frame_slot(x, r, 0);
    return P * std::cosh(r) - nvec * std::sinh(r);
  }

  // Chart-coordinate velocity (x-part then r-part) realizing a unit frame
  // direction at (x, r).
  Vec<double> coord_velocity(const Vec<double>& x, double r, int slot) const {
    Vec<double> v(m + 1);
    if (slot == 0) {
      v.a[m] = 1;
      return v;
    }
    auto Ainv = core.jacobian_inverse(x);
    double se = 1.0 / std::cosh(r);
    for (int l = 0; l < m; ++l) v.a[l] = se * Ainv(l, slot - 1);
    return v;
  }
};

}  // namespace hylab
