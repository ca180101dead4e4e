#pragma once
// Gauss-Legendre quadrature nodes and weights on [-1, 1], computed by Newton
// iteration on the Legendre recurrence.

#include <cmath>
#include <utility>
#include <vector>

namespace hylab {

inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int k) {
  std::vector<double> nodes(k), weights(k);
  for (int i = 0; i < k; ++i) {
    // Chebyshev-based initial guess for the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
    for (int it = 0; it < 100; ++it) {
      // Evaluate P_k and P_{k-1} by the three-term recurrence.
      double p0 = 1, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = k * (x * p1 - p0) / (x * x - 1);
      double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = x;
    double p0 = 1, p1 = x;
    for (int j = 2; j <= k; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = k * (x * p1 - p0) / (x * x - 1);
    weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

}  // namespace hylab
