#pragma once
// Gauss-Legendre rules on [a, b].

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace anosov {

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Nodes by Newton iteration on P_n from the Chebyshev guess.
inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs n >= 1");
  GaussRule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[static_cast<std::size_t>(i)] = -z;
    r.x[static_cast<std::size_t>(n - 1 - i)] = z;
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

// Maps the rule to [a, b]; returns (nodes, weights).
inline std::pair<std::vector<double>, std::vector<double>> gauss_on(const GaussRule& g, double a, double b) {
  std::vector<double> x(g.x.size()), w(g.w.size());
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    x[i] = c + h * g.x[i];
    w[i] = h * g.w[i];
  }
  return {x, w};
}

}  // namespace anosov
