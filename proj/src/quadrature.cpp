#include "dhilbert/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dhilbert {

GaussRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t m = (n + 1) / 2;
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = nd * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

SpectralGrid make_spectral_grid(std::size_t q) {
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("make_spectral_grid: Q must be even and >= 2");
  const GaussRule left = gauss_legendre(q / 2, -0.5, 0.0);
  const GaussRule right = gauss_legendre(q / 2, 0.0, 0.5);
  SpectralGrid grid;
  grid.nodes = left.nodes;
  grid.nodes.insert(grid.nodes.end(), right.nodes.begin(), right.nodes.end());
  grid.weights = left.weights;
  grid.weights.insert(grid.weights.end(), right.weights.begin(), right.weights.end());
  return grid;
}

}  // namespace dhilbert
