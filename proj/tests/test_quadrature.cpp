#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dhilbert/quadrature.hpp"

using namespace dhilbert;

TEST(GaussLegendre, ExactForPolynomials) {
  const GaussRule r = gauss_legendre(10, 0.0, 2.0);
  for (int d = 0; d < 20; ++d) {
    double q = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], d);
    EXPECT_NEAR(q, std::pow(2.0, d + 1) / (d + 1), 1e-12 * std::pow(2.0, d + 1)) << "degree " << d;
  }
}

TEST(GaussLegendre, EightyNodesStable) {
  const GaussRule r = gauss_legendre(80);
  EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-14);
  EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
}

TEST(SpectralGrid, SplitsAtZero) {
  const SpectralGrid g = make_spectral_grid(64);
  EXPECT_EQ(g.resolution(), 64u);
  EXPECT_NEAR(std::accumulate(g.weights.begin(), g.weights.end(), 0.0), 1.0, 1e-14);
  for (double x : g.nodes) {
    EXPECT_NE(x, 0.0);
    EXPECT_GT(x, -0.5);
    EXPECT_LT(x, 0.5);
  }
  EXPECT_THROW(make_spectral_grid(7), std::invalid_argument);
}
