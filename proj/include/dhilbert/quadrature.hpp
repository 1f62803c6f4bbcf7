#pragma once

#include <cstddef>
#include <vector>

namespace dhilbert {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
GaussRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Quadrature on the frequency interval split at the symbol discontinuity:
/// Q/2 Gauss-Legendre nodes on (-1/2, 0) and Q/2 on (0, 1/2). No node sits at
/// 0 and the weights sum to 1.
struct SpectralGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t resolution() const { return nodes.size(); }
};

inline constexpr std::size_t default_spectral_resolution = 4096;

/// Q must be even and >= 2.
SpectralGrid make_spectral_grid(std::size_t q = default_spectral_resolution);

}  // namespace dhilbert
