#pragma once

#include <vector>

#include "dhilbert/quadrature.hpp"
#include "dhilbert/signal.hpp"
#include "dhilbert/symbol.hpp"

namespace dhilbert {

/// -1/(pi (n + 1/2)) for Sign::plus, -1/(pi (n - 1/2)) for Sign::minus.
double kernel_h(Sign sign, site_t n);

/// Average of the two one-sided kernels: 0 at n = 0, -n/(pi (n^2 - 1/4)) otherwise.
double kernel_centered(site_t n);

/// -1/(pi n) for n != 0 and 0 at n = 0 (the skipped principal-value site).
double kernel_naive(site_t n);

/// Convolution kernel of a Hilbert-type operator (h+, h-, h, naive).
double kernel_value(SymbolTag which, site_t n);

struct KernelResult {
  LatticeSignal signal;
  /// Output covers [f.offset() - out_radius, f.last() + out_radius].
  site_t out_radius = 0;
  /// Bound on |Tf(x)| at every omitted site: ||f||_1 * max_{|z| > out_radius} |k(z)|.
  double tail_bound = 0.0;
};

inline constexpr site_t default_out_radius = 64;

/// Exact convolution of a window signal with a Hilbert-type kernel. The
/// output window extends `out_radius` sites beyond each end of f's window.
KernelResult apply_kernel(const LatticeSignal& f, SymbolTag which, site_t out_radius = default_out_radius);

/// Forward DFT on Z_N: c_k = sum_x f(x) e^{-2 pi i x k / N}.
std::vector<cplx> torus_spectrum(const LatticeSignal& f);

/// Inverse of torus_spectrum, real part.
LatticeSignal torus_from_spectrum(std::span<const cplx> coeffs);

/// Frequency of DFT bin k on Z_N, mapped into (-1/2, 1/2].
double torus_frequency(std::size_t k, std::size_t n);

/// Exact multiplier action on Z_N: inverse DFT of m(k/N) f^(k).
LatticeSignal apply_spectral_torus(const LatticeSignal& f, const OperatorSymbol& op);

struct SiteRange {
  site_t first = 0;
  site_t last = 0;
  std::size_t length() const { return static_cast<std::size_t>(last - first + 1); }
};

/// Quadrature approximation of int m(xi) f^(xi) e^{2 pi i x xi} dxi over the
/// sites in `out`. Requires grid.resolution() >= 4 * (f.size() + out.length()).
LatticeSignal apply_spectral_window(const LatticeSignal& f, const OperatorSymbol& op, const SpectralGrid& grid,
                                    SiteRange out);

/// (S_{+1} f)(x) = f(x - 1), (S_{-1} f)(x) = f(x + 1).
LatticeSignal shift(const LatticeSignal& f, int direction);

enum class Difference { plus, minus, centered };

/// d+ f(x) = f(x+1) - f(x), d- f(x) = f(x) - f(x-1), d0 = (d+ + d-)/2.
/// A window grows by one site on the side(s) the stencil reaches.
LatticeSignal discrete_derivative(const LatticeSignal& f, Difference which);

/// f(x+1) - 2 f(x) + f(x-1).
LatticeSignal discrete_laplacian(const LatticeSignal& f);

/// (S_-/4 + Id/2 + S_+/4) f, the smoothing that H o H reproduces with a minus sign.
LatticeSignal smoothing_average(const LatticeSignal& f);

}  // namespace dhilbert
