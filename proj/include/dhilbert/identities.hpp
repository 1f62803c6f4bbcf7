#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dhilbert/signal.hpp"
#include "dhilbert/symbol.hpp"

namespace dhilbert {

/// Gaussian values with the mean removed.
LatticeSignal random_mean_zero_torus(std::size_t n, std::mt19937_64& rng);

/// Gaussian values on a window of the given length.
LatticeSignal random_window(site_t offset, std::size_t length, std::mt19937_64& rng);

inline constexpr double identity_tolerance = 1e-10;

/// Residuals of the algebraic identities of H+, H-, H on random mean-zero
/// torus signals. Each field is the maximum over all trials.
struct IdentityReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  double adjoint_plus = 0.0;    // |(H+ f, g) + (f, H- g)|
  double adjoint_minus = 0.0;   // |(H- f, g) + (f, H+ g)|
  double inverse_pm = 0.0;      // ||H+ H- f + f||_inf
  double inverse_mp = 0.0;      // ||H- H+ f + f||_inf
  double isometry_plus = 0.0;   // | ||H+ f|| / ||f|| - 1 |
  double isometry_minus = 0.0;
  double centered_square = 0.0;  // ||H H f + (S_-/4 + Id/2 + S_+/4) f||_inf

  // H+H+ = -S_d and H-H- = -S_{d'}; the shift direction is fitted per trial.
  int square_plus_direction = 0;   // +1 means S_{+1}, -1 means S_{-1}
  int square_minus_direction = 0;
  bool square_orientation_consistent = true;
  double square_plus = 0.0;        // residual for the fitted direction
  double square_minus = 0.0;
  double square_plus_other = 0.0;  // residual for the rejected direction (min over trials)
  double square_minus_other = 0.0;

  // Convolution oracle on Z: (H+ H+ delta_0)(x) at x = -1, +1 from truncated kernel sums.
  site_t oracle_radius = 0;
  double oracle_square_plus_at_minus1 = 0.0;
  double oracle_square_plus_at_plus1 = 0.0;
  int oracle_square_plus_direction = 0;

  bool passed(double tol = identity_tolerance) const;
};

IdentityReport identity_suite(std::size_t n, std::size_t trials, std::uint64_t seed);

/// Max over random xi in (-1/2,1/2)\{0} of |m(xi) 2|sin(pi xi)| - d^(xi)| for H+ and H-.
struct DefiningRelationReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_residual_plus = 0.0;
  double max_residual_minus = 0.0;
  double max_centered_closed_form = 0.0;  // |(m+ + m-)/2 - i cos(pi xi) sign(xi)|
};

DefiningRelationReport defining_relation_check(std::size_t samples, std::uint64_t seed);

/// apply_kernel versus apply_spectral_window on random finitely supported signals.
struct KernelSpectralReport {
  std::size_t trials = 0;
  std::size_t max_support = 0;
  site_t radius = 0;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;
  double max_abs_difference = 0.0;
};

KernelSpectralReport kernel_spectral_agreement(std::size_t trials, std::size_t max_support, site_t radius,
                                               std::size_t resolution, std::uint64_t seed);

/// Fourier series of the one-sided kernels against their closed-form symbols.
struct MultiplierKernelPoint {
  double xi = 0.0;
  Sign sign = Sign::plus;
  double cesaro_error = 0.0;    // |sigma_L - m|, Cesaro mean of the symmetric partial sums
  double partial_error = 0.0;   // |S_L - m|
  double envelope = 0.0;        // max_{L <= j < 2L} |S_j - m|
  double envelope_doubled = 0.0;  // max_{2L <= j < 4L} |S_j - m|
  double envelope_ratio = 0.0;
};

struct MultiplierKernelReport {
  std::size_t truncation = 0;
  std::vector<MultiplierKernelPoint> points;
  double max_cesaro_error = 0.0;
  double min_envelope_ratio = 0.0;
  double max_envelope_ratio = 0.0;
};

MultiplierKernelReport multiplier_kernel_consistency(const std::vector<double>& xi_samples, std::size_t truncation);

/// The naive kernel -1/(pi n) fails both isometry and anti-involution.
struct NaiveContrastReport {
  site_t radius = 0;
  double anti_involution_defect = 0.0;  // ||H_Z H_Z delta_0 + delta_0||_2 on [-R, R]
  double norm_of_image = 0.0;           // ||H_Z delta_0||_2 on [-R, R]
};

NaiveContrastReport naive_contrast(site_t radius);

}  // namespace dhilbert
