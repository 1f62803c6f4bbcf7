#include "dhilbert/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dhilbert/transforms.hpp"

namespace dhilbert {

namespace {

constexpr double pi = std::numbers::pi;

double sup_norm(const LatticeSignal& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

const OperatorSymbol hp{SymbolTag::h_plus};
const OperatorSymbol hm{SymbolTag::h_minus};
const OperatorSymbol hc{SymbolTag::h_centered};

}  // namespace

LatticeSignal random_mean_zero_torus(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  double mean = 0.0;
  for (auto& x : v) {
    x = normal(rng);
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (auto& x : v) x -= mean;
  return LatticeSignal::torus(std::move(v));
}

LatticeSignal random_window(site_t offset, std::size_t length, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(length);
  for (auto& x : v) x = normal(rng);
  return LatticeSignal::window(offset, std::move(v));
}

bool IdentityReport::passed(double tol) const {
  return adjoint_plus <= tol && adjoint_minus <= tol && inverse_pm <= tol && inverse_mp <= tol &&
         isometry_plus <= tol && isometry_minus <= tol && centered_square <= tol && square_plus <= tol &&
         square_minus <= tol && square_orientation_consistent;
}

IdentityReport identity_suite(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 8) throw std::invalid_argument("identity_suite: torus size must be >= 8");
  IdentityReport r;
  r.n = n;
  r.trials = trials;
  r.seed = seed;
  r.square_plus_other = r.square_minus_other = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);

  for (std::size_t t = 0; t < trials; ++t) {
    const LatticeSignal f = random_mean_zero_torus(n, rng);
    const LatticeSignal g = random_mean_zero_torus(n, rng);
    const LatticeSignal hpf = apply_spectral_torus(f, hp);
    const LatticeSignal hmf = apply_spectral_torus(f, hm);

    r.adjoint_plus = std::max(r.adjoint_plus,
                              std::abs(inner_product(hpf, g) + inner_product(f, apply_spectral_torus(g, hm))));
    r.adjoint_minus = std::max(r.adjoint_minus,
                               std::abs(inner_product(hmf, g) + inner_product(f, apply_spectral_torus(g, hp))));
    r.inverse_pm = std::max(r.inverse_pm, sup_norm(axpy(apply_spectral_torus(hmf, hp), 1.0, f)));
    r.inverse_mp = std::max(r.inverse_mp, sup_norm(axpy(apply_spectral_torus(hpf, hm), 1.0, f)));
    r.isometry_plus = std::max(r.isometry_plus, std::abs(hpf.l2_norm() / f.l2_norm() - 1.0));
    r.isometry_minus = std::max(r.isometry_minus, std::abs(hmf.l2_norm() / f.l2_norm() - 1.0));

    const LatticeSignal hhf = apply_spectral_torus(apply_spectral_torus(f, hc), hc);
    r.centered_square = std::max(r.centered_square, sup_norm(axpy(hhf, 1.0, smoothing_average(f))));

    auto fit = [&](const LatticeSignal& sq, int& direction, double& best, double& other) {
      const double res_plus = sup_norm(axpy(sq, 1.0, shift(f, 1)));
      const double res_minus = sup_norm(axpy(sq, 1.0, shift(f, -1)));
      const int d = res_plus <= res_minus ? 1 : -1;
      if (direction != 0 && direction != d) r.square_orientation_consistent = false;
      direction = d;
      best = std::max(best, std::min(res_plus, res_minus));
      other = std::min(other, std::max(res_plus, res_minus));
    };
    fit(apply_spectral_torus(hpf, hp), r.square_plus_direction, r.square_plus, r.square_plus_other);
    fit(apply_spectral_torus(hmf, hm), r.square_minus_direction, r.square_minus, r.square_minus_other);
  }
  if (trials == 0) r.square_plus_other = r.square_minus_other = 0.0;

  // Independent orientation check on Z by truncated double convolution.
  r.oracle_radius = 4096;
  auto square_at = [&](site_t x) {
    double acc = 0.0;
    for (site_t z = -r.oracle_radius; z <= r.oracle_radius; ++z) acc += kernel_h(Sign::plus, z) * kernel_h(Sign::plus, x - z);
    return acc;
  };
  r.oracle_square_plus_at_minus1 = square_at(-1);
  r.oracle_square_plus_at_plus1 = square_at(1);
  // -S_{-1} delta_0 = -delta_{-1}; -S_{+1} delta_0 = -delta_{+1}.
  r.oracle_square_plus_direction =
      std::abs(r.oracle_square_plus_at_minus1 + 1.0) < std::abs(r.oracle_square_plus_at_plus1 + 1.0) ? -1 : 1;
  return r;
}

DefiningRelationReport defining_relation_check(std::size_t samples, std::uint64_t seed) {
  using namespace std::complex_literals;
  DefiningRelationReport r;
  r.samples = samples;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  for (std::size_t i = 0; i < samples; ++i) {
    double xi = 0.0;
    while (xi == 0.0) xi = uni(rng);
    const double a = eval_multiplier(SymbolTag::sqrt_neg_laplacian, xi).real();
    const cplx mp = eval_multiplier(SymbolTag::h_plus, xi);
    const cplx mm = eval_multiplier(SymbolTag::h_minus, xi);
    r.max_residual_plus = std::max(r.max_residual_plus, std::abs(mp * a - (std::polar(1.0, 2.0 * pi * xi) - 1.0)));
    r.max_residual_minus = std::max(r.max_residual_minus, std::abs(mm * a - (1.0 - std::polar(1.0, -2.0 * pi * xi))));
    const cplx closed = 1i * std::cos(pi * xi) * (xi > 0 ? 1.0 : -1.0);
    r.max_centered_closed_form = std::max(r.max_centered_closed_form, std::abs(0.5 * (mp + mm) - closed));
  }
  return r;
}

KernelSpectralReport kernel_spectral_agreement(std::size_t trials, std::size_t max_support, site_t radius,
                                               std::size_t resolution, std::uint64_t seed) {
  KernelSpectralReport r{trials, max_support, radius, resolution, seed, 0.0};
  const SpectralGrid grid = make_spectral_grid(resolution);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len_dist(1, max_support);
  std::uniform_int_distribution<site_t> off_dist(-8, 8);
  const SymbolTag ops[] = {SymbolTag::h_plus, SymbolTag::h_minus, SymbolTag::h_centered};
  for (std::size_t t = 0; t < trials; ++t) {
    const LatticeSignal f = random_window(off_dist(rng), len_dist(rng), rng);
    for (SymbolTag op : ops) {
      const KernelResult k = apply_kernel(f, op, radius);
      const SiteRange out{k.signal.offset(), k.signal.last()};
      const LatticeSignal s = apply_spectral_window(f, OperatorSymbol{op}, grid, out);
      r.max_abs_difference = std::max(r.max_abs_difference, max_abs_difference(k.signal, s));
    }
  }
  return r;
}

MultiplierKernelReport multiplier_kernel_consistency(const std::vector<double>& xi_samples, std::size_t truncation) {
  if (truncation < 1000) throw std::invalid_argument("multiplier_kernel_consistency: truncation must be >= 1000");
  MultiplierKernelReport report;
  report.truncation = truncation;
  report.min_envelope_ratio = std::numeric_limits<double>::infinity();
  const std::size_t L = truncation;
  for (double xi : xi_samples) {
    if (reduce_frequency(xi) == 0.0) throw std::invalid_argument("multiplier_kernel_consistency: xi must avoid 0");
    for (Sign sign : {Sign::plus, Sign::minus}) {
      const cplx m = eval_multiplier(sign == Sign::plus ? SymbolTag::h_plus : SymbolTag::h_minus, xi);
      MultiplierKernelPoint p;
      p.xi = xi;
      p.sign = sign;
      cplx partial = kernel_h(sign, 0);
      cplx cesaro_acc = partial;
      for (std::size_t j = 1; j < 4 * L; ++j) {
        const auto n = static_cast<site_t>(j);
        const double phase = 2.0 * pi * static_cast<double>(n) * xi;
        partial += kernel_h(sign, n) * std::polar(1.0, -phase) + kernel_h(sign, -n) * std::polar(1.0, phase);
        const double err = std::abs(partial - m);
        if (j <= L) cesaro_acc += partial;
        if (j == L) {
          p.partial_error = err;
          p.cesaro_error = std::abs(cesaro_acc / static_cast<double>(L + 1) - m);
        }
        if (j >= L && j < 2 * L) p.envelope = std::max(p.envelope, err);
        if (j >= 2 * L) p.envelope_doubled = std::max(p.envelope_doubled, err);
      }
      p.envelope_ratio = p.envelope / p.envelope_doubled;
      report.max_cesaro_error = std::max(report.max_cesaro_error, p.cesaro_error);
      report.min_envelope_ratio = std::min(report.min_envelope_ratio, p.envelope_ratio);
      report.max_envelope_ratio = std::max(report.max_envelope_ratio, p.envelope_ratio);
      report.points.push_back(p);
    }
  }
  if (report.points.empty()) report.min_envelope_ratio = 0.0;
  return report;
}

NaiveContrastReport naive_contrast(site_t radius) {
  if (radius < 8) throw std::invalid_argument("naive_contrast: radius must be >= 8");
  NaiveContrastReport r;
  r.radius = radius;
  const KernelResult once = apply_kernel(delta_window(0), SymbolTag::h_naive, radius);
  const KernelResult twice = apply_kernel(once.signal, SymbolTag::h_naive, 0);
  r.anti_involution_defect = axpy(twice.signal, 1.0, delta_window(0)).l2_norm();
  r.norm_of_image = once.signal.l2_norm();
  return r;
}

}  // namespace dhilbert
