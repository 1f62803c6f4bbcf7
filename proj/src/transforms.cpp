#include "dhilbert/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dhilbert {

namespace {

constexpr double pi = std::numbers::pi;

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cplx> dft(std::vector<cplx> data, int direction) {
  const int n = static_cast<int>(data.size());
  std::vector<cplx> out(data.size());
  auto* in_ptr = reinterpret_cast<fftw_complex*>(data.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in_ptr, out_ptr, direction, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

void require_hilbert_kernel(SymbolTag which) {
  switch (which) {
    case SymbolTag::h_plus:
    case SymbolTag::h_minus:
    case SymbolTag::h_centered:
    case SymbolTag::h_naive:
      return;
    default:
      throw std::invalid_argument("apply_kernel: operator '" + std::string(to_string(which)) +
                                  "' has no convolution kernel here");
  }
}

}  // namespace

double kernel_h(Sign sign, site_t n) {
  const double shift = sign == Sign::plus ? 0.5 : -0.5;
  return -1.0 / (pi * (static_cast<double>(n) + shift));
}

double kernel_centered(site_t n) {
  if (n == 0) return 0.0;
  const auto nd = static_cast<double>(n);
  return -nd / (pi * (nd * nd - 0.25));
}

double kernel_naive(site_t n) { return n == 0 ? 0.0 : -1.0 / (pi * static_cast<double>(n)); }

double kernel_value(SymbolTag which, site_t n) {
  switch (which) {
    case SymbolTag::h_plus: return kernel_h(Sign::plus, n);
    case SymbolTag::h_minus: return kernel_h(Sign::minus, n);
    case SymbolTag::h_centered: return kernel_centered(n);
    case SymbolTag::h_naive: return kernel_naive(n);
    default: require_hilbert_kernel(which);
  }
  return 0.0;
}

KernelResult apply_kernel(const LatticeSignal& f, SymbolTag which, site_t out_radius) {
  require_hilbert_kernel(which);
  if (!f.is_window()) throw std::invalid_argument("apply_kernel: torus input, use apply_spectral_torus");
  if (out_radius < 0) throw std::invalid_argument("apply_kernel: out_radius must be >= 0");

  const site_t lo = f.offset() - out_radius;
  const site_t hi = f.last() + out_radius;
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (site_t x = lo; x <= hi; ++x) {
    double acc = 0.0;
    for (site_t s = f.offset(); s <= f.last(); ++s) {
      const double v = f.at(s);
      if (v != 0.0) acc += kernel_value(which, x - s) * v;
    }
    out[static_cast<std::size_t>(x - lo)] = acc;
  }
  const double kmax = std::max(std::abs(kernel_value(which, out_radius + 1)),
                               std::abs(kernel_value(which, -out_radius - 1)));
  return {LatticeSignal::window(lo, std::move(out)), out_radius, f.l1_norm() * kmax};
}

std::vector<cplx> torus_spectrum(const LatticeSignal& f) {
  if (!f.is_torus()) throw std::invalid_argument("torus_spectrum: expects a torus signal");
  std::vector<cplx> data(f.values().begin(), f.values().end());
  return dft(std::move(data), FFTW_FORWARD);
}

LatticeSignal torus_from_spectrum(std::span<const cplx> coeffs) {
  std::vector<cplx> back = dft(std::vector<cplx>(coeffs.begin(), coeffs.end()), FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(coeffs.size());
  std::vector<double> out(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) out[i] = back[i].real() * scale;
  return LatticeSignal::torus(std::move(out));
}

double torus_frequency(std::size_t k, std::size_t n) {
  return reduce_frequency(static_cast<double>(k) / static_cast<double>(n));
}

LatticeSignal apply_spectral_torus(const LatticeSignal& f, const OperatorSymbol& op) {
  if (!f.is_torus()) throw std::invalid_argument("apply_spectral_torus: window input, use apply_kernel");
  std::vector<cplx> c = torus_spectrum(f);
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) c[k] *= eval_multiplier(op, torus_frequency(k, n));
  return torus_from_spectrum(c);
}

LatticeSignal apply_spectral_window(const LatticeSignal& f, const OperatorSymbol& op, const SpectralGrid& grid,
                                    SiteRange out) {
  if (!f.is_window()) throw std::invalid_argument("apply_spectral_window: expects a window signal");
  if (out.last < out.first) throw std::invalid_argument("apply_spectral_window: empty output window");
  if (grid.resolution() < 4 * (f.size() + out.length())) {
    throw std::invalid_argument("apply_spectral_window: grid resolution " + std::to_string(grid.resolution()) +
                                " below 4 * (input + output length)");
  }
  const std::size_t q = grid.resolution();
  // Weighted symbol times transform at each node.
  std::vector<cplx> weighted(q);
  for (std::size_t j = 0; j < q; ++j) {
    const double xi = grid.nodes[j];
    cplx fhat{};
    for (site_t x = f.offset(); x <= f.last(); ++x) {
      const double v = f.at(x);
      if (v != 0.0) fhat += v * std::polar(1.0, -2.0 * pi * static_cast<double>(x) * xi);
    }
    weighted[j] = grid.weights[j] * eval_multiplier(op, xi) * fhat;
  }
  std::vector<double> values(out.length());
  for (site_t x = out.first; x <= out.last; ++x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      acc += (weighted[j] * std::polar(1.0, 2.0 * pi * static_cast<double>(x) * grid.nodes[j])).real();
    }
    values[static_cast<std::size_t>(x - out.first)] = acc;
  }
  return LatticeSignal::window(out.first, std::move(values));
}

LatticeSignal shift(const LatticeSignal& f, int direction) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("shift: direction must be +1 or -1");
  if (f.is_window()) {
    return LatticeSignal::window(f.offset() + direction, std::vector<double>(f.values().begin(), f.values().end()));
  }
  const auto n = static_cast<site_t>(f.size());
  std::vector<double> out(f.size());
  for (site_t x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] = f.at(x - direction);
  return LatticeSignal::torus(std::move(out));
}

LatticeSignal discrete_derivative(const LatticeSignal& f, Difference which) {
  auto eval = [&](site_t x) {
    switch (which) {
      case Difference::plus: return f.at(x + 1) - f.at(x);
      case Difference::minus: return f.at(x) - f.at(x - 1);
      case Difference::centered: return 0.5 * (f.at(x + 1) - f.at(x - 1));
    }
    return 0.0;
  };
  if (f.is_torus()) {
    std::vector<double> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = eval(static_cast<site_t>(x));
    return LatticeSignal::torus(std::move(out));
  }
  const site_t lo = which == Difference::minus ? f.offset() : f.offset() - 1;
  const site_t hi = which == Difference::plus ? f.last() : f.last() + 1;
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (site_t x = lo; x <= hi; ++x) out[static_cast<std::size_t>(x - lo)] = eval(x);
  return LatticeSignal::window(lo, std::move(out));
}

LatticeSignal discrete_laplacian(const LatticeSignal& f) {
  const LatticeSignal dp = discrete_derivative(f, Difference::plus);
  const LatticeSignal dm = discrete_derivative(f, Difference::minus);
  return axpy(dp, -1.0, dm);
}

LatticeSignal smoothing_average(const LatticeSignal& f) {
  auto eval = [&](site_t x) { return 0.25 * f.at(x + 1) + 0.5 * f.at(x) + 0.25 * f.at(x - 1); };
  if (f.is_torus()) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = eval(static_cast<site_t>(i));
    return LatticeSignal::torus(std::move(v));
  }
  std::vector<double> v(f.size() + 2);
  for (site_t x = f.offset() - 1; x <= f.last() + 1; ++x) v[static_cast<std::size_t>(x - f.offset() + 1)] = eval(x);
  return LatticeSignal::window(f.offset() - 1, std::move(v));
}

}  // namespace dhilbert
