#include "dhilbert/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dhilbert {

namespace {

site_t mod(site_t x, std::size_t n) {
  const auto m = static_cast<site_t>(n);
  site_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

LatticeSignal::LatticeSignal(SignalMode mode, site_t offset, std::vector<double> values)
    : mode_(mode), offset_(offset), values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("LatticeSignal: non-finite value at index " + std::to_string(i));
    }
  }
}

LatticeSignal LatticeSignal::window(site_t offset, std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("LatticeSignal: window length must be >= 1");
  return LatticeSignal(SignalMode::window, offset, std::move(values));
}

LatticeSignal LatticeSignal::torus(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("LatticeSignal: torus size must be >= 2");
  return LatticeSignal(SignalMode::torus, 0, std::move(values));
}

LatticeSignal LatticeSignal::zero_window(site_t offset, std::size_t length) {
  return window(offset, std::vector<double>(length, 0.0));
}

LatticeSignal LatticeSignal::zero_torus(std::size_t n) { return torus(std::vector<double>(n, 0.0)); }

double LatticeSignal::at(site_t x) const {
  if (is_torus()) return values_[static_cast<std::size_t>(mod(x, values_.size()))];
  if (x < offset_ || x > last()) return 0.0;
  return values_[static_cast<std::size_t>(x - offset_)];
}

double LatticeSignal::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double LatticeSignal::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s;
}

double LatticeSignal::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool LatticeSignal::mean_zero() const { return std::abs(sum()) <= 1e-12 * l1_norm(); }

double inner_product(const LatticeSignal& f, const LatticeSignal& g) {
  if (f.mode() != g.mode()) throw std::invalid_argument("inner_product: mode mismatch");
  double s = 0.0;
  if (f.is_torus()) {
    if (f.size() != g.size()) throw std::invalid_argument("inner_product: torus size mismatch");
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values()[i] * g.values()[i];
    return s;
  }
  const site_t lo = std::max(f.offset(), g.offset());
  const site_t hi = std::min(f.last(), g.last());
  for (site_t x = lo; x <= hi; ++x) s += f.at(x) * g.at(x);
  return s;
}

LatticeSignal axpy(const LatticeSignal& f, double scale, const LatticeSignal& g) {
  if (f.mode() != g.mode()) throw std::invalid_argument("axpy: mode mismatch");
  if (f.is_torus()) {
    if (f.size() != g.size()) throw std::invalid_argument("axpy: torus size mismatch");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.values()[i] + scale * g.values()[i];
    return LatticeSignal::torus(std::move(out));
  }
  const site_t lo = std::min(f.offset(), g.offset());
  const site_t hi = std::max(f.last(), g.last());
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (site_t x = lo; x <= hi; ++x) out[static_cast<std::size_t>(x - lo)] = f.at(x) + scale * g.at(x);
  return LatticeSignal::window(lo, std::move(out));
}

double max_abs_difference(const LatticeSignal& f, const LatticeSignal& g) {
  const LatticeSignal d = axpy(f, -1.0, g);
  double m = 0.0;
  for (double v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

LatticeSignal delta_window(site_t x) { return LatticeSignal::window(x, {1.0}); }

LatticeSignal delta_torus(std::size_t n, site_t x) {
  std::vector<double> v(n, 0.0);
  v[static_cast<std::size_t>(mod(x, n))] = 1.0;
  return LatticeSignal::torus(std::move(v));
}

LatticeSignal centered_delta_torus(std::size_t n, site_t x) {
  std::vector<double> v(n, -1.0 / static_cast<double>(n));
  v[static_cast<std::size_t>(mod(x, n))] += 1.0;
  return LatticeSignal::torus(std::move(v));
}

LatticeSignal embed_in_torus(const LatticeSignal& f, std::size_t n) {
  if (!f.is_window()) throw std::invalid_argument("embed_in_torus: expects a window signal");
  std::vector<double> v(n, 0.0);
  for (site_t x = f.offset(); x <= f.last(); ++x) v[static_cast<std::size_t>(mod(x, n))] += f.at(x);
  return LatticeSignal::torus(std::move(v));
}

}  // namespace dhilbert
