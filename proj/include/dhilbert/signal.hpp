#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dhilbert {

using site_t = std::int64_t;

enum class SignalMode { window, torus };

/// Real-valued function on a finite window of Z or on the torus Z_N.
///
/// Window mode stores the sites offset .. offset+length-1 and is zero
/// elsewhere. Torus mode stores sites 0 .. N-1 and indexes modulo N.
/// Every stored value is finite.
class LatticeSignal {
 public:
  static LatticeSignal window(site_t offset, std::vector<double> values);
  static LatticeSignal torus(std::vector<double> values);
  static LatticeSignal zero_window(site_t offset, std::size_t length);
  static LatticeSignal zero_torus(std::size_t n);

  SignalMode mode() const { return mode_; }
  bool is_torus() const { return mode_ == SignalMode::torus; }
  bool is_window() const { return mode_ == SignalMode::window; }

  /// Window: first stored site. Torus: always 0.
  site_t offset() const { return offset_; }
  /// Last stored site (window mode).
  site_t last() const { return offset_ + static_cast<site_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }

  /// Value at an arbitrary site. Zero outside a window, periodic on a torus.
  double at(site_t x) const;

  std::span<const double> values() const { return values_; }

  double sum() const;
  double l1_norm() const;
  double l2_norm() const;

  /// Sum of values vanishes within 1e-12 * l1 norm.
  bool mean_zero() const;

  friend bool operator==(const LatticeSignal&, const LatticeSignal&) = default;

 private:
  LatticeSignal(SignalMode mode, site_t offset, std::vector<double> values);

  SignalMode mode_;
  site_t offset_;
  std::vector<double> values_;
};

/// Euclidean inner product over the common sites (window) or the torus.
double inner_product(const LatticeSignal& f, const LatticeSignal& g);

/// Pointwise f + scale * g. Both signals must share a mode; windows are
/// merged into the smallest window covering both.
LatticeSignal axpy(const LatticeSignal& f, double scale, const LatticeSignal& g);

/// Largest absolute pointwise difference, over the union of sites.
double max_abs_difference(const LatticeSignal& f, const LatticeSignal& g);

/// Unit impulse at site x (window of length 1, or a torus of size n).
LatticeSignal delta_window(site_t x);
LatticeSignal delta_torus(std::size_t n, site_t x);

/// delta at x minus its mean 1/n, the mean-zero impulse on Z_n.
LatticeSignal centered_delta_torus(std::size_t n, site_t x);

/// Periodize a window signal onto Z_n (sites are reduced modulo n and summed).
LatticeSignal embed_in_torus(const LatticeSignal& f, std::size_t n);

}  // namespace dhilbert
