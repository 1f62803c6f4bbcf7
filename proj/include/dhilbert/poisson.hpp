#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dhilbert/signal.hpp"
#include "dhilbert/symbol.hpp"

namespace dhilbert {

/// u(x, y) = (P_y f)(x) with P_y = exp(-y sqrt(-Laplacian)) on the torus Z_N.
///
/// Stored spectrally: u(x, y) = (1/N) sum_k c_k e^{-a_k y} e^{2 pi i x k / N}
/// with c = DFT(f) and a_k = 2 |sin(pi k / N)|. y-derivatives are exact
/// spectral factors (-a_k, a_k^2); x-derivatives are lattice differences.
class HarmonicExtension {
 public:
  explicit HarmonicExtension(const LatticeSignal& base);

  std::size_t size() const { return n_; }
  const LatticeSignal& base() const { return base_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<const double> decay() const { return decay_; }

  double value(site_t x, double y) const;
  double dy(site_t x, double y) const;
  double dy2(site_t x, double y) const;
  double dx_plus(site_t x, double y) const { return value(x + 1, y) - value(x, y); }
  double dx_minus(site_t x, double y) const { return value(x, y) - value(x - 1, y); }
  double dx_centered(site_t x, double y) const { return 0.5 * (value(x + 1, y) - value(x - 1, y)); }
  double laplacian_x(site_t x, double y) const { return value(x + 1, y) - 2.0 * value(x, y) + value(x - 1, y); }

  /// P_y f as a torus signal.
  LatticeSignal slice(double y) const;
  /// d/dy P_y f as a torus signal.
  LatticeSignal slice_dy(double y) const;
  LatticeSignal slice_dy2(double y) const;

  /// Smallest nonzero decay rate, 2 sin(pi / N).
  double min_positive_decay() const { return decay_[1]; }

 private:
  // Sum_k w_k Re(c_k e^{2 pi i x k/N}) e^{-a_k y} with weights w_k = (-a_k)^order.
  double spectral_sum(site_t x, double y, int order) const;
  LatticeSignal spectral_slice(double y, int order) const;

  std::size_t n_;
  LatticeSignal base_;
  std::vector<cplx> coeffs_;
  std::vector<double> decay_;
  std::vector<double> cos_table_;
  std::vector<double> sin_table_;
};

/// Rejects window signals; embed them with embed_in_torus first.
HarmonicExtension extend(const LatticeSignal& f);

/// (dy u, d+x u, dy u, d-x u) at a point. g1 and g3 are the same derivative.
struct GradientVector4 {
  std::array<double, 4> g{};

  double dot(const GradientVector4& other) const;
  friend bool operator==(const GradientVector4&, const GradientVector4&) = default;
};

GradientVector4 gradient(const HarmonicExtension& u, site_t x, double y);

/// Constant 4x4 rotation with rows (0,0,0,-1), (0,0,1,0), (0,-1,0,0), (1,0,0,0).
/// Orthogonal, and squares to minus the identity.
struct RotationMatrixA {
  using Matrix = std::array<std::array<int, 4>, 4>;
  static constexpr Matrix entries{{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}};

  static GradientVector4 apply(const GradientVector4& v);
  static Matrix product(const Matrix& a, const Matrix& b);
  static Matrix transpose(const Matrix& a);
  static Matrix identity();
};

/// Rule for integrals int_0^inf F(y) y dy.
class YQuadrature {
 public:
  enum class Kind { closed_form, numeric };

  static YQuadrature closed_form();
  /// Gauss-Legendre in s = exp(-rate y) on (0, 1); `rate` is normally the
  /// smallest positive decay rate of the torus.
  static YQuadrature numeric(double rate, std::size_t nodes = default_nodes);
  /// Numeric rule with the rate of Z_N.
  static YQuadrature numeric_for_torus(std::size_t n, std::size_t nodes = default_nodes);

  static constexpr std::size_t default_nodes = 80;

  Kind kind() const { return kind_; }
  std::span<const double> nodes() const { return nodes_; }
  /// Weights for int_0^inf F(y) dy; multiply by y for the moment integral.
  std::span<const double> weights() const { return weights_; }

 private:
  Kind kind_ = Kind::closed_form;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// The four equal forms of the Littlewood-Paley identity plus the F'' moment.
struct LittlewoodPaleyForms {
  double dy_form = 0.0;        // 4 int (dy f, dy g) y dy
  double dplus_form = 0.0;     // 4 int (d+ f, d+ g) y dy
  double dminus_form = 0.0;    // 4 int (d- f, d- g) y dy
  double gradient_form = 0.0;  // int (grad f, grad g) y dy
  double second_moment = 0.0;  // int F''(y) y dy, F(y) = (P_y f, P_y g)
};

LittlewoodPaleyForms littlewood_paley_forms(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad);

/// int_0^inf sum_x (grad f, grad g) y dy, which reproduces (f, g) for mean-zero input.
double littlewood_paley_pairing(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad);

/// int_0^inf sum_x (A grad f, grad g) y dy, which reproduces (Hf, g).
double hilbert_weak_pairing(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad);

struct CauchyRiemannReport {
  std::size_t points = 0;
  double f_norm = 0.0;
  // One-sided pairs follow from H+- sqrt(-Lap) = d+-: dy v+- = -d+-x u and d-+x v+- = dy u.
  double dy_vplus = 0.0;      // |dy v+ + d+x u|
  double dy_vminus = 0.0;     // |dy v- + d-x u|
  double dminus_vplus = 0.0;  // |d-x v+ - dy u|
  double dplus_vminus = 0.0;  // |d+x v- - dy u|
  double dy_centered = 0.0;     // |dy v + d0x u|
  double dx_centered = 0.0;     // |d0x v - (S-/4 + Id/2 + S+/4) dy u|
  double harmonicity = 0.0;     // max |dyy w + Lap_x w| over u, v+, v-, v
  // Same pairs with the +- superscripts exchanged. Diagnostic only; this is O(|f|).
  double swapped_orientation = 0.0;

  double max_residual() const;
  bool passed(double rel_tol = 1e-8) const { return max_residual() <= rel_tol * f_norm; }
};

/// Requires a mean-zero torus signal.
CauchyRiemannReport cauchy_riemann_residuals(const LatticeSignal& f,
                                             const std::vector<std::pair<site_t, double>>& sample_points);

}  // namespace dhilbert
