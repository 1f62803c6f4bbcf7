#include "dhilbert/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "dhilbert/quadrature.hpp"
#include "dhilbert/transforms.hpp"

namespace dhilbert {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t wrap(site_t x, std::size_t n) {
  const auto m = static_cast<site_t>(n);
  site_t r = x % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

void require_mean_zero(const LatticeSignal& f, const char* who) {
  if (!f.is_torus()) throw std::invalid_argument(std::string(who) + ": expects a torus signal");
  if (!f.mean_zero()) {
    throw std::invalid_argument(std::string(who) + ": signal must be mean-zero (the a_0 = 0 mode does not decay)");
  }
}

// Spectral symbols of (dy, d+, dy, d-) for bin k, at unit y-decay.
std::array<cplx, 4> gradient_symbol(std::size_t k, std::size_t n) {
  const double xi = torus_frequency(k, n);
  const double a = eval_multiplier(SymbolTag::sqrt_neg_laplacian, xi).real();
  return {cplx(-a), eval_multiplier(SymbolTag::deriv_plus, xi), cplx(-a), eval_multiplier(SymbolTag::deriv_minus, xi)};
}

// (1/N) sum_{k != 0} Re(w_k f^_k conj(g^_k)) / (4 a_k^2): the closed-form value of
// int_0^inf (bilinear form with per-mode weight w_k) e^{-2 a_k y} y dy.
double closed_form_moment(const LatticeSignal& f, const LatticeSignal& g,
                          const std::function<cplx(std::size_t)>& mode_weight) {
  const std::vector<cplx> cf = torus_spectrum(f);
  const std::vector<cplx> cg = torus_spectrum(g);
  const std::size_t n = cf.size();
  double acc = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double a = 2.0 * std::abs(std::sin(pi * static_cast<double>(k) / static_cast<double>(n)));
    acc += (mode_weight(k) * cf[k] * std::conj(cg[k])).real() / (4.0 * a * a);
  }
  return acc / static_cast<double>(n);
}

struct Slices {
  LatticeSignal u, uy, uyy;
};

Slices slices_at(const HarmonicExtension& ext, double y) {
  return {ext.slice(y), ext.slice_dy(y), ext.slice_dy2(y)};
}

GradientVector4 gradient_from(const Slices& s, site_t x) {
  const double uy = s.uy.at(x);
  return {{uy, s.u.at(x + 1) - s.u.at(x), uy, s.u.at(x) - s.u.at(x - 1)}};
}

// int_0^inf Phi(y) y dy with Phi evaluated from slices of both extensions.
double numeric_moment(const HarmonicExtension& ef, const HarmonicExtension& eg, const YQuadrature& quad,
                      const std::function<double(const Slices&, const Slices&)>& integrand) {
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes().size(); ++i) {
    const double y = quad.nodes()[i];
    acc += quad.weights()[i] * y * integrand(slices_at(ef, y), slices_at(eg, y));
  }
  return acc;
}

double sum_gradient_products(const Slices& sf, const Slices& sg, bool rotate) {
  double acc = 0.0;
  const auto n = static_cast<site_t>(sf.u.size());
  for (site_t x = 0; x < n; ++x) {
    GradientVector4 gf = gradient_from(sf, x);
    if (rotate) gf = RotationMatrixA::apply(gf);
    acc += gf.dot(gradient_from(sg, x));
  }
  return acc;
}

}  // namespace

HarmonicExtension::HarmonicExtension(const LatticeSignal& base)
    : n_(base.size()), base_(base), coeffs_(torus_spectrum(base)), decay_(n_), cos_table_(n_), sin_table_(n_) {
  for (std::size_t k = 0; k < n_; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_);
    decay_[k] = 2.0 * std::abs(std::sin(pi * t));
    cos_table_[k] = std::cos(2.0 * pi * t);
    sin_table_[k] = std::sin(2.0 * pi * t);
  }
}

double HarmonicExtension::spectral_sum(site_t x, double y, int order) const {
  const std::size_t xr = wrap(x, n_);
  double acc = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t idx = (xr * k) % n_;
    const double re = coeffs_[k].real() * cos_table_[idx] - coeffs_[k].imag() * sin_table_[idx];
    double w = std::exp(-decay_[k] * y);
    if (order == 1) w *= -decay_[k];
    if (order == 2) w *= decay_[k] * decay_[k];
    acc += w * re;
  }
  return acc / static_cast<double>(n_);
}

double HarmonicExtension::value(site_t x, double y) const {
  if (y == 0.0) return base_.at(x);
  return spectral_sum(x, y, 0);
}

double HarmonicExtension::dy(site_t x, double y) const { return spectral_sum(x, y, 1); }
double HarmonicExtension::dy2(site_t x, double y) const { return spectral_sum(x, y, 2); }

LatticeSignal HarmonicExtension::spectral_slice(double y, int order) const {
  std::vector<cplx> c(coeffs_);
  for (std::size_t k = 0; k < n_; ++k) {
    double w = std::exp(-decay_[k] * y);
    if (order == 1) w *= -decay_[k];
    if (order == 2) w *= decay_[k] * decay_[k];
    c[k] *= w;
  }
  return torus_from_spectrum(c);
}

LatticeSignal HarmonicExtension::slice(double y) const {
  if (y < 0.0) throw std::invalid_argument("HarmonicExtension: y must be >= 0");
  return y == 0.0 ? base_ : spectral_slice(y, 0);
}

LatticeSignal HarmonicExtension::slice_dy(double y) const {
  if (y < 0.0) throw std::invalid_argument("HarmonicExtension: y must be >= 0");
  return spectral_slice(y, 1);
}

LatticeSignal HarmonicExtension::slice_dy2(double y) const {
  if (y < 0.0) throw std::invalid_argument("HarmonicExtension: y must be >= 0");
  return spectral_slice(y, 2);
}

HarmonicExtension extend(const LatticeSignal& f) {
  if (!f.is_torus()) throw std::invalid_argument("extend: window signal, embed it into a torus first");
  return HarmonicExtension(f);
}

double GradientVector4::dot(const GradientVector4& other) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += g[i] * other.g[i];
  return acc;
}

GradientVector4 gradient(const HarmonicExtension& u, site_t x, double y) {
  const double uy = u.dy(x, y);
  return {{uy, u.dx_plus(x, y), uy, u.dx_minus(x, y)}};
}

GradientVector4 RotationMatrixA::apply(const GradientVector4& v) {
  GradientVector4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out.g[i] += entries[i][j] * v.g[j];
  }
  return out;
}

RotationMatrixA::Matrix RotationMatrixA::product(const Matrix& a, const Matrix& b) {
  Matrix c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RotationMatrixA::Matrix RotationMatrixA::transpose(const Matrix& a) {
  Matrix t{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

RotationMatrixA::Matrix RotationMatrixA::identity() {
  Matrix m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1;
  return m;
}

YQuadrature YQuadrature::closed_form() { return YQuadrature{}; }

YQuadrature YQuadrature::numeric(double rate, std::size_t nodes) {
  if (!(rate > 0.0)) throw std::invalid_argument("YQuadrature: rate must be positive");
  if (nodes == 0) throw std::invalid_argument("YQuadrature: need at least one node");
  // y = -ln(s) / rate, dy = ds / (rate s).
  const GaussRule gl = gauss_legendre(nodes, 0.0, 1.0);
  YQuadrature q;
  q.kind_ = Kind::numeric;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double s = gl.nodes[i];
    q.nodes_.push_back(-std::log(s) / rate);
    q.weights_.push_back(gl.weights[i] / (rate * s));
  }
  return q;
}

YQuadrature YQuadrature::numeric_for_torus(std::size_t n, std::size_t nodes) {
  if (n < 2) throw std::invalid_argument("YQuadrature: torus size must be >= 2");
  return numeric(2.0 * std::sin(pi / static_cast<double>(n)), nodes);
}

LittlewoodPaleyForms littlewood_paley_forms(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad) {
  require_mean_zero(f, "littlewood_paley_forms");
  require_mean_zero(g, "littlewood_paley_forms");
  if (f.size() != g.size()) throw std::invalid_argument("littlewood_paley_forms: torus size mismatch");
  const std::size_t n = f.size();
  LittlewoodPaleyForms out;
  if (quad.kind() == YQuadrature::Kind::closed_form) {
    auto component = [&](std::size_t i) {
      return closed_form_moment(f, g, [&](std::size_t k) {
        const cplx s = gradient_symbol(k, n)[i];
        return 4.0 * s * std::conj(s);
      });
    };
    out.dy_form = component(0);
    out.dplus_form = component(1);
    out.dminus_form = component(3);
    out.gradient_form = closed_form_moment(f, g, [&](std::size_t k) {
      cplx acc{};
      for (const cplx& s : gradient_symbol(k, n)) acc += s * std::conj(s);
      return acc;
    });
    out.second_moment = closed_form_moment(f, g, [&](std::size_t k) {
      const double a = gradient_symbol(k, n)[0].real();
      return cplx(4.0 * a * a);
    });
    return out;
  }
  const HarmonicExtension ef(f);
  const HarmonicExtension eg(g);
  out.dy_form = 4.0 * numeric_moment(ef, eg, quad, [](const Slices& a, const Slices& b) {
    return inner_product(a.uy, b.uy);
  });
  out.dplus_form = 4.0 * numeric_moment(ef, eg, quad, [](const Slices& a, const Slices& b) {
    return inner_product(discrete_derivative(a.u, Difference::plus), discrete_derivative(b.u, Difference::plus));
  });
  out.dminus_form = 4.0 * numeric_moment(ef, eg, quad, [](const Slices& a, const Slices& b) {
    return inner_product(discrete_derivative(a.u, Difference::minus), discrete_derivative(b.u, Difference::minus));
  });
  out.gradient_form = numeric_moment(ef, eg, quad, [](const Slices& a, const Slices& b) {
    return sum_gradient_products(a, b, false);
  });
  out.second_moment = numeric_moment(ef, eg, quad, [](const Slices& a, const Slices& b) {
    return inner_product(a.uyy, b.u) + 2.0 * inner_product(a.uy, b.uy) + inner_product(a.u, b.uyy);
  });
  return out;
}

double littlewood_paley_pairing(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad) {
  require_mean_zero(f, "littlewood_paley_pairing");
  require_mean_zero(g, "littlewood_paley_pairing");
  if (f.size() != g.size()) throw std::invalid_argument("littlewood_paley_pairing: torus size mismatch");
  if (quad.kind() == YQuadrature::Kind::closed_form) {
    const std::size_t n = f.size();
    return closed_form_moment(f, g, [&](std::size_t k) {
      cplx acc{};
      for (const cplx& s : gradient_symbol(k, n)) acc += s * std::conj(s);
      return acc;
    });
  }
  return numeric_moment(HarmonicExtension(f), HarmonicExtension(g), quad,
                        [](const Slices& a, const Slices& b) { return sum_gradient_products(a, b, false); });
}

double hilbert_weak_pairing(const LatticeSignal& f, const LatticeSignal& g, const YQuadrature& quad) {
  require_mean_zero(f, "hilbert_weak_pairing");
  require_mean_zero(g, "hilbert_weak_pairing");
  if (f.size() != g.size()) throw std::invalid_argument("hilbert_weak_pairing: torus size mismatch");
  if (quad.kind() == YQuadrature::Kind::closed_form) {
    const std::size_t n = f.size();
    return closed_form_moment(f, g, [&](std::size_t k) {
      const auto s = gradient_symbol(k, n);
      cplx acc{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) acc += static_cast<double>(RotationMatrixA::entries[i][j]) * s[j] * std::conj(s[i]);
      return acc;
    });
  }
  return numeric_moment(HarmonicExtension(f), HarmonicExtension(g), quad,
                        [](const Slices& a, const Slices& b) { return sum_gradient_products(a, b, true); });
}

double CauchyRiemannReport::max_residual() const {
  return std::max({dy_vplus, dy_vminus, dminus_vplus, dplus_vminus, dy_centered, dx_centered, harmonicity});
}

CauchyRiemannReport cauchy_riemann_residuals(const LatticeSignal& f,
                                             const std::vector<std::pair<site_t, double>>& sample_points) {
  require_mean_zero(f, "cauchy_riemann_residuals");
  const HarmonicExtension u(f);
  const HarmonicExtension vp(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_plus}));
  const HarmonicExtension vm(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_minus}));
  const HarmonicExtension v(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered}));

  CauchyRiemannReport r;
  r.points = sample_points.size();
  r.f_norm = f.l2_norm();
  auto upd = [](double& slot, double value) { slot = std::max(slot, std::abs(value)); };
  for (const auto& [x, y] : sample_points) {
    const double uy = u.dy(x, y);
    upd(r.dy_vplus, vp.dy(x, y) + u.dx_plus(x, y));
    upd(r.dy_vminus, vm.dy(x, y) + u.dx_minus(x, y));
    upd(r.dminus_vplus, vp.dx_minus(x, y) - uy);
    upd(r.dplus_vminus, vm.dx_plus(x, y) - uy);
    for (double w : {vp.dy(x, y) + u.dx_minus(x, y), vm.dy(x, y) + u.dx_plus(x, y), vp.dx_plus(x, y) - uy,
                     vm.dx_minus(x, y) - uy}) {
      upd(r.swapped_orientation, w);
    }
    upd(r.dy_centered, v.dy(x, y) + u.dx_centered(x, y));
    const double smoothed_uy = 0.25 * u.dy(x + 1, y) + 0.5 * uy + 0.25 * u.dy(x - 1, y);
    upd(r.dx_centered, v.dx_centered(x, y) - smoothed_uy);
    for (const HarmonicExtension* w : {&u, &vp, &vm, &v}) upd(r.harmonicity, w->dy2(x, y) + w->laplacian_x(x, y));
  }
  return r;
}

}  // namespace dhilbert
