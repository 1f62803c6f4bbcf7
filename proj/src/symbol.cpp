#include "dhilbert/symbol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dhilbert {

namespace {

constexpr double pi = std::numbers::pi;

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

OperatorSymbol OperatorSymbol::poisson(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw std::invalid_argument("PoissonFactor: y must be finite and >= 0");
  return {SymbolTag::poisson_factor, y};
}

double reduce_frequency(double xi) {
  double r = xi - std::floor(xi);  // [0, 1)
  if (r > 0.5) r -= 1.0;
  return r;
}

cplx eval_multiplier(const OperatorSymbol& op, double xi) {
  using namespace std::complex_literals;
  xi = reduce_frequency(xi);
  // sin(pi xi) changes sign only at xi = 0 on (-1/2, 1/2].
  const double sgn = sign_of(xi);
  const double s = std::sin(pi * xi);
  switch (op.tag) {
    case SymbolTag::h_plus:
      return sgn == 0.0 ? cplx{} : 1i * std::polar(1.0, pi * xi) * sgn;
    case SymbolTag::h_minus:
      return sgn == 0.0 ? cplx{} : 1i * std::polar(1.0, -pi * xi) * sgn;
    case SymbolTag::h_centered:
      return 1i * (std::cos(pi * xi) * sgn);
    case SymbolTag::h_naive:
      // -1/(pi n), n != 0, sums to the sawtooth i sign(xi) (1 - 2|xi|).
      return 1i * (sgn * (1.0 - 2.0 * std::abs(xi)));
    case SymbolTag::deriv_plus:
      return std::polar(1.0, 2.0 * pi * xi) - 1.0;
    case SymbolTag::deriv_minus:
      return 1.0 - std::polar(1.0, -2.0 * pi * xi);
    case SymbolTag::deriv_centered:
      return 1i * std::sin(2.0 * pi * xi);
    case SymbolTag::laplacian:
      return -4.0 * s * s;
    case SymbolTag::sqrt_neg_laplacian:
      return 2.0 * std::abs(s);
    case SymbolTag::shift_plus:
      return std::polar(1.0, -2.0 * pi * xi);
    case SymbolTag::shift_minus:
      return std::polar(1.0, 2.0 * pi * xi);
    case SymbolTag::poisson_factor:
      return std::exp(-2.0 * op.y * std::abs(s));
  }
  return {};
}

std::string_view to_string(SymbolTag tag) {
  switch (tag) {
    case SymbolTag::h_plus: return "h+";
    case SymbolTag::h_minus: return "h-";
    case SymbolTag::h_centered: return "h";
    case SymbolTag::h_naive: return "naive";
    case SymbolTag::deriv_plus: return "d+";
    case SymbolTag::deriv_minus: return "d-";
    case SymbolTag::deriv_centered: return "d0";
    case SymbolTag::laplacian: return "lap";
    case SymbolTag::sqrt_neg_laplacian: return "sqrt-lap";
    case SymbolTag::shift_plus: return "s+";
    case SymbolTag::shift_minus: return "s-";
    case SymbolTag::poisson_factor: return "poisson";
  }
  return "?";
}

SymbolTag parse_symbol_tag(std::string_view name) {
  for (auto tag : {SymbolTag::h_plus, SymbolTag::h_minus, SymbolTag::h_centered, SymbolTag::h_naive,
                   SymbolTag::deriv_plus, SymbolTag::deriv_minus, SymbolTag::deriv_centered,
                   SymbolTag::laplacian, SymbolTag::sqrt_neg_laplacian, SymbolTag::shift_plus,
                   SymbolTag::shift_minus, SymbolTag::poisson_factor}) {
    if (to_string(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
}

}  // namespace dhilbert
