#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace dhilbert {

using cplx = std::complex<double>;

enum class Sign { plus, minus };

enum class SymbolTag {
  h_plus,
  h_minus,
  h_centered,
  h_naive,
  deriv_plus,
  deriv_minus,
  deriv_centered,
  laplacian,
  sqrt_neg_laplacian,
  shift_plus,
  shift_minus,
  poisson_factor,
};

/// A Fourier multiplier on Z, evaluated on the frequency interval (-1/2, 1/2].
///
/// Conventions: f^(xi) = sum_x f(x) e^{-2 pi i x xi}, inverse with e^{+2 pi i x xi}.
/// (S_+ f)(x) = f(x-1) and (S_- f)(x) = f(x+1). The three Hilbert symbols
/// vanish at xi = 0.
struct OperatorSymbol {
  SymbolTag tag = SymbolTag::h_centered;
  double y = 0.0;  // only used by poisson_factor

  static OperatorSymbol poisson(double y);
  friend bool operator==(const OperatorSymbol&, const OperatorSymbol&) = default;
};

/// Symbol of `op` at frequency `xi`. Symbols are 1-periodic, so any finite xi is
/// reduced into (-1/2, 1/2] first.
cplx eval_multiplier(const OperatorSymbol& op, double xi);

inline cplx eval_multiplier(SymbolTag tag, double xi) { return eval_multiplier(OperatorSymbol{tag, 0.0}, xi); }

/// Reduce xi into (-1/2, 1/2].
double reduce_frequency(double xi);

std::string_view to_string(SymbolTag tag);

/// Parses the CLI spellings (h, h+, h-, naive, d+, d-, d0, lap, sqrt-lap, s+, s-, poisson).
SymbolTag parse_symbol_tag(std::string_view name);

}  // namespace dhilbert
