#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dhilbert/symbol.hpp"

using namespace dhilbert;
using namespace std::complex_literals;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Symbol, HPlusAtQuarter) {
  const cplx m = eval_multiplier(SymbolTag::h_plus, 0.25);
  EXPECT_NEAR(m.real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m.imag(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Symbol, HilbertSymbolsVanishAtZero) {
  for (auto t : {SymbolTag::h_plus, SymbolTag::h_minus, SymbolTag::h_centered, SymbolTag::h_naive}) {
    EXPECT_EQ(eval_multiplier(t, 0.0), cplx(0.0));
  }
}

TEST(Symbol, HilbertSymbolsAreUnimodularAwayFromZero) {
  for (double xi : {-0.49, -0.3, -0.01, 0.02, 0.25, 0.5}) {
    EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::h_plus, xi)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::h_minus, xi)), 1.0, 1e-15);
  }
}

TEST(Symbol, CenteredIsAverageOfOneSided) {
  for (double xi : {-0.4, -0.1, 0.1, 0.33}) {
    const cplx avg = 0.5 * (eval_multiplier(SymbolTag::h_plus, xi) + eval_multiplier(SymbolTag::h_minus, xi));
    EXPECT_NEAR(std::abs(avg - eval_multiplier(SymbolTag::h_centered, xi)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(avg - 1i * std::cos(pi * xi) * std::copysign(1.0, xi)), 0.0, 1e-15);
  }
}

TEST(Symbol, DefiningRelationAtSamplePoints) {
  for (double xi : {-0.45, -0.2, 0.05, 0.37}) {
    const double a = 2.0 * std::abs(std::sin(pi * xi));
    EXPECT_NEAR(eval_multiplier(SymbolTag::sqrt_neg_laplacian, xi).real(), a, 1e-15);
    const cplx dp = std::exp(2i * pi * xi) - 1.0;
    const cplx dm = 1.0 - std::exp(-2i * pi * xi);
    EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::h_plus, xi) * a - dp), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::h_minus, xi) * a - dm), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::deriv_plus, xi) - dp), 0.0, 1e-15);
  }
}

TEST(Symbol, ShiftsAndLaplacian) {
  const double xi = 0.1;
  // (S+ f)(x) = f(x-1) multiplies the transform by e^{-2 pi i xi}.
  EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::shift_plus, xi) - std::exp(-2i * pi * xi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval_multiplier(SymbolTag::shift_minus, xi) - std::exp(2i * pi * xi)), 0.0, 1e-15);
  EXPECT_NEAR(eval_multiplier(SymbolTag::laplacian, xi).real(), -4.0 * std::pow(std::sin(pi * xi), 2), 1e-15);
  EXPECT_NEAR(eval_multiplier(OperatorSymbol::poisson(2.0), xi).real(),
              std::exp(-4.0 * std::sin(pi * xi)), 1e-15);
}

TEST(Symbol, NaiveSymbolIsSawtooth) {
  EXPECT_NEAR(eval_multiplier(SymbolTag::h_naive, 0.25).imag(), 0.5, 1e-15);
  EXPECT_NEAR(eval_multiplier(SymbolTag::h_naive, -0.1).imag(), -0.8, 1e-15);
}

TEST(Symbol, PeriodicReduction) {
  EXPECT_DOUBLE_EQ(reduce_frequency(0.75), -0.25);
  EXPECT_DOUBLE_EQ(reduce_frequency(-0.5), 0.5);
  EXPECT_DOUBLE_EQ(reduce_frequency(0.5), 0.5);
  EXPECT_EQ(eval_multiplier(SymbolTag::h_plus, 1.25), eval_multiplier(SymbolTag::h_plus, 0.25));
}

TEST(Symbol, NamesRoundTrip) {
  for (auto t : {SymbolTag::h_plus, SymbolTag::h_minus, SymbolTag::h_centered, SymbolTag::h_naive,
                 SymbolTag::deriv_plus, SymbolTag::deriv_minus, SymbolTag::deriv_centered, SymbolTag::laplacian,
                 SymbolTag::sqrt_neg_laplacian, SymbolTag::shift_plus, SymbolTag::shift_minus,
                 SymbolTag::poisson_factor}) {
    EXPECT_EQ(parse_symbol_tag(to_string(t)), t);
  }
  EXPECT_THROW(parse_symbol_tag("hilbert"), std::invalid_argument);
}
