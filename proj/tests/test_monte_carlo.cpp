#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dhilbert/identities.hpp"
#include "dhilbert/monte_carlo.hpp"
#include "dhilbert/transforms.hpp"

using namespace dhilbert;

namespace {

WalkConfig quick_config(std::size_t paths) {
  WalkConfig c;
  c.torus = 8;
  c.y0 = 3.0;
  c.t_cap = 50.0 * 9.0;
  c.h0 = 2e-3;
  c.seed = 314;
  c.paths = paths;
  return c;
}

}  // namespace

TEST(Tally, MeanVarianceStandardError) {
  Tally t;
  for (double v : {1.0, 2.0, 3.0, 4.0}) t.add(v);
  EXPECT_DOUBLE_EQ(t.mean(), 2.5);
  EXPECT_NEAR(t.variance(), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.standard_error(), std::sqrt(5.0 / 12.0), 1e-15);
  Tally u;
  u.add(10.0);
  t.merge(u);
  EXPECT_EQ(t.count, 5u);
  EXPECT_EQ(Tally{}.variance(), 0.0);
}

TEST(MonteCarlo, ZeroSignal) {
  const McEstimate e = run_monte_carlo(quick_config(500), LatticeSignal::zero_torus(8));
  for (const auto& s : e.sites) EXPECT_EQ(s.mean, 0.0);
}

TEST(MonteCarlo, CountsAddUp) {
  const WalkConfig c = quick_config(3000);
  const McEstimate e = run_monte_carlo(c, centered_delta_torus(8, 0));
  std::size_t total = e.capped + e.aborted;
  for (const auto& s : e.sites) {
    total += s.count;
    EXPECT_NEAR(s.se, std::sqrt(s.variance / static_cast<double>(s.count)), 1e-15);
  }
  EXPECT_EQ(total, c.paths);
  EXPECT_EQ(e.aborted, 0u);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResults) {
  WalkConfig c = quick_config(5000);
  const auto f = centered_delta_torus(8, 1);
  const McEstimate one = run_monte_carlo(c, f);
  c.workers = 3;
  const McEstimate three = run_monte_carlo(c, f);
  for (std::size_t x = 0; x < 8; ++x) {
    EXPECT_EQ(one.sites[x].count, three.sites[x].count);
    EXPECT_EQ(one.sites[x].mean, three.sites[x].mean);
    EXPECT_EQ(one.sites[x].se, three.sites[x].se);
  }
  EXPECT_EQ(one.total_jumps, three.total_jumps);
}

TEST(MonteCarlo, ReconstructsHilbertTransform) {
  const WalkConfig c = quick_config(20000);
  const auto f = centered_delta_torus(8, 0);
  const McEstimate e = run_monte_carlo(c, f);
  // The walk starts at y0 = 3, so compare with the finite-height mean.
  const LatticeSignal ref = finite_height_hilbert(f, c.y0);
  int within = 0;
  for (const auto& s : e.sites) within += std::abs(s.mean - ref.at(s.x)) <= 3.0 * s.se + 0.01;
  EXPECT_GE(within, 7);
}

TEST(MonteCarlo, StatisticalInvariants) {
  const McEstimate e = run_monte_carlo(quick_config(8000), centered_delta_torus(8, 0));
  EXPECT_LE(std::abs(e.jump_rate - 1.0), 3.0 * e.jump_rate_se);
  EXPECT_LE(std::abs(e.martingale_mean), 3.0 * e.martingale_se);
  const ChiSquare chi = uniformity_chi_square(e);
  EXPECT_EQ(chi.dof, 7u);
  EXPECT_GT(chi.p_value, 0.01);
}

TEST(MonteCarlo, StandardErrorScaling) {
  const auto f = centered_delta_torus(8, 0);
  const double se1 = run_monte_carlo(quick_config(4000), f).median_se();
  const double se2 = run_monte_carlo(quick_config(8000), f).median_se();
  EXPECT_GE(se1 / se2, 1.35);
  EXPECT_LE(se1 / se2, 1.47);
}

TEST(MonteCarlo, RejectsUnusableConfigurations) {
  WalkConfig c = quick_config(200);
  c.t_cap = 1.0;
  EXPECT_THROW(run_monte_carlo(c, centered_delta_torus(8, 0)), std::runtime_error);
  EXPECT_THROW(run_monte_carlo(quick_config(10), delta_torus(8, 0)), std::invalid_argument);
  EXPECT_THROW(run_monte_carlo(quick_config(10), centered_delta_torus(16, 0)), std::invalid_argument);
}

TEST(FiniteHeight, MultiplierOracle) {
  std::mt19937_64 rng(8);
  const auto f = random_mean_zero_torus(12, rng);
  const double y0 = 2.5;
  // Direct evaluation of i cos(pi xi) sgn(xi) (1 - e^{-4 |sin pi xi| y0}) on each DFT bin.
  std::vector<double> out(12, 0.0);
  for (std::size_t k = 1; k < 12; ++k) {
    double xi = static_cast<double>(k) / 12.0;
    if (xi > 0.5) xi -= 1.0;
    cplx c = 0.0;
    for (std::size_t x = 0; x < 12; ++x) c += f.values()[x] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(x) * xi);
    const cplx m = cplx(0.0, std::cos(M_PI * xi) * (xi > 0 ? 1.0 : -1.0)) *
                   (1.0 - std::exp(-4.0 * std::abs(std::sin(M_PI * xi)) * y0));
    for (std::size_t x = 0; x < 12; ++x) out[x] += (m * c * std::polar(1.0, 2.0 * M_PI * static_cast<double>(x) * xi)).real() / 12.0;
  }
  EXPECT_LT(max_abs_difference(finite_height_hilbert(f, y0), LatticeSignal::torus(out)), 1e-13);
  const auto h = apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered});
  EXPECT_LT(max_abs_difference(finite_height_hilbert(f, 60.0), h), 1e-9);
}

TEST(Pairing, OddKernelGivesZeroOnDiagonal) {
  const auto f = centered_delta_torus(8, 0);
  const PairingEstimate p = pairing_mc(quick_config(6000), f, f);
  EXPECT_NEAR(p.reference, 0.0, 1e-14);
  EXPECT_LE(std::abs(p.estimate), 3.0 * p.se);
}

TEST(Pairing, ZeroSignal) {
  const auto z = LatticeSignal::zero_torus(8);
  const PairingEstimate p = pairing_mc(quick_config(300), z, centered_delta_torus(8, 0));
  EXPECT_EQ(p.estimate, 0.0);
  EXPECT_EQ(p.se, 0.0);
}

TEST(Pairing, BatchSharesPaths) {
  std::mt19937_64 rng(9);
  const auto f = random_mean_zero_torus(8, rng);
  const auto g = random_mean_zero_torus(8, rng);
  const WalkConfig c = quick_config(2000);
  const auto batch = pairing_mc_batch(c, {{f, g}, {g, f}});
  EXPECT_EQ(batch[0].estimate, pairing_mc(c, f, g).estimate);
  EXPECT_NEAR(batch[0].reference, -batch[1].reference, 1e-12);
}

TEST(Orthogonality, MeanBracketVanishes) {
  const OrthogonalityStat s = orthogonality_stat(quick_config(8000), centered_delta_torus(8, 0));
  EXPECT_LE(std::abs(s.mean_qcov), 3.0 * s.se);
  EXPECT_GT(s.nonzero_fraction, 0.5);
  const OrthogonalityStat z = orthogonality_stat(quick_config(100), LatticeSignal::zero_torus(8));
  EXPECT_EQ(z.mean_qcov, 0.0);
  EXPECT_EQ(z.se, 0.0);
}

TEST(Covariation, SelfBracketAgrees) {
  WalkConfig c = quick_config(1000);
  c.h0 = 1e-3;
  const auto f = centered_delta_torus(8, 0);
  const CovariationCheckReport r = covariation_formula_check(c, f, f, 1000);
  EXPECT_LE(r.relative_gap, 0.05);
  EXPECT_EQ(r.max_jump_gap, 0.0);
  EXPECT_EQ(r.consistent_variant, "plus");
  EXPECT_GT(r.nm_literal_max_abs_diff, 1e-3);
}

TEST(ItoOrder, ResidualShrinksLikeSqrtStep) {
  WalkConfig c = quick_config(500);
  c.y0 = 1.0;
  c.t_cap = 1.0;
  c.step.alpha = 0.0;
  const ItoOrderReport r = ito_order_check(c, centered_delta_torus(8, 0), {4e-3, 1e-3});
  ASSERT_EQ(r.ratios.size(), 1u);
  // Two halvings: expect about 2.
  EXPECT_GT(r.ratios[0], 1.5);
  EXPECT_LT(r.ratios[0], 2.7);
}

TEST(Reconstruction, Verdict) {
  McEstimate e;
  e.capped_fraction = 0.01;
  e.jump_rate = 1.001;
  e.jump_rate_se = 0.001;
  for (site_t x = 0; x < 8; ++x) e.sites.push_back({x, 100, x == 3 ? 0.5 : 0.0, 1e-4, 1e-3});
  const ReconstructionVerdict v = evaluate_reconstruction(e, LatticeSignal::zero_torus(8));
  EXPECT_EQ(v.sites_within, 7u);
  EXPECT_EQ(v.sites_required, 7u);
  EXPECT_TRUE(v.passed());
  e.capped_fraction = 0.1;
  EXPECT_FALSE(evaluate_reconstruction(e, LatticeSignal::zero_torus(8)).passed());
}
