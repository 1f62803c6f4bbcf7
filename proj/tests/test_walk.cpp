#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dhilbert/identities.hpp"
#include "dhilbert/walk.hpp"

using namespace dhilbert;

namespace {

WalkConfig small_config() {
  WalkConfig c;
  c.torus = 8;
  c.y0 = 2.0;
  c.t_cap = 200.0;
  c.seed = 99;
  c.paths = 200;
  return c;
}

}  // namespace

TEST(WalkConfig, Validation) {
  WalkConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.step.dt_min = 2e-3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.y0 = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.t_cap = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.paths = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(WalkConfig, StepRule) {
  const WalkConfig c = small_config();
  EXPECT_DOUBLE_EQ(c.step_size(0.01), 1e-3);
  EXPECT_DOUBLE_EQ(c.step_size(5.0), 0.25);
  EXPECT_DOUBLE_EQ(c.step_size(100.0), 1.0);
}

TEST(WalkEngine, RejectsBadFields) {
  const WalkConfig c = small_config();
  EXPECT_THROW(WalkEngine(c, {delta_torus(8, 0)}), std::invalid_argument);
  EXPECT_THROW(WalkEngine(c, {centered_delta_torus(16, 0)}), std::invalid_argument);
  EXPECT_THROW(WalkEngine(c, {}), std::invalid_argument);
}

TEST(WalkEngine, ZeroSignalGivesZeros) {
  const WalkEngine e(small_config(), {LatticeSignal::zero_torus(8)});
  for (std::uint64_t i = 0; i < 50; ++i) {
    const PathRecord r = e.run(i);
    EXPECT_EQ(r.n_final, 0.0);
    EXPECT_EQ(r.m_final, 0.0);
    EXPECT_EQ(r.realized_qcov_mn, 0.0);
  }
}

TEST(WalkEngine, PathInvariants) {
  const WalkConfig c = small_config();
  const auto f = centered_delta_torus(8, 2);
  const WalkEngine e(c, {f});
  std::size_t hits = 0;
  for (std::uint64_t i = 0; i < c.paths; ++i) {
    const PathRecord r = e.run(i);
    ASSERT_FALSE(r.aborted);
    EXPECT_NE(r.hit, r.capped);
    EXPECT_LE(r.sim_time, c.t_cap + c.step.dt_max);
    EXPECT_GE(r.x_end, 0);
    EXPECT_LT(r.x_end, 8);
    if (r.hit) {
      ++hits;
      EXPECT_NEAR(r.m_final, f.at(r.x_end), 1e-12);
    }
  }
  EXPECT_GT(hits, c.paths / 2);
}

TEST(WalkEngine, Deterministic) {
  const WalkConfig c = small_config();
  const auto f = centered_delta_torus(8, 0);
  const WalkEngine e(c, {f});
  const PathRecord a = e.run(17);
  const PathRecord b = e.run(17);
  EXPECT_EQ(a.n_final, b.n_final);
  EXPECT_EQ(a.sim_time, b.sim_time);
  EXPECT_EQ(a.n_jumps, b.n_jumps);
  EXPECT_EQ(simulate_path(c, HarmonicExtension(f), 17).n_final, a.n_final);
  EXPECT_THROW(simulate_path(c, HarmonicExtension(f), c.paths), std::invalid_argument);
}

TEST(WalkEngine, ExtraFieldsDoNotChangeThePath) {
  const WalkConfig c = small_config();
  std::mt19937_64 rng(1);
  const auto f = random_mean_zero_torus(8, rng);
  const auto g = random_mean_zero_torus(8, rng);
  const WalkEngine single(c, {f});
  const WalkEngine both(c, {f, g});
  for (std::uint64_t i = 0; i < 20; ++i) {
    std::vector<double> n(2);
    const PathRecord a = single.run(i);
    const PathRecord b = both.run(i, n);
    EXPECT_EQ(a.n_final, b.n_final);
    EXPECT_EQ(a.x_end, b.x_end);
    EXPECT_EQ(n[0], a.n_final);
  }
}

TEST(WalkEngine, StartNearBoundary) {
  WalkConfig c = small_config();
  c.y0 = 1e-4;
  c.h0 = 1e-4;
  const auto f = centered_delta_torus(8, 0);
  const WalkEngine e(c, {f});
  int close = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const PathRecord r = e.run(i);
    if (std::abs(r.n_final) < 0.05 && std::abs(r.m_final - f.at(r.x_start)) < 0.05) ++close;
  }
  EXPECT_GE(close, 95);
}

TEST(WalkEngine, RealizedBracketIsNonzeroPathwise) {
  const WalkEngine e(small_config(), {centered_delta_torus(8, 0)});
  int nonzero = 0;
  for (std::uint64_t i = 0; i < 50; ++i) nonzero += std::abs(e.run(i).realized_qcov_mn) > 1e-6;
  EXPECT_GT(nonzero, 25);
}

TEST(WalkEngine, JumpTermsOfTheBrackets) {
  const WalkConfig c = small_config();
  std::mt19937_64 rng(2);
  const auto f = random_mean_zero_torus(8, rng);
  const auto g = random_mean_zero_torus(8, rng);
  const WalkEngine e(c, {f, g});
  double literal_gap = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    CovariationRecord cv;
    const PathRecord r = e.run(i, {}, &cv);
    // Substituting dX = +-1 in the [M^f, M^g] display reproduces each jump product.
    EXPECT_LE(cv.mm_jump_gap, 1e-15);
    // dN^f dM^g = dy f * (d+g after an up-jump, d-g after a down-jump).
    EXPECT_NEAR(cv.nm_jump_direct, cv.nm_jump_plus, 1e-12 * (1.0 + std::abs(cv.nm_jump_direct)));
    literal_gap = std::max(literal_gap, std::abs(cv.nm_jump_direct - cv.nm_jump_literal));
    if (r.n_jumps == 0) EXPECT_EQ(cv.mm_direct - cv.brownian_realized, 0.0);
  }
  EXPECT_GT(literal_gap, 1e-3);
}

TEST(WalkEngine, CovariationNeedsTwoFields) {
  const WalkEngine e(small_config(), {centered_delta_torus(8, 0)});
  CovariationRecord cv;
  EXPECT_THROW(e.run(0, {}, &cv), std::invalid_argument);
}
