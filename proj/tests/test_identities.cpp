#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dhilbert/identities.hpp"

using namespace dhilbert;

TEST(IdentitySuite, AllResidualsSmall) {
  const IdentityReport r = identity_suite(64, 20, 7);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.adjoint_plus, 1e-10);
  EXPECT_LE(r.inverse_pm, 1e-10);
  EXPECT_LE(r.isometry_minus, 1e-10);
  EXPECT_LE(r.centered_square, 1e-10);
}

TEST(IdentitySuite, SquareOrientation) {
  const IdentityReport r = identity_suite(32, 5, 3);
  ASSERT_TRUE(r.square_orientation_consistent);
  // With (S+ f)(x) = f(x-1): H+H+ = -S_- and H-H- = -S_+.
  EXPECT_EQ(r.square_plus_direction, -1);
  EXPECT_EQ(r.square_minus_direction, 1);
  EXPECT_GT(r.square_plus_other, 0.1);
  // The truncated convolution on Z agrees: (H+H+ delta_0)(-1) is close to -1.
  EXPECT_EQ(r.oracle_square_plus_direction, -1);
  EXPECT_NEAR(r.oracle_square_plus_at_minus1, -1.0, 1e-3);
  EXPECT_NEAR(r.oracle_square_plus_at_plus1, 0.0, 1e-3);
}

TEST(IdentitySuite, RejectsSmallTorus) { EXPECT_THROW(identity_suite(4, 1, 1), std::invalid_argument); }

TEST(DefiningRelation, TightOnRandomFrequencies) {
  const DefiningRelationReport r = defining_relation_check(10000, 1);
  EXPECT_LE(r.max_residual_plus, 1e-12);
  EXPECT_LE(r.max_residual_minus, 1e-12);
  EXPECT_LE(r.max_centered_closed_form, 1e-14);
}

TEST(KernelSpectral, Agree) {
  const KernelSpectralReport r = kernel_spectral_agreement(5, 9, 16, 2048, 4);
  EXPECT_LE(r.max_abs_difference, 1e-8);
}

TEST(MultiplierKernel, PartialSumsConverge) {
  const MultiplierKernelReport r = multiplier_kernel_consistency({0.1, -0.3, 0.45}, 1000);
  ASSERT_EQ(r.points.size(), 6u);
  EXPECT_LE(r.max_cesaro_error, 1e-2);
  // Error envelope halves when the truncation doubles.
  EXPECT_GT(r.min_envelope_ratio, 1.6);
  EXPECT_LT(r.max_envelope_ratio, 2.4);
  EXPECT_THROW(multiplier_kernel_consistency({0.0}, 1000), std::invalid_argument);
  EXPECT_THROW(multiplier_kernel_consistency({0.1}, 10), std::invalid_argument);
}

TEST(NaiveContrast, MatchesClosedForm) {
  // On Z: ||H_Z delta_0||^2 = 1/3 and ||H_Z^2 delta_0 + delta_0||^2 = 8/15.
  const NaiveContrastReport r = naive_contrast(4096);
  EXPECT_NEAR(r.norm_of_image, std::sqrt(1.0 / 3.0), 1e-3);
  EXPECT_NEAR(r.anti_involution_defect, std::sqrt(8.0 / 15.0), 2e-3);
  EXPECT_GT(naive_contrast(64).anti_involution_defect, 0.1);
}
