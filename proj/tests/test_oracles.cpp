#include <gtest/gtest.h>

#include "dswkit/closed_forms.hpp"
#include "dswkit/oracles.hpp"
#include "dswkit/utm.hpp"

using namespace dswkit;

namespace {

const ModelParams kRef = ModelParams::make(1.0, 4.0);

MolOptions quick() {
  MolOptions o;
  o.certify = false;
  return o;
}

}  // namespace

TEST(GridSpec, Validation) {
  EXPECT_THROW((GridSpec{1.0, 2.0, 1024, 1e-3}.validate()), DomainError);
  EXPECT_THROW((GridSpec{-1.0, 2.0, 100, 1e-3}.validate()), DomainError);
  EXPECT_THROW((GridSpec{-1.0, 2.0, 1024, 0.0}.validate()), DomainError);
  const GridSpec g{-30, 30, 1024, 1e-3};
  EXPECT_DOUBLE_EQ(g.refined().dx(), g.dx() / 2);
}

TEST(Profile, InterpolatesCubicsExactly) {
  Profile p;
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.1 * i;
    p.x.push_back(x);
    p.value.push_back(x * x * x - x);
  }
  for (double x : {0.05, 0.333, 1.97}) EXPECT_NEAR(p.at(x), x * x * x - x, 1e-13);
  EXPECT_EQ(p.at(-1.0), p.value.front());
}

TEST(Mol, ZeroTimeIsSmoothedStep) {
  const auto r = mol_interface_solve(kRef, GridSpec{-30, 30, 2048, 1e-3}, 0.0, quick());
  EXPECT_DOUBLE_EQ(r.profile.at(-5.0), 1.0);
  EXPECT_DOUBLE_EQ(r.profile.at(5.0), 0.0);
}

TEST(Mol, ZeroAmplitudeStaysZero) {
  const auto r = mol_interface_solve(ModelParams{0.0, 4.0}, GridSpec{-30, 30, 1024, 1e-2}, 0.5, quick());
  for (double v : r.profile.value) EXPECT_EQ(v, 0.0);
}

// Only the right state is a true far field at this size: on the left the
// dispersive tail still has O(0.1) amplitude at x = -20 by t = 1.
TEST(Mol, RightFarFieldIsConserved) {
  const auto r = mol_interface_solve(kRef, GridSpec{-30, 30, 4096, 1e-3}, 1.0, quick());
  EXPECT_NEAR(r.profile.value.back(), 0.0, 1e-8);
  EXPECT_NEAR(r.profile.at(20.0), 0.0, 1e-8);
}

TEST(Mol, WithoutLeftJumpReproducesLinearizedKdv) {
  MolOptions o = quick();
  o.zero_left_jump = true;
  const double t = 0.5;
  const auto r = mol_interface_solve(kRef, GridSpec{-30, 30, 8192, 1e-3}, t, o);
  double worst = 0.0;
  for (double x = -10; x <= 10; x += 0.1) {
    // Traveling frame: q(x, t) = u(x + c t, t).
    worst = std::max(worst, std::abs(r.profile.at(x) - lkdv_step(x + kRef.c * t, t, kRef.a)));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Mol, CertifiedRunAgreesWithEvaluator) {
  const auto r = mol_interface_solve(kRef, GridSpec{}, 1.0);
  EXPECT_LE(r.refinement_discrepancy, 1e-4);
  for (double x : {-8.0, -2.0, -1.0, 0.0, 1.0, 3.0}) {
    EXPECT_NEAR(r.profile.at(x), evaluate_value(x, 1.0, kRef), 1e-4) << x;
  }
}

TEST(Mol, UncertifiableRunThrows) {
  MolOptions o;
  o.tolerance = 1e-12;
  EXPECT_THROW(mol_interface_solve(kRef, GridSpec{-30, 30, 1024, 1e-2}, 0.5, o),
               OracleUnconvergedError);
}

TEST(SplitStep, ZeroAmplitudeStaysZero) {
  SplitStepOptions o;
  o.certify = false;
  const auto r = kdv_split_step(0.0, GridSpec{-40, 40, 4096, 1.0}, 0.1, 0.05, o);
  for (double v : r.profile.value) EXPECT_EQ(v, 0.0);
}

TEST(SplitStep, ConservesMassWithoutSponge) {
  SplitStepOptions o;
  o.certify = false;
  o.sponge_fraction = 0.0;
  o.resolution_tol = 1.0;
  const auto r = kdv_split_step(1.0, GridSpec{-40, 40, 8192, 1.0}, 0.1, 0.05, o);
  EXPECT_LT(std::abs(r.mass_drift), 1e-8);
}

TEST(SplitStep, LinearModeMatchesSimilaritySolution) {
  SplitStepOptions o;
  o.certify = false;
  o.nonlinear = false;
  const double t = 0.1, w = 0.05;
  const auto coarse = kdv_split_step(1.0, default_kdv_grid(), t, w, o);
  const auto fine = kdv_split_step(1.0, default_kdv_grid().refined(), t, w / 2, o);
  double raw = 0.0, extrapolated = 0.0;
  for (double x = -10; x <= 10; x += 0.05) {
    const double exact = lkdv_step(x, t, 1.0);
    raw = std::max(raw, std::abs(coarse.profile.at(x) - exact));
    // The smoothed datum biases the profile by O(w^2); remove it.
    const double u = (4.0 * fine.profile.at(x) - coarse.profile.at(x)) / 3.0;
    extrapolated = std::max(extrapolated, std::abs(u - exact));
  }
  EXPECT_LT(raw, 1e-4 + w * w);
  EXPECT_LT(extrapolated, 1e-4);
}

TEST(SplitStep, CoarseGridIsRejected) {
  SplitStepOptions o;
  o.certify = false;
  EXPECT_THROW(kdv_split_step(1.0, GridSpec{-40, 40, 512, 1.0}, 0.1, 0.05, o), ResolutionError);
}

TEST(ErrorCurves, SmallAmplitudeCurvesAreSmall) {
  ErrorCurveOptions o;
  o.points = 81;
  const ErrorCurves ec = error_curves(0.05, 0.1, default_kdv_grid(), o);
  ASSERT_EQ(ec.x.size(), 81u);
  EXPECT_LT(ec.max_model() * 0.05, 5e-3);
  EXPECT_LT(ec.max_lkdv() * 0.05, 5e-3);
  EXPECT_LT(ec.max_model(), ec.max_lkdv());
  EXPECT_THROW(error_curves(0.0, 0.1, default_kdv_grid(), o), DomainError);
}
