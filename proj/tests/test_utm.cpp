#include <gtest/gtest.h>

#include <random>

#include "dswkit/utm.hpp"

using namespace dswkit;

namespace {

const ModelParams kRef = ModelParams::make(1.0, 4.0);

double q(double x, double t, std::optional<double> tau = std::nullopt, double tol = 1e-10) {
  EvalRequest r;
  r.x = x;
  r.t = t;
  r.params = kRef;
  r.tau = tau;
  r.rel_tol = tol;
  return evaluate(r).value;
}

}  // namespace

TEST(HFunction, Values) {
  EXPECT_EQ(h_fn(0.0, 2.5), cplx(2.5));
  EXPECT_NEAR(std::abs(h_fn(1.0, 1.0) - (std::exp(1.0) - 1.0)), 0.0, 1e-15);
  EXPECT_EQ(h_fn(cplx(0, 3), 0.0), cplx(0.0));
  EXPECT_THROW(h_fn(1.0, -1.0), DomainError);
}

TEST(HFunction, SeriesAndDirectFormAgreeNearCrossover) {
  for (double arg : {0.0, 0.7, 2.0, -1.3}) {
    for (double m : {0.99e-4, 1.01e-4, 1e-3}) {
      const cplx rho = std::polar(m, arg);
      const cplx z = rho;  // tau = 1
      cplx series = 0.0, term = 1.0;
      for (int k = 1; k < 12; ++k) {
        series += term;
        term *= z / double(k + 1);
      }
      EXPECT_LT(std::abs(h_fn(rho, 1.0) - series), 1e-12 * std::abs(series));
    }
  }
}

// Frozen from an independent assembly: companion-matrix roots with
// nearest-asymptote selection, solved by QR.
TEST(InterfaceSystem, PinnedValuesOnImaginaryAxis) {
  const InterfaceSolution g = solve_interface_system(cplx(0, 3), kRef, 1.0);
  EXPECT_NEAR(std::abs(g.g2 - 0.13698055173467438), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(g.g1 - -0.03980068637882297), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(g.g0 - 0.011564376228340417), 0.0, 1e-13);
}

TEST(InterfaceSystem, ZeroDatumOrZeroTauGivesZero) {
  const ModelParams flat{0.0, 4.0};
  const auto g = solve_interface_system(cplx(0.5, 3), flat, 1.0);
  EXPECT_EQ(g.g0, cplx(0.0));
  EXPECT_EQ(g.g1, cplx(0.0));
  EXPECT_EQ(g.g2, cplx(0.0));
  const auto g0 = solve_interface_system(cplx(0.5, 3), kRef, 0.0);
  EXPECT_EQ(std::abs(g0.g0) + std::abs(g0.g1) + std::abs(g0.g2), 0.0);
  EXPECT_EQ(integrand_right(cplx(0.5, 3), 1.0, 1.0, flat, 1.0), cplx(0.0));
  EXPECT_EQ(integrand_left(cplx(0.5, 3), -1.0, 1.0, flat, 1.0), cplx(0.0));
}

TEST(InterfaceSystem, SolvesAssembledSystem) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(1.7, 8.0), uth(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const cplx lam = std::polar(ur(rng), uth(rng));
    const SpectralSystem s = SpectralSystem::assemble(lam, kRef, 0.7);
    const InterfaceSolution g = solve_interface_system(lam, kRef, 0.7);
    Eigen::Vector3cd v;
    v << g.g2, cplx(0, 1) * g.g1, -g.g0;
    EXPECT_LT((s.matrix * v - s.rhs).norm(), 1e-11 * (1 + s.rhs.norm()) * s.matrix.norm());
  }
}

TEST(Integrands, PinnedValues) {
  const cplx lam = std::polar(2.18, 5 * std::numbers::pi / 12);
  const cplx left = integrand_left(lam, -1.0, 1.0, kRef, 1.0);
  EXPECT_LT(std::abs(left - cplx(252.55999282860174, -317.8041657244229)), 1e-9);
  const cplx right = integrand_right(lam, 1.0, 1.0, kRef, 1.0);
  EXPECT_LT(std::abs(right - cplx(39.01723445263552, -16.793479917200223)), 1e-10);
}

TEST(Integrands, ConjugationSymmetry) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ur(1.7, 5.0), uth(0.3, 2.8), ux(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const cplx lam = std::polar(ur(rng), uth(rng));
    const double x = ux(rng);
    const cplx a = integrand_right(lam, std::abs(x), 0.5, kRef, 0.5);
    const cplx b = integrand_right(-std::conj(lam), std::abs(x), 0.5, kRef, 0.5);
    EXPECT_LT(std::abs(b - std::conj(a)), 1e-10 * (1 + std::abs(a)));
    const cplx c = integrand_left(lam, -std::abs(x), 0.5, kRef, 0.5);
    const cplx d = integrand_left(-std::conj(lam), -std::abs(x), 0.5, kRef, 0.5);
    EXPECT_LT(std::abs(d - std::conj(c)), 1e-10 * (1 + std::abs(c)));
  }
}

TEST(Evaluate, DatumAtInitialTime) {
  EXPECT_DOUBLE_EQ(q(-2.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(q(2.0, 0.0), 0.0);
}

TEST(Evaluate, RightDatumRecoveredAtSmallTime) {
  EXPECT_NEAR(q(2.0, 1e-3), 0.0, 1e-2);
  EXPECT_NEAR(q(0.5, 1e-3), 0.0, 1e-2);
}

// Reference values from the method-of-lines oracle at 2^14 cells,
// certified against 2^13.
TEST(Evaluate, MatchesMethodOfLinesAtUnitTime) {
  const std::pair<double, double> ref[] = {
      {-10, 1.074593}, {-5, 0.956014}, {-2, 1.602879}, {-1, 1.15607}, {0, 0.277664},
      {0.5, 0.10128},  {1, 0.036938},  {2, 0.004904},  {3, 0.000647},  {5, 1.1e-5}};
  for (auto [x, v] : ref) EXPECT_NEAR(q(x, 1.0), v, 2e-5) << "x=" << x;
}

TEST(Evaluate, RightFarField) { EXPECT_LT(std::abs(q(20.0, 1.0)), 1e-6); }

TEST(EvaluateProperties, TauInvariance) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(-6, 4), ut(0.1, 3);
  for (int k = 0; k < 12; ++k) {
    const double x = ux(rng), t = ut(rng);
    const double base = q(x, t, t);
    for (double tau : {1.5 * t, 2 * t + 1}) {
      EXPECT_NEAR(q(x, t, tau), base, 10 * 1e-10 * (1 + std::abs(base))) << x << ' ' << t;
    }
  }
}

TEST(EvaluateProperties, ImaginaryResidualIsSmall) {
  for (double x : {-4.0, -0.3, 0.0, 0.7, 3.0}) {
    EvalRequest r;
    r.x = x;
    r.t = 1.3;
    r.params = kRef;
    const EvalResult e = evaluate(r);
    EXPECT_LE(e.imag_residual, 10 * r.rel_tol * (1 + std::abs(e.value)));
  }
}

TEST(EvaluateProperties, CanonicalizationIsTransparent) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ua(0.3, 2.0), uc(0.5, 6.0), ux(-3, 3), ut(0.1, 0.6);
  for (int k = 0; k < 8; ++k) {
    EvalRequest r;
    r.params = ModelParams::make(ua(rng), uc(rng));
    r.x = ux(rng);
    r.t = ut(rng);
    const double direct = [&] {
      EvalRequest d = r;
      d.canonicalize = false;
      return evaluate(d).value;
    }();
    EXPECT_NEAR(evaluate(r).value, direct, 1e-8 * (1 + std::abs(direct)));
  }
}

TEST(Evaluate, Rejections) {
  EvalRequest r;
  r.x = 1.0;
  r.t = -1.0;
  EXPECT_THROW(evaluate(r), DomainError);
  r.t = 1.0;
  r.tau = 0.5;
  EXPECT_THROW(evaluate(r), DomainError);
  r.tau.reset();
  r.rel_tol = 1e-16;
  EXPECT_THROW(evaluate(r), DomainError);
}

TEST(EvaluateInFrame, ShiftedValuesAreNormalized) {
  const ModelParams m = ModelParams::make(2.0, 8.0);
  const EvalResult e = evaluate_in_frame(-1.0, 1.0, Frame::Shifted, m);
  const SpaceTime p = frame_map({-1.0, 1.0}, Frame::Shifted, Frame::Traveling, m);
  EXPECT_NEAR(e.value, evaluate_value(p.x, p.t, m) / 2.0, 1e-12);
}

TEST(EvaluateProfile, Basics) {
  EXPECT_TRUE(evaluate_profile({}, 1.0, kRef).empty());
  EXPECT_THROW(evaluate_profile({1.0, 0.0}, 1.0, kRef), DomainError);
  ProfileOptions o;
  o.threads = 2;
  const auto s = evaluate_profile({-1.0, 0.0, 1.0}, 1e-3, kRef, o);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& p : s) EXPECT_TRUE(p.ok) << p.message;
  EXPECT_NEAR(s[2].value, 0.0, 1e-2);
  EXPECT_GT(s[1].value, 0.1);
  EXPECT_LT(s[1].value, 0.9);
}

TEST(EvaluateProfile, MatchesPointwiseEvaluation) {
  std::vector<double> xs;
  for (double x = -4; x <= 2; x += 0.5) xs.push_back(x);
  const auto s = evaluate_profile(xs, 0.8, kRef);
  for (const auto& p : s) EXPECT_EQ(p.value, q(p.x, 0.8));
}
