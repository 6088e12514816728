#include <gtest/gtest.h>

#include <random>

#include "dswkit/roots.hpp"

using namespace dswkit;

namespace {

const ModelParams kRef = ModelParams::make(1.0, 4.0);

double residual(double p, cplx nu, cplx lambda) {
  return std::abs(nu * nu * nu + p * nu - lambda * lambda * lambda);
}

cplx random_admissible(std::mt19937_64& rng, double r0) {
  std::uniform_real_distribution<double> ur(1.0, 4.0), uth(-std::numbers::pi, std::numbers::pi);
  return std::polar(r0 * ur(rng), uth(rng));
}

}  // namespace

TEST(BranchPoints, ZeroCoefficientHasTripleRootAtOrigin) {
  const auto bp = branch_points(0.0);
  ASSERT_EQ(bp.size(), 1u);
  EXPECT_EQ(bp[0], cplx(0.0, 0.0));
}

// Moduli checked against roots of the resultant of the cubic and its
// derivative (independent sympy computation).
TEST(BranchPoints, ModulusMatchesResultantRoots) {
  for (auto [p, expected] : {std::pair{4.0, 1.454831514629}, {-2.0, 1.028721229478},
                             {1.0, 0.727415757314}}) {
    const auto bp = branch_points(p);
    EXPECT_EQ(bp.size(), 6u);
    for (cplx z : bp) EXPECT_NEAR(std::abs(z), expected, 1e-11) << "p=" << p;
    EXPECT_NEAR(branch_point_modulus(p), expected, 1e-11);
  }
}

TEST(BranchPoints, CubicHasDoubleRootThere) {
  for (double p : {4.0, -2.0, 0.5}) {
    for (cplx lam : branch_points(p)) {
      const cplx l3 = lam * lam * lam;
      // Some root of 3 nu^2 + p also solves the cubic.
      const cplx ns = std::sqrt(cplx{-p / 3.0, 0.0});
      const double r = std::min(std::abs(ns * ns * ns + p * ns - l3),
                                std::abs(-ns * ns * ns - p * ns - l3));
      EXPECT_LT(r, 1e-12);
    }
  }
}

TEST(ExclusionRadius, ReferenceParameters) {
  EXPECT_NEAR(exclusion_radius(kRef), kExclusionMargin * 1.454831514629, 1e-11);
  EXPECT_THROW(nu(0, cplx(0.5, 0.5), kRef), DomainError);
}

TEST(Nu, DegenerateCoefficientIsExactlyLinear) {
  const ModelParams flat = ModelParams::make(1.0, 6.0);  // c - 6a = 0
  const cplx lam{1.3, 2.9};
  EXPECT_EQ(nu(2, lam, flat), std::conj(kAlpha) * lam);
  EXPECT_EQ(nu(1, lam, flat), kAlpha * lam);
  EXPECT_LT(std::abs(nu_prime(2, lam, flat) - std::conj(kAlpha)), 1e-15);
  EXPECT_EQ(detail::nu_raw(0.0, 1.0, lam), lam);
}

// Frozen from companion-matrix roots (numpy) with nearest-asymptote
// selection; the root near 10i is 10.1333i since 4/(3 * 10i) = -0.1333i.
TEST(Nu, PinnedValues) {
  const cplx n0 = nu(0, cplx(0, 10), kRef);
  EXPECT_NEAR(n0.real(), 0.0, 1e-13);
  EXPECT_NEAR(n0.imag(), 10.133325537424003, 1e-12);
  const cplx lam{1.0, 3.0};
  const cplx n2 = nu(2, lam, kRef), n1 = nu(1, lam, kRef);
  EXPECT_NEAR(std::abs(n2 - cplx(2.238113310942895, -2.208021637978187)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(n1 - cplx(-3.3044516510517177, -0.5919535131350255)), 0.0, 1e-13);
}

TEST(Nu, DerivativeMatchesFiniteDifference) {
  const cplx lam{0.0, 10.0};
  const cplx h{1e-5, 0.0};
  const cplx fd = (nu(0, lam + h, kRef) - nu(0, lam - h, kRef)) / (2.0 * h);
  EXPECT_LT(std::abs(fd - nu_prime(0, lam, kRef)), 1e-8);
}

TEST(NuProperties, ResidualIsSmall) {
  std::mt19937_64 rng(1);
  const double r0 = exclusion_radius(kRef);
  for (int k = 0; k < 2000; ++k) {
    const cplx lam = random_admissible(rng, r0) * (k % 10 == 0 ? 100.0 : 1.0);
    for (int j = 0; j < 3; ++j) {
      const double p = RootBranch::of(j, kRef).p;
      EXPECT_LE(residual(p, nu(j, lam, kRef), lam),
                1e-12 * std::max(1.0, std::pow(std::abs(lam), 3)));
    }
  }
}

TEST(NuProperties, RotationSymmetry) {
  std::mt19937_64 rng(2);
  const double r0 = exclusion_radius(kRef);
  for (int k = 0; k < 1000; ++k) {
    const cplx lam = random_admissible(rng, r0);
    const cplx a = nu(1, lam, kRef), b = nu(2, std::conj(kAlpha) * lam, kRef);
    EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(lam));
  }
}

TEST(NuProperties, AsymptoticExpansion) {
  // nu_j - alpha^j lam + p / (3 alpha^j lam) = O(|lam|^-3), up to rounding
  // of the O(|lam|) terms.
  for (int j = 0; j < 3; ++j) {
    const double p = RootBranch::of(j, kRef).p;
    const cplx s = alpha_pow(j);
    for (double r : {1e2, 1e3, 1e4}) {
      for (double th : {0.3, 1.1, 2.0, -2.5}) {
        const cplx lam = std::polar(r, th);
        const double rem = std::abs(nu(j, lam, kRef) - s * lam + p / (3.0 * s * lam));
        EXPECT_LT(rem, 1.0 / (r * r * r) + 1e-15 * r) << "j=" << j << " r=" << r;
      }
    }
  }
}

TEST(NuProperties, ContinuousAlongArcsAndRays) {
  const double r0 = exclusion_radius(kRef);
  for (int j = 0; j < 3; ++j) {
    const double p = RootBranch::of(j, kRef).p;
    // Full circle just outside the disk, then a ray outward.
    const int n = 4000;
    cplx prev = nu(j, cplx(r0, 0.0), kRef);
    for (int k = 1; k <= n; ++k) {
      const cplx lam = std::polar(r0, 2.0 * std::numbers::pi * k / n);
      const cplx dl = lam - std::polar(r0, 2.0 * std::numbers::pi * (k - 1) / n);
      const cplx cur = nu(j, lam, kRef);
      const double bound = 2.0 * std::abs(dl) * std::abs(nu_prime_from(p, lam, cur)) + 1e-12;
      EXPECT_LE(std::abs(cur - prev), 2.0 * bound) << "j=" << j << " k=" << k;
      prev = cur;
    }
    cplx last = nu(j, std::polar(r0, 0.7), kRef);
    for (double r = r0 * 1.01; r < 50.0; r *= 1.01) {
      const cplx cur = nu(j, std::polar(r, 0.7), kRef);
      EXPECT_LE(std::abs(cur - last), 3.0 * 0.01 * r * std::abs(nu_prime(j, std::polar(r, 0.7), kRef)));
      last = cur;
    }
  }
}

TEST(RootBranch, IndexValidation) {
  EXPECT_THROW(RootBranch::of(3, kRef), DomainError);
  EXPECT_DOUBLE_EQ(RootBranch::of(0, kRef).p, 4.0);
  EXPECT_DOUBLE_EQ(RootBranch::of(2, kRef).p, -2.0);
}
