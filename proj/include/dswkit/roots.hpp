#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "dswkit/errors.hpp"
#include "dswkit/params.hpp"

namespace dswkit {

using cplx = std::complex<double>;

inline const cplx kAlpha{-0.5, std::numbers::sqrt3 / 2.0};  // exp(2 pi i / 3)

inline cplx alpha_pow(int j) {
  switch (((j % 3) + 3) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return kAlpha;
    default: return std::conj(kAlpha);
  }
}

/// One analytic root branch of nu^3 + p nu = lambda^3, asymptotic to
/// alpha^j lambda. Branch 0 uses p = c, branches 1 and 2 use p = c - 6a.
struct RootBranch {
  int index = 0;
  double p = 0.0;

  static RootBranch of(int j, const ModelParams& params) {
    if (j < 0 || j > 2) throw DomainError("branch index must be 0, 1 or 2");
    return RootBranch{j, j == 0 ? params.right_coeff() : params.left_coeff()};
  }
  cplx sector() const { return alpha_pow(index); }
};

/// All lambda (each once) at which nu^3 + p nu = lambda^3 has a double root.
inline std::vector<cplx> branch_points(double p) {
  if (p == 0.0) return {cplx{0.0, 0.0}};
  std::vector<cplx> out;
  const cplx nu_star = std::sqrt(cplx{-p / 3.0, 0.0});
  for (const cplx nu : {nu_star, -nu_star}) {
    const cplx l3 = nu * nu * nu + p * nu;
    const double mod = std::cbrt(std::abs(l3));
    const double arg = std::arg(l3) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const cplx z = std::polar(mod, arg + 2.0 * std::numbers::pi * k / 3.0);
      const bool dup = std::any_of(out.begin(), out.end(), [&](cplx w) {
        return std::abs(w - z) <= 1e-12 * (1.0 + mod);
      });
      if (!dup) out.push_back(z);
    }
  }
  return out;
}

inline double branch_point_modulus(double p) {
  const double ap = std::abs(p);
  return std::cbrt((2.0 * ap / 3.0) * std::sqrt(ap / 3.0));
}

inline constexpr double kExclusionMargin = 1.1;

/// Radius of the disk excluded from every contour: 1.1 times the largest
/// branch-point modulus over both cubics. Every root branch is analytic
/// outside it. The margin is kept small on purpose: the part of the
/// integrand carrying e^{i lambda^3 t} grows like e^{R^3 t} on the arc of
/// radius R, so a generous radius destroys accuracy at large t.
inline double exclusion_radius(const ModelParams& params) {
  const double m = std::max(branch_point_modulus(params.right_coeff()),
                            branch_point_modulus(params.left_coeff()));
  return kExclusionMargin * m;
}

namespace detail {

// Principal root of w^3 + eps w = 1 (the one with w -> 1 as eps -> 0).
// Cardano's form C - eps / (3C), C = cbrt(1/2 + sqrt(1/4 + eps^3/27)) with
// principal roots, is analytic on the whole disk |eps| < (27/4)^{1/3}: the
// radicand of the square root has positive real part there and so does
// the radicand of the cube root.
inline cplx principal_w(cplx eps) {
  const cplx e3 = eps * eps * eps;
  cplx w;
  if (std::abs(eps) < 1e-3) {
    w = 1.0 - eps / 3.0 + e3 / 81.0 - e3 * eps / 243.0;
  } else {
    const cplx C = std::pow(0.5 + std::sqrt(0.25 + e3 / 27.0), 1.0 / 3.0);
    w = C - eps / (3.0 * C);
  }
  for (int it = 0; it < 3; ++it) {
    const cplx f = w * w * w + eps * w - 1.0;
    const cplx dw = f / (3.0 * w * w + eps);
    w -= dw;
    if (std::abs(dw) <= 4e-16 * std::abs(w)) break;
  }
  return w;
}

// Root of the p-cubic asymptotic to s * lambda, s a cube root of unity.
inline cplx nu_raw(double p, cplx s, cplx lambda) {
  if (p == 0.0) return s * lambda;
  const cplx eps = p / (s * s * lambda * lambda);
  return s * lambda * principal_w(eps);
}

inline void require_admissible(cplx lambda, const ModelParams& params) {
  const double r = exclusion_radius(params);
  if (std::abs(lambda) < r * (1.0 - 1e-12)) {
    throw DomainError("lambda inside the exclusion disk (|lambda| = " +
                      std::to_string(std::abs(lambda)) +
                      " < " + std::to_string(r) + ")");
  }
}

}  // namespace detail

/// nu_j(lambda) for j in {0, 1, 2}. Throws DomainError inside the exclusion
/// disk, where branch labels are not well defined.
inline cplx nu(int j, cplx lambda, const ModelParams& params) {
  detail::require_admissible(lambda, params);
  const RootBranch b = RootBranch::of(j, params);
  return detail::nu_raw(b.p, b.sector(), lambda);
}

inline cplx nu_prime_from(double p, cplx lambda, cplx nu_value) {
  return 3.0 * lambda * lambda / (3.0 * nu_value * nu_value + p);
}

inline cplx nu_prime(int j, cplx lambda, const ModelParams& params) {
  const cplx v = nu(j, lambda, params);
  return nu_prime_from(RootBranch::of(j, params).p, lambda, v);
}

}  // namespace dswkit
