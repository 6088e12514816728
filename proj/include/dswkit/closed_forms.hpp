#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "dswkit/errors.hpp"
#include "dswkit/gauss_kronrod.hpp"
#include "dswkit/params.hpp"

namespace dswkit {

/// Coefficients of the stationary profile
///   x > 0: c1 + c2 e^{sqrt(c) x} + c3 e^{-sqrt(c) x}
///   x < 0: b1 + b2 sin(x k) + b3 cos(x k),  k = sqrt(6a - c).
struct StationaryCoeffs {
  double b1, b2, b3;
  double c1, c2, c3;
};

inline void require_oscillatory(const ModelParams& params) {
  params.validate();
  if (!params.has_oscillatory_stationary_state()) {
    throw DomainError("stationary profile requires c - 6a < 0 (a/c > 1/6)");
  }
}

inline StationaryCoeffs stationary_coeffs(const ModelParams& params) {
  require_oscillatory(params);
  const double a = params.a, c = params.c;
  const double c3 = a - c / 6.0;
  return StationaryCoeffs{a, -std::sqrt(c / (6.0 * a - c)) * c3, -c / 6.0, 0.0, 0.0, c3};
}

/// Long-time limit of q in the traveling frame.
inline double stationary(double x, const ModelParams& params) {
  const StationaryCoeffs k = stationary_coeffs(params);
  if (x >= 0.0) {
    const double s = std::sqrt(params.c);
    return k.c1 + k.c3 * std::exp(-s * x);
  }
  const double w = std::sqrt(6.0 * params.a - params.c);
  return k.b1 + k.b2 * std::sin(x * w) + k.b3 * std::cos(x * w);
}

namespace detail {

inline constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
inline constexpr long double kAiP0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)
// Series range. On the right the two series terms cancel (the result is
// e^{-2 zeta} smaller than the terms), so the asymptotic expansion takes
// over earlier there; both are ~1e-10 relative (1e-15 absolute) at 6.25.
inline constexpr double kAiryCrossover = 8.0;
inline constexpr double kAiryCrossoverRight = 6.25;

inline double airy_series(double s) {
  const long double z = s, z3 = z * z * z;
  long double f = 1.0L, g = z, tf = 1.0L, tg = z;
  for (int k = 1; k < 400; ++k) {
    tf *= z3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= z3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g))) break;
  }
  return static_cast<double>(kAi0 * f - kAiP0 * g);
}

// u_k of the Airy asymptotic expansions.
inline double airy_u(int k) {
  double u = 1.0;
  for (int j = 1; j <= k; ++j) {
    u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
  }
  return u;
}

inline double airy_asymptotic(double s) {
  const double z = std::fabs(s);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  if (s > 0.0) {
    double sum = 0.0, u = 1.0, term = 1.0, prev = INFINITY;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
      term = ((k % 2) ? -u : u) / std::pow(zeta, k);
      if (std::fabs(term) > prev) break;
      sum += term;
      prev = std::fabs(term);
      if (prev < 1e-17 * std::fabs(sum)) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(z, 0.25)) * sum;
  }
  double P = 0.0, Q = 0.0, u = 1.0, prev = INFINITY;
  for (int k = 0; k < 120; ++k) {
    if (k > 0) u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double term = u / std::pow(zeta, k);
    if (term > prev) break;
    prev = term;
    const int sgn = ((k / 2) % 2) ? -1 : 1;
    if (k % 2 == 0) P += sgn * term; else Q += sgn * term;
    if (term < 1e-17) break;
  }
  const double ph = zeta - std::numbers::pi / 4.0;
  return (std::cos(ph) * P + std::sin(ph) * Q) / (std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
}

template <class F>
double adaptive_real(F&& f, double lo, double hi, double abs_tol, double max_len = 2.0,
                     double noise = 50.0 * 2.2e-16, std::size_t max_panels = 20000) {
  struct Panel { double lo, hi, val, err, abs; };
  auto cmp = [](const Panel& a, const Panel& b) { return a.err < b.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  double val = 0.0, err = 0.0, absum = 0.0;
  const std::size_t n0 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / max_len)));
  max_panels = std::max(max_panels, 4 * n0);
  for (std::size_t i = 0; i < n0; ++i) {
    const double a = lo + (hi - lo) * double(i) / double(n0);
    const double b = lo + (hi - lo) * double(i + 1) / double(n0);
    const auto r = GaussKronrod15::apply<double>(f, a, b);
    const Panel p{a, b, r.kronrod, std::fabs(r.kronrod - r.gauss), r.abs_integral};
    val += p.val;
    err += p.err;
    absum += p.abs;
    heap.push(p);
  }
  // Below noise * integral of |f| the estimate only measures rounding in f.
  auto target = [&] { return std::max(abs_tol, noise * absum); };
  while (err > target() && heap.size() < max_panels) {
    const Panel w = heap.top();
    heap.pop();
    const double m = 0.5 * (w.lo + w.hi);
    const auto r1 = GaussKronrod15::apply<double>(f, w.lo, m);
    const auto r2 = GaussKronrod15::apply<double>(f, m, w.hi);
    const Panel p1{w.lo, m, r1.kronrod, std::fabs(r1.kronrod - r1.gauss), r1.abs_integral};
    const Panel p2{m, w.hi, r2.kronrod, std::fabs(r2.kronrod - r2.gauss), r2.abs_integral};
    val += p1.val + p2.val - w.val;
    err += p1.err + p2.err - w.err;
    absum += p1.abs + p2.abs - w.abs;
    heap.push(p1);
    heap.push(p2);
  }
  if (err > target()) {
    throw ConvergenceError("real quadrature exceeded the panel budget", val, err);
  }
  // Re-sum in a fixed order for reproducibility.
  std::vector<Panel> all;
  while (!heap.empty()) { all.push_back(heap.top()); heap.pop(); }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  val = 0.0;
  for (const auto& p : all) val += p.val;
  return val;
}

}  // namespace detail

/// Airy function Ai(s): Maclaurin series (extended precision) on
/// [-8, 6.25], asymptotic expansions beyond.
inline double airy_ai(double s) {
  if (std::isnan(s)) return s;
  if (s >= -detail::kAiryCrossover && s <= detail::kAiryCrossoverRight) return detail::airy_series(s);
  if (s > 0.0 && s > 105.0) return 0.0;  // below the smallest normal double
  return detail::airy_asymptotic(s);
}

/// Integral of Ai from s to infinity.
inline double airy_integral_from(double s) {
  const double upper = std::max(s, detail::kAiryCrossover) + 8.0;
  const double z = upper, zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double tail = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(z, 0.75));
  if (s >= upper) return tail;
  // Initial panels no longer than one local wavelength 2 pi / sqrt(-s). Far
  // out on the left Ai carries the rounding of its phase 2/3 |s|^{3/2}.
  const double ns = std::max(1.0, -s);
  const double len = std::min(2.0, 2.0 * std::numbers::pi / std::sqrt(ns));
  const double noise = 50.0 * 2.2e-16 * std::max(1.0, 2.0 / 3.0 * ns * std::sqrt(ns));
  return detail::adaptive_real([](double u) { return airy_ai(u); }, s, upper, 1e-14, len, noise) +
         tail;
}

/// Similarity solution of u_t + u_xxx = 0 with step datum of height a:
/// u(x, t) = a * integral of Ai from x / (3t)^{1/3} to infinity.
inline double lkdv_step(double x, double t, double a) {
  if (!(t > 0.0)) throw DomainError("lkdv_step requires t > 0");
  return a * airy_integral_from(x / std::cbrt(3.0 * t));
}

}  // namespace dswkit
