#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dswkit/closed_forms.hpp"
#include "dswkit/oracles.hpp"
#include "dswkit/params.hpp"
#include "dswkit/utm.hpp"

namespace dswkit {

/// Outcome of one validation check. `measured` is compared against
/// `tolerance` (measured <= tolerance passes unless stated otherwise).
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = NAN;
  double tolerance = NAN;
  std::string detail;
  double seconds = 0.0;
};

namespace checks {

/// Largest D(20) = sup |U(x, 20) - stationary| over x in [-10, 10] accepted
/// for (a, c) = (1, 4). Set from the convergence study recorded in
/// tests/acceptance/long_time_study.txt (measured 0.2491, stable to 1e-4
/// under grid and tolerance refinement) with a 5% allowance.
inline constexpr double kLongTimeThreshold = 0.262;

inline constexpr std::uint64_t kSeed = 20240611;

inline const ModelParams& reference_params() {
  static const ModelParams p = ModelParams::make(1.0, 4.0);
  return p;
}

inline double q_at(double x, double t, const ModelParams& m, double rel_tol,
                   std::optional<double> tau = std::nullopt, Side side = Side::Auto,
                   double tilt = std::numbers::pi / 12.0) {
  EvalRequest r;
  r.x = x;
  r.t = t;
  r.params = m;
  r.rel_tol = rel_tol;
  r.tau = tau;
  r.side = side;
  r.tilt = tilt;
  return evaluate(r).value;
}

// Golden-section refinement of a local maximum bracketed by [lo, hi].
inline std::pair<double, double> refine_max(const std::function<double(double)>& f, double lo,
                                            double hi, double tol = 1e-6) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Local maxima of f on a uniform grid over [lo, hi], refined, sorted by
/// decreasing height.
inline std::vector<std::pair<double, double>> local_maxima(const std::function<double(double)>& f,
                                                           double lo, double hi, double step) {
  std::vector<double> xs;
  for (double x = lo; x <= hi + 1e-12; x += step) xs.push_back(x);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (ys[i] > ys[i - 1] && ys[i] >= ys[i + 1]) {
      const auto [x, y] = refine_max(f, xs[i - 1], xs[i + 1]);
      out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end(), [](auto& p, auto& q) { return p.second > q.second; });
  return out;
}

inline double shifted_value(double x, double t, const ModelParams& m, double rel_tol = 1e-10) {
  return evaluate_in_frame(x, t, Frame::Shifted, m, rel_tol).value;
}

inline double shifted_stationary(double x, double t, const ModelParams& m) {
  const SpaceTime p = frame_map({x, t}, Frame::Shifted, Frame::Traveling, m);
  return stationary(p.x, m) / m.a;
}

/// tau independence: tau = t versus tau = 1.5 t + 0.1.
inline CheckResult tau_invariance() {
  CheckResult r;
  r.name = "tau_invariance";
  r.tolerance = 1e-7;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> ux(-10.0, 10.0), ut(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng), t = ut(rng);
    const double q1 = q_at(x, t, reference_params(), 1e-12);
    const double q2 = q_at(x, t, reference_params(), 1e-12, 1.5 * t + 0.1);
    worst = std::max(worst, std::fabs(q1 - q2) / (1.0 + std::fabs(q1)));
  }
  r.measured = worst;
  r.passed = worst <= r.tolerance;
  r.detail = "max |q(tau=t) - q(tau=1.5t+0.1)| / (1+|q|) over 20 random points";
  return r;
}

/// One-sided fourth-order differences of q, q_x, q_xx at x = 0-, 0+ (t = 1).
inline CheckResult interface_continuity() {
  CheckResult r;
  r.name = "interface_continuity";
  r.tolerance = 1e-4;
  const double h = 1e-2, t = 1.0;
  const auto& m = reference_params();
  auto side_values = [&](Side s, double sign) {
    std::vector<double> f(6);
    for (int k = 0; k < 6; ++k) f[k] = q_at(sign * k * h, t, m, 1e-12, std::nullopt, s);
    return f;
  };
  const auto L = side_values(Side::Left, -1.0);
  const auto R = side_values(Side::Right, 1.0);
  auto derivs = [&](const std::vector<double>& f, double sh) {
    const double d1 = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * sh);
    const double d2 = (45 * f[0] - 154 * f[1] + 214 * f[2] - 156 * f[3] + 61 * f[4] - 10 * f[5]) /
                      (12 * sh * sh);
    return std::array<double, 3>{f[0], d1, d2};
  };
  const auto dl = derivs(L, -h), dr = derivs(R, h);
  double worst = 0.0;
  std::string detail;
  for (int j = 0; j < 3; ++j) {
    const double scale = std::max({std::fabs(dl[j]), std::fabs(dr[j]), 1e-300});
    const double rel = std::fabs(dl[j] - dr[j]) / scale;
    worst = std::max(worst, rel);
    detail += "d" + std::to_string(j) + ": " + std::to_string(dl[j]) + " vs " +
              std::to_string(dr[j]) + "; ";
  }
  r.measured = worst;
  r.passed = worst <= r.tolerance;
  r.detail = detail;
  return r;
}

/// q(x, 1e-3) against the step datum at 40 points with |x| >= 0.5.
inline CheckResult datum_recovery() {
  CheckResult r;
  r.name = "datum_recovery";
  r.tolerance = 1e-2;
  const auto& m = reference_params();
  double worst_left = 0.0, worst_right = 0.0, x_left = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double s = 0.5 + 9.5 * i / 19.0;
    const double ql = q_at(-s, 1e-3, m, 1e-10);
    const double qr = q_at(s, 1e-3, m, 1e-10);
    if (std::fabs(ql - m.a) > worst_left) {
      worst_left = std::fabs(ql - m.a);
      x_left = -s;
    }
    worst_right = std::max(worst_right, std::fabs(qr));
  }
  r.measured = std::max(worst_left, worst_right);
  r.passed = r.measured <= r.tolerance;
  r.detail = "x<0 worst " + std::to_string(worst_left) + " at x=" + std::to_string(x_left) +
             " (Airy tail of the discontinuous datum, a*Ai-integral from (x+(c-6a)t)/(3t)^(1/3) = " +
             std::to_string(m.a * airy_integral_from((x_left + m.left_coeff() * 1e-3) /
                                                     std::cbrt(3e-3))) +
             "); x>0 worst " + std::to_string(worst_right);
  return r;
}

/// Contour evaluation against the certified method-of-lines oracle.
inline CheckResult mol_agreement() {
  CheckResult r;
  r.name = "mol_agreement";
  r.tolerance = 1e-3;
  const auto& m = reference_params();
  double worst = 0.0, disc = 0.0;
  for (double t : {0.5, 1.0}) {
    const MolResult mol = mol_interface_solve(m, GridSpec{}, t);
    disc = std::max(disc, mol.refinement_discrepancy);
    std::vector<double> xs;
    for (int i = 0; i <= 400; ++i) xs.push_back(-10.0 + 0.05 * i);
    const auto prof = evaluate_profile(xs, t, m);
    for (const auto& s : prof) {
      if (!s.ok) throw Error("evaluation failed at x=" + std::to_string(s.x) + ": " + s.message);
      worst = std::max(worst, std::fabs(s.value - mol.profile.at(s.x)));
    }
  }
  r.measured = worst;
  r.passed = worst <= r.tolerance;
  r.detail = "sup over x in [-10,10], t in {0.5,1}; oracle n/2n discrepancy " + std::to_string(disc);
  return r;
}

/// q(x, t; 2, 8) against 2 Q(x sqrt(8), 8^{3/2} t) with Q from (gamma, 1).
inline CheckResult rescaling_identity() {
  CheckResult r;
  r.name = "rescaling_identity";
  r.tolerance = 1e-7;
  const ModelParams m = ModelParams::make(2.0, 8.0);
  const CanonicalForm cf = to_canonical(m);
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), ut(0.05, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng), t = ut(rng);
    EvalRequest direct;
    direct.x = x;
    direct.t = t;
    direct.params = m;
    direct.rel_tol = 1e-12;
    direct.canonicalize = false;
    EvalRequest canon = direct;
    canon.params = cf.params;
    canon.x = x * cf.space_scale;
    canon.t = t * cf.time_scale;
    const double qd = evaluate(direct).value;
    // Q has unit left state; the canonical problem here has left state gamma.
    const double Q = evaluate(canon).value / cf.params.a;
    worst = std::max(worst, std::fabs(qd - cf.amp_scale * Q));
  }
  r.measured = worst;
  r.passed = worst <= r.tolerance;
  r.detail = "max |q(x,t;2,8) - 2 Q(x sqrt8, 8^1.5 t)| over 20 random points";
  return r;
}

/// Distance of U(., t) from the stationary profile over [-10, 10].
inline double long_time_distance(double t, double step = 0.05) {
  const auto& m = reference_params();
  std::vector<double> xs;
  for (double x = -10.0; x <= 10.0 + 1e-12; x += step) xs.push_back(x);
  double d = 0.0;
  for (double x : xs) d = std::max(d, std::fabs(shifted_value(x, t, m) - shifted_stationary(x, t, m)));
  return d;
}

inline CheckResult long_time_limit() {
  CheckResult r;
  r.name = "long_time_limit";
  r.tolerance = kLongTimeThreshold;
  const double d5 = long_time_distance(5.0), d10 = long_time_distance(10.0),
               d20 = long_time_distance(20.0);
  r.measured = d20;
  r.passed = d20 < d10 && d10 < d5 && d20 <= r.tolerance;
  r.detail = "D(5)=" + std::to_string(d5) + " D(10)=" + std::to_string(d10) +
             " D(20)=" + std::to_string(d20) + " (shifted frame, must decrease)";
  return r;
}

/// max_x U(x, t) over [-15, 10] for t in {0.1, 0.5, 1.5, 2.75}.
inline CheckResult amplitude_growth() {
  CheckResult r;
  r.name = "amplitude_growth";
  const auto& m = reference_params();
  std::vector<double> maxima;
  for (double t : {0.1, 0.5, 1.5, 2.75}) {
    const auto pk = local_maxima([&](double x) { return shifted_value(x, t, m); }, -15.0, 10.0, 0.05);
    maxima.push_back(pk.empty() ? NAN : pk.front().second);
  }
  double min_step = INFINITY;
  for (std::size_t i = 1; i < maxima.size(); ++i) min_step = std::min(min_step, maxima[i] - maxima[i - 1]);
  r.measured = min_step;
  r.tolerance = 0.0;
  r.passed = min_step > 0.0;
  r.detail = "maxima";
  for (double v : maxima) r.detail += " " + std::to_string(v);
  r.detail += " (measured = smallest increase, must be > 0)";
  return r;
}

/// E_model versus E_LKdV maxima at t = 0.1 for a in {1, 1/2, 1/4}.
inline CheckResult error_domination() {
  CheckResult r;
  r.name = "error_domination";
  double worst_ratio = 0.0;
  for (double a : {1.0, 0.5, 0.25}) {
    const ErrorCurves ec = error_curves(a, 0.1, default_kdv_grid());
    const double ratio = ec.max_model() / ec.max_lkdv();
    worst_ratio = std::max(worst_ratio, ratio);
    r.detail += "a=" + std::to_string(a) + ": " + std::to_string(ec.max_model()) + " < " +
                std::to_string(ec.max_lkdv()) + "; ";
  }
  r.measured = worst_ratio;
  r.tolerance = 1.0;
  r.passed = worst_ratio < 1.0;
  r.detail += "measured = max E_model / max E_LKdV";
  return r;
}

/// Collinearity of the three largest local maxima of U(., 2.75).
inline CheckResult peak_collinearity() {
  CheckResult r;
  r.name = "peak_collinearity";
  r.tolerance = 0.1;
  const auto& m = reference_params();
  auto pk = local_maxima([&](double x) { return shifted_value(x, 2.75, m); }, -15.0, 10.0, 0.05);
  if (pk.size() < 3) {
    r.detail = "fewer than three local maxima";
    return r;
  }
  pk.resize(3);
  std::sort(pk.begin(), pk.end());
  const auto [x0, y0] = pk[0];
  const auto [x1, y1] = pk[1];
  const auto [x2, y2] = pk[2];
  const double chord = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
  const double height = std::max({y0, y1, y2});
  r.measured = std::fabs(y1 - chord) / height;
  r.passed = r.measured <= r.tolerance;
  r.detail = "peaks (" + std::to_string(x0) + "," + std::to_string(y0) + ") (" + std::to_string(x1) +
             "," + std::to_string(y1) + ") (" + std::to_string(x2) + "," + std::to_string(y2) + ")";
  return r;
}

inline CheckResult closed_form_identities() {
  CheckResult r;
  r.name = "closed_form_identities";
  r.tolerance = 1e-8;
  bool ok = h_fn(cplx{0.0, 0.0}, 0.75) == cplx{0.75, 0.0} && h_fn(cplx{0.0, 0.0}, 3.0) == cplx{3.0, 0.0};
  std::mt19937_64 rng(kSeed + 10);
  std::uniform_real_distribution<double> ua(0.05, 5.0), ug(1.0 / 6.0 + 1e-3, 5.0);
  double worst_identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), c = a / ug(rng);
    const ModelParams m = ModelParams::make(a, c);
    const StationaryCoeffs k = stationary_coeffs(m);
    ok = ok && k.c1 == 0.0 && k.c2 == 0.0 && k.b1 == a;
    const double w = std::sqrt(6 * a - c), s = std::sqrt(c);
    const double scale = a + c;
    worst_identity = std::max({worst_identity,
                               std::fabs((k.b1 + k.b3) - (k.c1 + k.c2 + k.c3)) / scale,
                               std::fabs(k.c3 - (a - c / 6)) / scale,
                               std::fabs(k.b2 - (-std::sqrt(c / (6 * a - c)) * (a - c / 6))) / scale,
                               std::fabs(k.b3 + c / 6) / scale,
                               std::fabs(k.b2 * w - (-s * k.c3)) / (scale * (w + s)),
                               std::fabs(-k.b3 * w * w - c * k.c3) / (scale * (w * w + c))});
  }
  const double ai_err = std::fabs(airy_ai(0.0) - 0.35502805);
  r.measured = ai_err;
  r.passed = ok && worst_identity <= 1e-14 && ai_err <= r.tolerance;
  r.detail = "h(0;tau)=tau exact: " + std::string(ok ? "yes" : "no") +
             "; stationary identities worst " + std::to_string(worst_identity) +
             "; |Ai(0) - 0.35502805| = measured";
  return r;
}

/// Tilt pi/18 versus pi/9 at 20 random points.
inline CheckResult deformation_invariance() {
  CheckResult r;
  r.name = "deformation_invariance";
  r.tolerance = 1e-7;
  std::mt19937_64 rng(kSeed + 20);
  std::uniform_real_distribution<double> ux(-10.0, 10.0), ut(0.1, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng), t = ut(rng);
    const double q1 = q_at(x, t, reference_params(), 1e-12, std::nullopt, Side::Auto, std::numbers::pi / 18);
    const double q2 = q_at(x, t, reference_params(), 1e-12, std::nullopt, Side::Auto, std::numbers::pi / 9);
    worst = std::max(worst, std::fabs(q1 - q2));
  }
  r.measured = worst;
  r.passed = worst <= r.tolerance;
  r.detail = "max |q(tilt=pi/18) - q(tilt=pi/9)| over 20 random points";
  return r;
}

struct NamedCheck {
  const char* id;
  const char* name;
  CheckResult (*run)();
};

inline const std::vector<NamedCheck>& registry() {
  static const std::vector<NamedCheck> r{
      {"c1", "tau_invariance", tau_invariance},
      {"c2", "interface_continuity", interface_continuity},
      {"c3", "datum_recovery", datum_recovery},
      {"c4", "mol_agreement", mol_agreement},
      {"c5", "rescaling_identity", rescaling_identity},
      {"c6", "long_time_limit", long_time_limit},
      {"c7", "amplitude_growth", amplitude_growth},
      {"c8", "error_domination", error_domination},
      {"c9", "peak_collinearity", peak_collinearity},
      {"c10", "closed_form_identities", closed_form_identities},
      {"c11", "deformation_invariance", deformation_invariance},
  };
  return r;
}

/// Runs one check, timing it and turning exceptions into failures.
inline CheckResult run(const NamedCheck& c) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r.name = c.name;
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace checks
}  // namespace dswkit
