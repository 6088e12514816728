#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dswkit/contour.hpp"
#include "dswkit/errors.hpp"
#include "dswkit/params.hpp"
#include "dswkit/roots.hpp"

namespace dswkit {

namespace detail {

// e^z - 1 without cancellation for small |z|.
inline cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace detail

/// h(rho; tau) = integral_0^tau e^{rho s} ds = (e^{rho tau} - 1) / rho.
inline cplx h_fn(cplx rho, double tau) {
  if (tau < 0.0) throw DomainError("h requires tau >= 0");
  const cplx z = rho * tau;
  if (std::abs(z) <= 1e-4) {
    // tau * (1 + z/2 + z^2/6 + z^3/24 + z^4/120)
    return tau * (1.0 + z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z / 120.0))));
  }
  return detail::expm1c(z) / rho;
}

/// The interface system A(lambda) (g2, i g1, -g0)^T = rhs.
struct SpectralSystem {
  Eigen::Matrix3cd matrix;
  Eigen::Vector3cd rhs;

  /// Assembles A(lambda) and the right-hand side with h given explicitly.
  static SpectralSystem assemble(cplx lambda, const ModelParams& m, cplx h) {
    const double c = m.right_coeff();
    const double pl = m.left_coeff();
    const cplx n01 = detail::nu_raw(c, 1.0, kAlpha * lambda);
    const cplx n02 = detail::nu_raw(c, 1.0, std::conj(kAlpha) * lambda);
    const cplx n2 = detail::nu_raw(pl, std::conj(kAlpha), kAlpha * lambda);
    SpectralSystem s;
    s.matrix << 1.0, n01, n01 * n01 + c,
                1.0, n02, n02 * n02 + c,
                1.0, n2, n2 * n2 + pl;
    s.rhs << 0.0, 0.0, -m.a * (n2 * n2 + pl) * h;
    return s;
  }

  static SpectralSystem assemble(cplx lambda, const ModelParams& m, double tau) {
    return assemble(lambda, m, h_fn(cplx{0.0, -1.0} * lambda * lambda * lambda, tau));
  }
};

struct InterfaceSolution {
  cplx g2, g1, g0;

  InterfaceSolution scaled(cplx h) const { return {g2 * h, g1 * h, g0 * h}; }
};

namespace detail {

inline InterfaceSolution solve_system(const SpectralSystem& s) {
  Eigen::Matrix3cd A = s.matrix;
  Eigen::Vector3cd b = s.rhs;
  for (int i = 0; i < 3; ++i) {
    const double m = A.row(i).cwiseAbs().maxCoeff();
    A.row(i) /= m;
    b(i) /= m;
  }
  const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 1e-12)) {
    throw NearSingularError("interface system is numerically singular",
                            rc > 0.0 ? 1.0 / rc : INFINITY);
  }
  const Eigen::Vector3cd v = lu.solve(b);
  // Unknown vector is (g2, i g1, -g0); this is the only place it is unpacked.
  return InterfaceSolution{v(0), cplx{0.0, -1.0} * v(1), -v(2)};
}

// Solution for h = 1; the true g_j are this times h(-i lambda^3; tau).
inline InterfaceSolution solve_unit(cplx lambda, const ModelParams& m) {
  return solve_system(SpectralSystem::assemble(lambda, m, cplx{1.0, 0.0}));
}

}  // namespace detail

/// Solves the interface system at lambda for the given tau.
inline InterfaceSolution solve_interface_system(cplx lambda, const ModelParams& params,
                                                double tau) {
  detail::require_admissible(lambda, params);
  return detail::solve_system(SpectralSystem::assemble(lambda, params, tau));
}

namespace detail {

inline constexpr cplx kI{0.0, 1.0};

// nu_0'(lambda) [g2 + i nu_0 g1 - (nu_0^2 + c) g0] and nu_0 itself.
struct BranchTerm {
  cplx nu;
  cplx weight;
};

inline BranchTerm right_term(cplx lambda, const ModelParams& m,
                             const InterfaceSolution& g) {
  const double c = m.right_coeff();
  const cplx n = nu_raw(c, 1.0, lambda);
  const cplx np = nu_prime_from(c, lambda, n);
  return {n, np * (g.g2 + kI * n * g.g1 - (n * n + c) * g.g0)};
}

// k = 1 or 2; `ah` is a * h (h = 1 for the unit solution).
inline BranchTerm left_term(int k, cplx lambda, const ModelParams& m,
                            const InterfaceSolution& g, cplx ah) {
  const double p = m.left_coeff();
  const cplx n = nu_raw(p, alpha_pow(k), lambda);
  const cplx np = nu_prime_from(p, lambda, n);
  return {n, np * (g.g2 + kI * n * g.g1 - (n * n + p) * (g.g0 - ah))};
}

}  // namespace detail

/// Integrand of the x > 0 representation, exactly as displayed:
/// e^{i nu_0 x + i lambda^3 t} nu_0' [g2 + i nu_0 g1 - (nu_0^2 + c) g0].
inline cplx integrand_right(cplx lambda, double x, double t, const ModelParams& params,
                            double tau) {
  const InterfaceSolution g = solve_interface_system(lambda, params, tau);
  const auto term = detail::right_term(lambda, params, g);
  return std::exp(detail::kI * (term.nu * x + lambda * lambda * lambda * t)) * term.weight;
}

/// Integrand of the x < 0 representation: the nu_1 and nu_2 terms summed.
inline cplx integrand_left(cplx lambda, double x, double t, const ModelParams& params,
                           double tau) {
  const InterfaceSolution g = solve_interface_system(lambda, params, tau);
  const cplx h = h_fn(-detail::kI * lambda * lambda * lambda, tau);
  const cplx et = std::exp(detail::kI * lambda * lambda * lambda * t);
  cplx sum = 0.0;
  for (int k : {1, 2}) {
    const auto term = detail::left_term(k, lambda, params, g, params.a * h);
    sum += std::exp(detail::kI * term.nu * x) * et * term.weight;
  }
  return sum;
}

enum class Side { Auto, Left, Right };

struct EvalRequest {
  double x = 0.0;
  double t = 1.0;
  ModelParams params{};
  std::optional<double> tau;  // defaults to t
  double rel_tol = 1e-10;
  double tilt = std::numbers::pi / 12.0;
  double truncation_scale = 1.0;
  bool canonicalize = true;
  Side side = Side::Auto;  // Left/Right force a one-sided formula at x = 0
};

struct EvalResult {
  double value = 0.0;
  double imag_residual = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

namespace detail {

inline constexpr std::size_t kPanelBudget = 10000;
inline constexpr std::size_t kRetryBudget = 200000;

template <class F>
QuadResult integrate_retry(const ContourPath& path, F&& f, double rel_tol) {
  try {
    return integrate(path, f, rel_tol, kPanelBudget);
  } catch (const ConvergenceError&) {
    return integrate(path, f, rel_tol, kRetryBudget);
  }
}

// Contour for the tau-part, whose exponent e^{-i lambda^3 (tau - t)} decays
// inside the sector. When neither x nor tau - t gives usable decay, the
// tau-part is evaluated at tau + 1 instead: the full representation is
// independent of tau and the t-part does not involve tau at all, so the
// tau-part is independent of tau too.
inline std::pair<ContourPath, double> tau_contour(const ModelParams& m, double x, double t,
                                                  double tau, double R0,
                                                  ContourOptions opt) {
  opt.side = TiltSide::Interior;
  opt.saddle_kink = false;
  const double cap = 40.0 * R0;
  if (x != 0.0 || tau > t) {
    ContourOptions capped = opt;
    capped.max_radius = cap;
    try {
      auto p = build_contour(m, x, t - tau, R0, capped);
      if (p.truncation_radius <= cap) return {std::move(p), tau};
    } catch (const NoDecayError&) {
    }
  }
  const double tau_eff = tau + 1.0;
  return {build_contour(m, x, t - tau_eff, R0, opt), tau_eff};
}

inline EvalResult evaluate_direct(const EvalRequest& rq) {
  const ModelParams& m = rq.params;
  const double x = rq.x, t = rq.t;
  const double tau = rq.tau.value_or(t);
  Side side = rq.side;
  if (side == Side::Auto) side = x < 0.0 ? Side::Left : Side::Right;
  if (t == 0.0) {
    return EvalResult{side == Side::Left ? m.a : 0.0, 0.0, 0.0, 0};
  }
  const double R0 = exclusion_radius(m);
  ContourOptions base;
  base.tilt = rq.tilt;
  base.truncation_scale = rq.truncation_scale;

  cplx total = 0.0;
  double err = 0.0;
  std::size_t panels = 0;
  auto accumulate = [&](const QuadResult& r) {
    total += r.value;
    err += r.error_estimate;
    panels += r.panels_used;
  };

  if (side == Side::Right) {
    ContourOptions o = base;
    o.branch = DecayBranch::Nu0;
    auto [ptau, tau_eff] = tau_contour(m, x, t, tau, R0, o);
    const double dt_tau = t - tau_eff;
    accumulate(integrate_retry(ptau, [&](cplx l) {
      const cplx l3 = l * l * l;
      const auto term = right_term(l, m, solve_unit(l, m));
      return std::exp(kI * (term.nu * x + l3 * dt_tau)) * term.weight / (-kI * l3);
    }, rq.rel_tol));
    o.side = TiltSide::Exterior;
    const ContourPath pt = build_contour(m, x, t, R0, o);
    accumulate(integrate_retry(pt, [&](cplx l) {
      const cplx l3 = l * l * l;
      const auto term = right_term(l, m, solve_unit(l, m));
      return -std::exp(kI * (term.nu * x + l3 * t)) * term.weight / (-kI * l3);
    }, rq.rel_tol));
  } else {
    ContourOptions o = base;
    o.branch = DecayBranch::Auto;
    // Auto on x = 0 would pick nu_0; the exponent does not depend on it there.
    auto [ptau, tau_eff] = tau_contour(m, x, t, tau, R0, o);
    const double dt_tau = t - tau_eff;
    accumulate(integrate_retry(ptau, [&](cplx l) {
      const cplx l3 = l * l * l;
      const auto g = solve_unit(l, m);
      cplx s = 0.0;
      for (int k : {1, 2}) {
        const auto term = left_term(k, l, m, g, m.a);
        s += std::exp(kI * (term.nu * x + l3 * dt_tau)) * term.weight;
      }
      return s / (-kI * l3);
    }, rq.rel_tol));
    for (int k : {1, 2}) {
      ContourOptions ok = base;
      ok.side = TiltSide::Exterior;
      ok.branch = k == 1 ? DecayBranch::Nu1 : DecayBranch::Nu2;
      ok.saddle_kink = true;
      const ContourPath pt = build_contour(m, x, t, R0, ok);
      accumulate(integrate_retry(pt, [&, k](cplx l) {
        const cplx l3 = l * l * l;
        const auto term = left_term(k, l, m, solve_unit(l, m), m.a);
        return -std::exp(kI * (term.nu * x + l3 * t)) * term.weight / (-kI * l3);
      }, rq.rel_tol));
    }
  }
  const double two_pi = 2.0 * std::numbers::pi;
  EvalResult out;
  out.value = (side == Side::Left ? m.a : 0.0) + total.real() / two_pi;
  out.imag_residual = total.imag() / two_pi;
  out.error_estimate = err / two_pi;
  out.panels = panels;
  return out;
}

}  // namespace detail

/// q(x, t; a, c) from the contour-integral representation. With
/// canonicalize set (the default) the work is done for the rescaled
/// problem (a, c) -> (a/c, 1) and mapped back.
inline EvalResult evaluate(const EvalRequest& req) {
  req.params.validate();
  if (!(std::isfinite(req.x) && std::isfinite(req.t)) || req.t < 0.0) {
    throw DomainError("evaluate requires finite x and t >= 0");
  }
  const double tau = req.tau.value_or(req.t);
  if (!(tau >= req.t)) throw DomainError("tau must satisfy tau >= t");
  if (!(req.rel_tol >= 1e-13)) throw DomainError("rel_tol must be at least 1e-13");
  if (!req.canonicalize) return detail::evaluate_direct(req);

  const CanonicalForm cf = to_canonical(req.params);
  EvalRequest r = req;
  r.params = cf.params;
  r.x = req.x * cf.space_scale;
  r.t = req.t * cf.time_scale;
  r.tau = tau * cf.time_scale;
  r.canonicalize = false;
  // The canonical problem has left state a/c; q is c times its solution.
  const double scale = req.params.c;
  try {
    EvalResult e = detail::evaluate_direct(r);
    e.value *= scale;
    e.imag_residual *= scale;
    e.error_estimate *= scale;
    return e;
  } catch (const ConvergenceError& ce) {
    throw ConvergenceError(ce.what(), ce.best_value() * scale, ce.error_estimate() * scale);
  }
}

inline double evaluate_value(double x, double t, const ModelParams& params,
                             double rel_tol = 1e-10) {
  EvalRequest r;
  r.x = x;
  r.t = t;
  r.params = params;
  r.rel_tol = rel_tol;
  return evaluate(r).value;
}

/// q evaluated at coordinates given in any frame. Values in the Shifted
/// frame are normalized by the left state a, as U = Q(x - gamma t, t) is.
inline EvalResult evaluate_in_frame(double x, double t, Frame frame,
                                    const ModelParams& params, double rel_tol = 1e-10) {
  const SpaceTime p = frame_map({x, t}, frame, Frame::Traveling, params);
  EvalRequest r;
  r.x = p.x;
  r.t = p.t;
  r.params = params;
  r.rel_tol = rel_tol;
  EvalResult e = evaluate(r);
  if (frame == Frame::Shifted) {
    e.value /= params.a;
    e.imag_residual /= params.a;
    e.error_estimate /= params.a;
  }
  return e;
}

struct SolutionSample {
  double x = 0.0;
  double t = 0.0;
  double value = NAN;
  double error_estimate = NAN;
  bool ok = false;
  std::string message;
};

struct ProfileOptions {
  std::optional<double> tau_offset;  // tau = t + offset
  double rel_tol = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Evaluates q at every x of the grid (traveling frame). Points are
/// independent and computed in parallel; failures are recorded per point.
inline std::vector<SolutionSample> evaluate_profile(const std::vector<double>& xs, double t,
                                                    const ModelParams& params,
                                                    const ProfileOptions& opt = {}) {
  std::vector<SolutionSample> out(xs.size());
  if (xs.empty()) return out;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] >= xs[i - 1])) throw DomainError("profile grid must be monotone in x");
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      SolutionSample& s = out[i];
      s.x = xs[i];
      s.t = t;
      try {
        EvalRequest r;
        r.x = xs[i];
        r.t = t;
        r.params = params;
        r.rel_tol = opt.rel_tol;
        if (opt.tau_offset) r.tau = t + *opt.tau_offset;
        const EvalResult e = evaluate(r);
        s.value = e.value;
        s.error_estimate = e.error_estimate;
        s.ok = true;
      } catch (const ConvergenceError& e) {
        s.value = e.best_value().real();
        s.error_estimate = e.error_estimate();
        s.message = e.what();
      } catch (const std::exception& e) {
        s.message = e.what();
      }
    }
  };
  unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, xs.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace dswkit
