#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "dswkit/closed_forms.hpp"
#include "dswkit/errors.hpp"
#include "dswkit/params.hpp"
#include "dswkit/utm.hpp"

namespace dswkit {

struct GridSpec {
  double x_min = -30.0;
  double x_max = 30.0;
  std::size_t n = 8192;
  double dt = 1e-3;  // upper bound; the step is shrunk to divide t_final

  void validate() const {
    if (!(x_min < 0.0 && 0.0 < x_max)) throw DomainError("grid must straddle x = 0");
    if (n < 256) throw DomainError("grid needs at least 256 points");
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
  }
  double dx() const { return (x_max - x_min) / static_cast<double>(n); }
  GridSpec refined() const { return GridSpec{x_min, x_max, 2 * n, dt}; }
};

/// Samples on an increasing x grid with cubic interpolation between them.
struct Profile {
  std::vector<double> x;
  std::vector<double> value;

  double at(double xq) const {
    const std::size_t n = x.size();
    if (n == 0) throw DomainError("empty profile");
    if (xq <= x.front()) return value.front();
    if (xq >= x.back()) return value.back();
    const std::size_t i = static_cast<std::size_t>(
        std::upper_bound(x.begin(), x.end(), xq) - x.begin()) - 1;
    if (n < 4) {
      const double s = (xq - x[i]) / (x[i + 1] - x[i]);
      return (1 - s) * value[i] + s * value[i + 1];
    }
    // Four-point Lagrange stencil, shifted inward at the ends.
    const std::size_t j = std::clamp<std::size_t>(i, 1, n - 3) - 1;
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      double w = 1.0;
      for (std::size_t m = 0; m < 4; ++m) {
        if (m != k) w *= (xq - x[j + m]) / (x[j + k] - x[j + m]);
      }
      sum += w * value[j + k];
    }
    return sum;
  }
};

/// Largest |p - q| over sample points of p inside [lo, hi].
inline double sup_difference(const Profile& p, const Profile& q, double lo, double hi) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (p.x[i] >= lo && p.x[i] <= hi) d = std::max(d, std::fabs(p.value[i] - q.at(p.x[i])));
  }
  return d;
}

struct MolOptions {
  bool zero_left_jump = false;  // drop the 6a term (pure linearized KdV)
  double smoothing_cells = 3.0; // width of the smoothed step, in cells
  double dissipation = 0.05;    // coefficient of the sixth-difference damping
  bool certify = true;          // compare n against 2n
  double tolerance = 1e-4;      // allowed n / 2n discrepancy
  double window_lo = -10.0;
  double window_hi = 10.0;
};

struct MolResult {
  Profile profile;
  double refinement_discrepancy = 0.0;  // NaN when not certified
};

namespace detail {

// Roots z_k and weights A_k with R(z) = sum_k A_k / (1 - z / z_k), where R is
// the L-stable (2,3) Pade approximant of e^z (Radau IIA, order 5).
struct RadauPartialFractions {
  double z_real, a_real;
  cplx z_cplx, a_cplx;  // the conjugate pair contributes 2 Re(...)

  static RadauPartialFractions make() {
    auto D = [](cplx z) { return 1.0 - 0.6 * z + 0.15 * z * z - z * z * z / 60.0; };
    auto Dp = [](cplx z) { return -0.6 + 0.3 * z - z * z / 20.0; };
    auto N = [](cplx z) { return 1.0 + 0.4 * z + z * z / 20.0; };
    Eigen::Matrix3d comp;
    // Monic form z^3 - 9 z^2 + 36 z - 60.
    comp << 9.0, -36.0, 60.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    const Eigen::Vector3cd r = comp.eigenvalues();
    RadauPartialFractions out{};
    for (int k = 0; k < 3; ++k) {
      cplx z = r(k);
      for (int it = 0; it < 5; ++it) z -= D(z) / Dp(z);
      const cplx A = -N(z) / (z * Dp(z));
      if (std::fabs(z.imag()) < 1e-9) {
        out.z_real = z.real();
        out.a_real = A.real();
      } else if (z.imag() > 0.0) {
        out.z_cplx = z;
        out.a_cplx = A;
      }
    }
    return out;
  }
};

inline Profile mol_run(const ModelParams& params, const GridSpec& g, double t_final,
                       const MolOptions& opt) {
  const std::size_t n = g.n;
  const double h = g.dx();
  const double cells_left = -g.x_min / h;
  if (std::fabs(cells_left - std::round(cells_left)) > 1e-6) {
    throw DomainError("x = 0 must fall on a cell boundary of the grid");
  }
  const std::size_t N = n + 6;  // three fixed ghost nodes per side
  std::vector<double> xs(N);
  for (std::size_t i = 0; i < N; ++i) {
    xs[i] = g.x_min + (static_cast<double>(i) - 3.0 + 0.5) * h;
  }
  const double a = params.a;
  const double w = opt.smoothing_cells * h;
  Eigen::VectorXd q(N);
  for (std::size_t i = 0; i < N; ++i) {
    q(i) = w > 0.0 ? 0.5 * a * (1.0 - std::tanh(xs[i] / w)) : (xs[i] < 0.0 ? a : 0.0);
  }
  for (int i = 0; i < 3; ++i) {
    q(i) = a;
    q(N - 1 - i) = 0.0;
  }
  Profile out;
  out.x.assign(xs.begin() + 3, xs.end() - 3);
  if (t_final <= 0.0) {
    out.value.assign(q.data() + 3, q.data() + N - 3);
    return out;
  }

  const double left = opt.zero_left_jump ? params.c : params.left_coeff();
  const double right = params.c;
  const double h3 = h * h * h;
  static constexpr int d1o[4] = {-2, -1, 1, 2};
  static constexpr double d1w[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  static constexpr int d3o[6] = {-3, -2, -1, 1, 2, 3};
  static constexpr double d3w[6] = {1.0 / 8, -1.0, 13.0 / 8, -13.0 / 8, 1.0, -1.0 / 8};
  static constexpr double d6w[7] = {1, -6, 15, -20, 15, -6, 1};
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(17 * N);
  for (std::size_t i = 3; i < N - 3; ++i) {
    const double p = xs[i] < 0.0 ? left : right;
    const int ii = static_cast<int>(i);
    for (int k = 0; k < 6; ++k) trip.emplace_back(ii, ii + d3o[k], -d3w[k] / h3);
    for (int k = 0; k < 4; ++k) trip.emplace_back(ii, ii + d1o[k], p * d1w[k] / h);
    for (int k = 0; k < 7; ++k) trip.emplace_back(ii, ii + k - 3, opt.dissipation * d6w[k] / h3);
  }
  Eigen::SparseMatrix<double> M(static_cast<int>(N), static_cast<int>(N));
  M.setFromTriplets(trip.begin(), trip.end());

  const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t_final / g.dt - 1e-9)));
  const double dt = t_final / static_cast<double>(steps);
  const auto pf = RadauPartialFractions::make();
  Eigen::SparseMatrix<double> I(static_cast<int>(N), static_cast<int>(N));
  I.setIdentity();
  Eigen::SparseMatrix<double> Br = I - (dt / pf.z_real) * M;
  Eigen::SparseMatrix<cplx> Bc = I.cast<cplx>() - (dt / pf.z_cplx) * M.cast<cplx>();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lur;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> luc;
  lur.compute(Br);
  luc.compute(Bc);
  if (lur.info() != Eigen::Success || luc.info() != Eigen::Success) {
    throw OracleUnconvergedError("MOL factorization failed", INFINITY);
  }
  for (std::size_t s = 0; s < steps; ++s) {
    const Eigen::VectorXd qr = lur.solve(q);
    const Eigen::VectorXcd qc = luc.solve(q.cast<cplx>());
    q = pf.a_real * qr + 2.0 * (pf.a_cplx * qc).real();
  }
  out.value.assign(q.data() + 3, q.data() + N - 3);
  return out;
}

}  // namespace detail

/// Method-of-lines solution of the interface problem at t_final: fourth-order
/// centered differences, a small sixth-difference damping that removes the
/// grid-scale null mode of the centered third derivative, and L-stable
/// fifth-order implicit time stepping. With certification the run is
/// repeated on a grid twice as fine and must agree on the window.
inline MolResult mol_interface_solve(const ModelParams& params, const GridSpec& grid,
                                     double t_final, const MolOptions& opt = {}) {
  grid.validate();
  if (!(params.a >= 0.0 && params.c > 0.0)) throw DomainError("MOL requires a >= 0, c > 0");
  if (t_final < 0.0) throw DomainError("t_final must be nonnegative");
  MolResult r;
  if (!opt.certify || t_final == 0.0) {
    r.profile = detail::mol_run(params, grid, t_final, opt);
    r.refinement_discrepancy = opt.certify ? 0.0 : NAN;
    return r;
  }
  const Profile coarse = detail::mol_run(params, grid, t_final, opt);
  r.profile = detail::mol_run(params, grid.refined(), t_final, opt);
  r.refinement_discrepancy = sup_difference(coarse, r.profile, opt.window_lo, opt.window_hi);
  if (!(r.refinement_discrepancy <= opt.tolerance)) {
    throw OracleUnconvergedError("MOL solutions on n and 2n disagree", r.refinement_discrepancy);
  }
  return r;
}

struct SplitStepOptions {
  bool nonlinear = true;
  double up_step_width = 1.0;    // width of the compensating up-step
  double cfl = 0.1;              // dt <= cfl * dx / (6 max|u|)
  double resolution_tol = 1e-10; // allowed energy fraction in the top 1/8 modes
  bool certify = true;
  double tolerance = 1e-6;       // allowed n / 2n discrepancy on the window
  double window_lo = -10.0;
  double window_hi = 10.0;
  // Relaxation toward the datum within sponge_fraction * x_max of the
  // periodic seam, absorbing the dispersive tail before it wraps around.
  // Zero disables it (and restores exact conservation of the mean).
  double sponge_fraction = 0.2;
  double sponge_rate = 2000.0;
};

struct SplitStepResult {
  Profile profile;
  double mass_drift = 0.0;      // relative change of the integral of u
  double tail_fraction = 0.0;   // energy fraction in the top 1/8 modes
  double refinement_discrepancy = NAN;
};

namespace detail {

inline SplitStepResult split_step_run(double a, const GridSpec& g, double t_final,
                                      double width, const SplitStepOptions& opt) {
  const std::size_t n = g.n;
  const double L = g.x_max - g.x_min;
  const double dx = g.dx();
  std::vector<double> x(n), u(n);
  const double xu = 0.9 * g.x_max;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = g.x_min + dx * static_cast<double>(i);
    u[i] = a * (0.5 * (1.0 - std::tanh(x[i] / width)) +
                0.5 * (1.0 + std::tanh((x[i] - xu) / opt.up_step_width)));
  }
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long m = i <= n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
    k[i] = 2.0 * std::numbers::pi * static_cast<double>(m) / L;
  }
  if (n % 2 == 0) k[n / 2] = 0.0;  // Nyquist derivative set to zero

  Eigen::FFT<double> fft;
  std::vector<cplx> uh;
  fft.fwd(uh, u);
  const double mass0 = uh[0].real();

  // -6 u u_x = -3 (u^2)_x, evaluated spectrally.
  auto rhs = [&](const std::vector<cplx>& vh) {
    std::vector<double> v;
    fft.inv(v, vh);
    for (auto& e : v) e = e * e;
    std::vector<cplx> wh;
    fft.fwd(wh, v);
    for (std::size_t i = 0; i < n; ++i) wh[i] *= cplx{0.0, -3.0 * k[i]};
    return wh;
  };

  const double umax = std::max(1e-300, 2.0 * a);
  const double dt_cfl = opt.cfl * dx / (6.0 * umax);
  // The sponge needs many small steps to absorb anything, so it sets the
  // step even when the flux substep is off.
  const bool stepped = opt.nonlinear || opt.sponge_fraction > 0.0;
  const double dt_max = std::min(g.dt, stepped ? dt_cfl : g.dt);
  const std::size_t steps = t_final > 0.0 ? static_cast<std::size_t>(std::ceil(t_final / dt_max - 1e-9)) : 0;
  const double dt = steps ? t_final / static_cast<double>(steps) : 0.0;

  std::vector<double> u0 = u, damp(n, 1.0);
  bool sponge = false;
  const double sponge_width = opt.sponge_fraction * g.x_max;
  if (sponge_width > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::min(x[i] - g.x_min, g.x_max - x[i]);
      if (d < sponge_width) {
        const double r = 1.0 - d / sponge_width;
        damp[i] = std::exp(-opt.sponge_rate * r * r * dt);
        sponge = true;
      }
    }
  }
  std::vector<cplx> half(n);
  for (std::size_t i = 0; i < n; ++i) {
    half[i] = std::exp(cplx{0.0, k[i] * k[i] * k[i] * 0.5 * dt});
  }
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) uh[i] *= half[i];
    if (opt.nonlinear) {
      const auto k1 = rhs(uh);
      std::vector<cplx> mid(n);
      for (std::size_t i = 0; i < n; ++i) mid[i] = uh[i] + 0.5 * dt * k1[i];
      const auto k2 = rhs(mid);
      for (std::size_t i = 0; i < n; ++i) uh[i] += dt * k2[i];
    }
    for (std::size_t i = 0; i < n; ++i) uh[i] *= half[i];
    if (sponge) {
      std::vector<double> v;
      fft.inv(v, uh);
      for (std::size_t i = 0; i < n; ++i) v[i] = u0[i] + (v[i] - u0[i]) * damp[i];
      fft.fwd(uh, v);
    }
  }

  SplitStepResult r;
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = std::norm(uh[i]);
    total += e;
    if (std::fabs(k[i]) > 0.875 * std::numbers::pi / dx) tail += e;
  }
  r.tail_fraction = total > 0.0 ? tail / total : 0.0;
  r.mass_drift = mass0 != 0.0 ? std::fabs(uh[0].real() - mass0) / std::fabs(mass0) : 0.0;
  std::vector<double> v;
  fft.inv(v, uh);
  r.profile.x = std::move(x);
  r.profile.value = std::move(v);
  return r;
}

}  // namespace detail

/// Strang split-step solution of u_t + 6 u u_x + u_xxx = 0 (lab frame) from
/// a smoothed step of height a at x = 0, embedded periodically with a wider
/// up-step near 0.9 x_max. Dispersion is applied exactly in Fourier space;
/// the nonlinear flux is advanced by the explicit midpoint rule.
inline SplitStepResult kdv_split_step(double a, const GridSpec& grid, double t_final,
                                      double smoothing_width, const SplitStepOptions& opt = {}) {
  grid.validate();
  if (!(smoothing_width > 0.0)) throw DomainError("smoothing width must be positive");
  if (t_final < 0.0) throw DomainError("t_final must be nonnegative");
  SplitStepResult r = detail::split_step_run(a, grid, t_final, smoothing_width, opt);
  if (r.tail_fraction > opt.resolution_tol) {
    throw ResolutionError("split-step solution is under-resolved", r.tail_fraction);
  }
  if (opt.certify) {
    SplitStepResult fine = detail::split_step_run(a, grid.refined(), t_final, smoothing_width, opt);
    r.refinement_discrepancy = sup_difference(r.profile, fine.profile, opt.window_lo, opt.window_hi);
    if (!(r.refinement_discrepancy <= opt.tolerance)) {
      throw OracleUnconvergedError("split-step solutions on n and 2n disagree",
                                   r.refinement_discrepancy);
    }
  }
  return r;
}

struct ErrorCurves {
  std::vector<double> x;
  std::vector<double> e_model;
  std::vector<double> e_lkdv;
  double t = 0.0;
  double a = 0.0;
  double kdv_discrepancy = NAN;  // split-step n / 2n agreement
  double smoothing_gap = NAN;    // sup |u_KdV(w) - u_KdV(w/2)| on the window

  double max_model() const { return e_model.empty() ? 0.0 : *std::max_element(e_model.begin(), e_model.end()); }
  double max_lkdv() const { return e_lkdv.empty() ? 0.0 : *std::max_element(e_lkdv.begin(), e_lkdv.end()); }
};

struct ErrorCurveOptions {
  double window_lo = -10.0;
  double window_hi = 10.0;
  std::size_t points = 401;
  double smoothing_width = 0.05;
  // Richardson-extrapolate u_KdV over smoothing widths w and w/2 (the
  // smoothing error is O(w^2)); the w/2 run uses twice the points.
  bool extrapolate_smoothing = true;
  double rel_tol = 1e-10;
  SplitStepOptions split{};
};

/// Default grid for the split-step oracle: wide enough for the seam sponge
/// and the compensating step to stay far from a [-10, 10] window.
inline GridSpec default_kdv_grid() { return GridSpec{-80.0, 80.0, 16384, 1.0}; }

/// E_model = |u_KdV - u| / a and E_LKdV = |u_KdV - u_LKdV| / a on a window
/// of the lab frame, with u the interface model at (a, 4a).
inline ErrorCurves error_curves(double a, double t, const GridSpec& grid,
                                const ErrorCurveOptions& opt = {}) {
  if (!(a > 0.0)) throw DomainError("error curves require a > 0");
  if (!(t > 0.0)) throw DomainError("error curves require t > 0");
  if (opt.points < 2) throw DomainError("error curves need at least two points");
  SplitStepOptions so = opt.split;
  so.window_lo = opt.window_lo;
  so.window_hi = opt.window_hi;
  const SplitStepResult kdv = kdv_split_step(a, grid, t, opt.smoothing_width, so);
  std::optional<SplitStepResult> half;
  if (opt.extrapolate_smoothing) {
    SplitStepOptions sh = so;
    sh.certify = false;
    half = kdv_split_step(a, grid.refined(), t, 0.5 * opt.smoothing_width, sh);
  }
  auto u_kdv = [&](double x) {
    const double u1 = kdv.profile.at(x);
    return half ? (4.0 * half->profile.at(x) - u1) / 3.0 : u1;
  };
  const ModelParams m = ModelParams::make(a, 4.0 * a);

  ErrorCurves ec;
  ec.t = t;
  ec.a = a;
  ec.kdv_discrepancy = kdv.refinement_discrepancy;
  if (half) ec.smoothing_gap = sup_difference(kdv.profile, half->profile, opt.window_lo, opt.window_hi);
  std::vector<double> xq(opt.points);
  for (std::size_t i = 0; i < opt.points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(opt.points - 1);
    ec.x.push_back(opt.window_lo + s * (opt.window_hi - opt.window_lo));
    xq[i] = ec.x.back() - m.c * t;  // lab -> traveling
  }
  ProfileOptions po;
  po.rel_tol = opt.rel_tol;
  const auto model = evaluate_profile(xq, t, m, po);
  for (std::size_t i = 0; i < opt.points; ++i) {
    if (!model[i].ok) throw Error("model evaluation failed at x = " + std::to_string(ec.x[i]) + ": " + model[i].message);
    const double uk = u_kdv(ec.x[i]);
    ec.e_model.push_back(std::fabs(uk - model[i].value) / a);
    ec.e_lkdv.push_back(std::fabs(uk - lkdv_step(ec.x[i], t, a)) / a);
  }
  return ec;
}

}  // namespace dswkit
