#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <queue>
#include <variant>
#include <vector>

#include "dswkit/errors.hpp"
#include "dswkit/gauss_kronrod.hpp"
#include "dswkit/params.hpp"
#include "dswkit/roots.hpp"

namespace dswkit {

/// Straight piece base + s * direction, s in [0, length]. A truncated ray
/// and a finite chord are both represented this way.
struct RaySegment {
  cplx base;
  cplx direction;  // unit modulus
  double length;
};

/// Circular arc center + radius * exp(i theta), theta from theta0 to theta1.
/// theta1 < theta0 runs clockwise.
struct ArcSegment {
  cplx center;
  double radius;
  double theta0;
  double theta1;
};

using Segment = std::variant<RaySegment, ArcSegment>;

/// Point at fraction s in [0, 1] of the segment.
inline cplx segment_point(const Segment& seg, double s) {
  if (const auto* r = std::get_if<RaySegment>(&seg)) {
    return r->base + r->direction * (s * r->length);
  }
  const auto& a = std::get<ArcSegment>(seg);
  return a.center + std::polar(a.radius, a.theta0 + s * (a.theta1 - a.theta0));
}

/// d(point)/ds.
inline cplx segment_velocity(const Segment& seg, double s) {
  if (const auto* r = std::get_if<RaySegment>(&seg)) {
    return r->direction * r->length;
  }
  const auto& a = std::get<ArcSegment>(seg);
  const double dth = a.theta1 - a.theta0;
  return cplx{0.0, dth} *
         std::polar(a.radius, a.theta0 + s * dth);
}

inline double segment_length(const Segment& seg) {
  if (const auto* r = std::get_if<RaySegment>(&seg)) return r->length;
  const auto& a = std::get<ArcSegment>(seg);
  return a.radius * std::abs(a.theta1 - a.theta0);
}

struct ContourPath {
  std::vector<Segment> segments;
  double arc_radius = 0.0;
  double truncation_radius = 0.0;  // largest |lambda| reached

  cplx start() const { return segment_point(segments.front(), 0.0); }
  cplx end() const { return segment_point(segments.back(), 1.0); }

  double length() const {
    double L = 0.0;
    for (const auto& s : segments) L += segment_length(s);
    return L;
  }

  /// Largest gap between the end of one segment and the start of the next.
  double max_joint_gap() const {
    double g = 0.0;
    for (std::size_t i = 1; i < segments.size(); ++i) {
      g = std::max(g, std::abs(segment_point(segments[i - 1], 1.0) -
                               segment_point(segments[i], 0.0)));
    }
    return g;
  }
};

enum class TiltSide {
  Auto,      // exterior when the time exponent is positive, interior otherwise
  Interior,  // legs at pi/3 + delta and 2pi/3 - delta
  Exterior,  // legs at pi/3 - delta and 2pi/3 + delta
};

/// Which root branch carries the x-dependence e^{i nu x} of the integrand.
enum class DecayBranch { Auto, Nu0, Nu1, Nu2 };

struct ContourOptions {
  TiltSide side = TiltSide::Auto;
  double tilt = std::numbers::pi / 12.0;
  DecayBranch branch = DecayBranch::Auto;
  // Bend the leg that meets the saddle of e^{i(nu x + lambda^3 t)} for the
  // nu_1 / nu_2 terms with x < 0 and t > 0.
  bool saddle_kink = false;
  double log_cutoff = 37.0;        // truncate at e^{-37} relative to the max
  double truncation_scale = 1.0;   // stretches the truncated tails
  double max_radius = 1e5;
};

namespace detail {

struct Leg {
  std::vector<cplx> vertices;  // outward, vertices.front() on the arc
  cplx tail_dir;
  double tail_len = 0.0;
};

inline double exponent_re(const ModelParams& m, DecayBranch b, double x,
                          double t, cplx l) {
  const cplx l3 = l * l * l;
  const double tpart = std::real(cplx{0.0, 1.0} * l3 * t);
  if (x == 0.0) return tpart;
  auto part = [&](int j, cplx s) {
    const double p = j == 0 ? m.right_coeff() : m.left_coeff();
    return std::real(cplx{0.0, 1.0} * nu_raw(p, s, l) * x);
  };
  switch (b) {
    case DecayBranch::Nu0: return tpart + part(0, 1.0);
    case DecayBranch::Nu1: return tpart + part(1, kAlpha);
    case DecayBranch::Nu2: return tpart + part(2, std::conj(kAlpha));
    case DecayBranch::Auto: break;
  }
  if (x > 0.0) return tpart + part(0, 1.0);
  return tpart + std::max(part(1, kAlpha), part(2, std::conj(kAlpha)));
}

// Marches along base + r * dir until phi drops `cutoff` below `ref`
// (and below the leg's own running maximum) while decreasing.
template <class Phi>
double march(const Phi& phi, cplx base, cplx dir, double ref, double cutoff,
             double max_radius) {
  double r = 0.0;
  double prev = phi(base);
  double runmax = std::max(prev, ref);
  while (true) {
    const double step = 0.02 * std::abs(base + r * dir) + 0.01;
    r += step;
    if (std::abs(base + r * dir) > max_radius) {
      throw NoDecayError("integrand does not decay along the contour legs");
    }
    const double v = phi(base + r * dir);
    runmax = std::max(runmax, v);
    if (v < runmax - cutoff && v < prev) return r;
    prev = v;
  }
}

}  // namespace detail

/// Builds a contour homotopic to the boundary of the sector
/// pi/3 < arg lambda < 2pi/3 (outside the disk of radius R0), tilted so that
/// e^{i nu x + i lambda^3 t} decays along both legs, and truncated where
/// that exponential falls e^{-37} below its maximum on the path.
/// Orientation: in along the left leg, clockwise along the arc, out along
/// the right leg.
inline ContourPath build_contour(const ModelParams& params, double x, double t,
                                 double R0, const ContourOptions& opt = {}) {
  if (x == 0.0 && t == 0.0) {
    throw NoDecayError("no decay at x = 0, t = 0; use the initial datum");
  }
  if (!(R0 > 0.0)) throw DomainError("arc radius must be positive");
  if (!(opt.tilt > 0.0 && opt.tilt < std::numbers::pi / 6.0)) {
    throw DomainError("tilt must lie in (0, pi/6)");
  }
  const double pi = std::numbers::pi;
  const double d = opt.tilt;
  TiltSide side = opt.side;
  if (side == TiltSide::Auto) {
    side = t > 0.0 ? TiltSide::Exterior : TiltSide::Interior;
  }
  const bool ext = side == TiltSide::Exterior;
  const double right_angle = ext ? pi / 3.0 - d : pi / 3.0 + d;
  const double left_angle = ext ? 2.0 * pi / 3.0 + d : 2.0 * pi / 3.0 - d;

  detail::Leg right{{std::polar(R0, right_angle)}, std::polar(1.0, right_angle)};
  detail::Leg left{{std::polar(R0, left_angle)}, std::polar(1.0, left_angle)};

  if (opt.saddle_kink && ext && x < 0.0 && t > 0.0 &&
      (opt.branch == DecayBranch::Nu1 || opt.branch == DecayBranch::Nu2)) {
    const double s = std::sqrt(-x / (3.0 * t));
    if (s * std::cos(d) > R0) {
      if (opt.branch == DecayBranch::Nu1) {
        right.vertices = {std::polar(R0, pi / 3.0 + d), std::polar(s, pi / 3.0)};
      } else {
        left.vertices = {std::polar(R0, 2.0 * pi / 3.0 - d),
                         std::polar(s, 2.0 * pi / 3.0)};
      }
    }
  }

  auto phi = [&](cplx l) {
    return detail::exponent_re(params, opt.branch, x, t, l);
  };

  const double th0 = std::arg(left.vertices.front());
  const double th1 = std::arg(right.vertices.front());
  const ArcSegment arc{cplx{0.0, 0.0}, R0, th0, th1};

  // Maximum over the fixed (arc and chord) part of the path.
  double fixed_max = -1e300;
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    fixed_max = std::max(fixed_max, phi(segment_point(arc, double(i) / kSamples)));
  }
  for (const auto* leg : {&left, &right}) {
    for (std::size_t k = 1; k < leg->vertices.size(); ++k) {
      for (int i = 0; i <= kSamples; ++i) {
        const double s = double(i) / kSamples;
        fixed_max = std::max(
            fixed_max,
            phi(leg->vertices[k - 1] + s * (leg->vertices[k] - leg->vertices[k - 1])));
      }
    }
  }
  // Tails may rise before they fall; settle each against its own maximum
  // first, then against the global one.
  double global_max = fixed_max;
  for (auto* leg : {&left, &right}) {
    const cplx b = leg->vertices.back();
    const double r = detail::march(phi, b, leg->tail_dir, fixed_max, 0.0,
                                   opt.max_radius);
    double m = -1e300;
    for (int i = 0; i <= kSamples; ++i) {
      m = std::max(m, phi(b + leg->tail_dir * (r * i / kSamples)));
    }
    global_max = std::max(global_max, m);
  }
  for (auto* leg : {&left, &right}) {
    leg->tail_len = opt.truncation_scale *
                    detail::march(phi, leg->vertices.back(), leg->tail_dir,
                                  global_max, opt.log_cutoff, opt.max_radius);
  }

  ContourPath path;
  path.arc_radius = R0;
  {
    const cplx tip = left.vertices.back() + left.tail_dir * left.tail_len;
    path.segments.emplace_back(RaySegment{tip, -left.tail_dir, left.tail_len});
    for (std::size_t k = left.vertices.size() - 1; k > 0; --k) {
      const cplx a = left.vertices[k];
      const cplx b = left.vertices[k - 1];
      path.segments.emplace_back(RaySegment{a, (b - a) / std::abs(b - a), std::abs(b - a)});
    }
  }
  path.segments.emplace_back(arc);
  for (std::size_t k = 1; k < right.vertices.size(); ++k) {
    const cplx a = right.vertices[k - 1];
    const cplx b = right.vertices[k];
    path.segments.emplace_back(RaySegment{a, (b - a) / std::abs(b - a), std::abs(b - a)});
  }
  path.segments.emplace_back(
      RaySegment{right.vertices.back(), right.tail_dir, right.tail_len});
  path.truncation_radius = std::max(std::abs(path.start()), std::abs(path.end()));
  return path;
}

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t panels_used = 0;
  double abs_integral = 0.0;  // integral of |f| |dlambda|
};

/// Globally adaptive Gauss-Kronrod quadrature of f(lambda) dlambda along the
/// path. Stops when the summed |K15 - G7| estimate is at most
/// rel_tol * integral of |f||dlambda|. Throws ConvergenceError (carrying the
/// best value) when more than max_panels panels would be needed.
template <class F>
QuadResult integrate(const ContourPath& path, F&& f, double rel_tol,
                     std::size_t max_panels = 10000) {
  if (!(rel_tol >= 1e-13)) throw DomainError("rel_tol must be at least 1e-13");
  struct Panel {
    std::size_t seg;
    double lo, hi;
    cplx value;
    double err;
    double absint;
  };
  std::vector<Panel> panels;
  auto eval = [&](std::size_t seg, double lo, double hi) {
    const Segment& s = path.segments[seg];
    auto g = [&](double u) -> cplx {
      return f(segment_point(s, u)) * segment_velocity(s, u);
    };
    const auto r = GaussKronrod15::apply<cplx>(g, lo, hi);
    return Panel{seg, lo, hi, r.kronrod, std::abs(r.kronrod - r.gauss),
                 r.abs_integral};
  };
  auto cmp = [&](std::size_t i, std::size_t j) {
    return panels[i].err < panels[j].err ||
           (panels[i].err == panels[j].err && i > j);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

  for (std::size_t k = 0; k < path.segments.size(); ++k) {
    const double L = segment_length(path.segments[k]);
    if (L == 0.0) continue;
    const int n = std::clamp(static_cast<int>(std::ceil(L / 0.5)), 1, 512);
    for (int i = 0; i < n; ++i) {
      panels.push_back(eval(k, double(i) / n, double(i + 1) / n));
      heap.push(panels.size() - 1);
    }
  }
  auto totals = [&](cplx& v, double& e, double& a) {
    v = 0.0;
    e = 0.0;
    a = 0.0;
    for (const auto& p : panels) {
      if (p.lo < p.hi) {
        v += p.value;
        e += p.err;
        a += p.absint;
      }
    }
  };
  cplx value;
  double err, absint;
  totals(value, err, absint);
  std::size_t live = panels.size();
  while (err > rel_tol * absint && err > 0.0) {
    if (live >= max_panels) {
      throw ConvergenceError("contour quadrature exceeded the panel budget",
                             value, err);
    }
    const std::size_t i = heap.top();
    heap.pop();
    Panel worst = panels[i];
    panels[i].hi = panels[i].lo;  // retire
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel a = eval(worst.seg, worst.lo, mid);
    Panel b = eval(worst.seg, mid, worst.hi);
    value += a.value + b.value - worst.value;
    err += a.err + b.err - worst.err;
    absint += a.absint + b.absint - worst.absint;
    panels.push_back(a);
    heap.push(panels.size() - 1);
    panels.push_back(b);
    heap.push(panels.size() - 1);
    ++live;
    if (live % 256 == 0) totals(value, err, absint);
  }
  totals(value, err, absint);
  return QuadResult{value, err, live, absint};
}

}  // namespace dswkit
