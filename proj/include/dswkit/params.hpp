#pragma once

#include <cmath>
#include <string>

#include "dswkit/errors.hpp"

namespace dswkit {

/// Physical parameters of the moving-interface model: left-state amplitude
/// `a` and front speed `c`.
///
/// In the frame travelling with the front, the solution obeys
/// q_t + q_xxx = (c - 6a) q_x for x < 0 and q_t + q_xxx = c q_x for x > 0.
struct ModelParams {
  double a = 1.0;
  double c = 4.0;

  static ModelParams make(double a, double c) {
    ModelParams p{a, c};
    p.validate();
    return p;
  }

  void validate() const {
    if (!(std::isfinite(a) && std::isfinite(c)) || !(a > 0.0) || !(c > 0.0)) {
      throw DomainError("model parameters require a > 0 and c > 0 (got a=" +
                        std::to_string(a) + ", c=" + std::to_string(c) + ")");
    }
  }

  double gamma() const { return a / c; }
  double left_coeff() const { return c - 6.0 * a; }
  double right_coeff() const { return c; }

  /// The stationary long-time profile is oscillatory only when c - 6a < 0.
  bool has_oscillatory_stationary_state() const { return left_coeff() < 0.0; }
};

struct CanonicalForm {
  ModelParams params;  // (a, c) = (gamma, 1)
  double space_scale;  // sqrt(c)
  double time_scale;   // c^{3/2}
  double amp_scale;    // a
};

/// Rescaling that removes one parameter:
///   q(x, t; a, c) = amp_scale * Q(x * space_scale, t * time_scale)
/// where Q has unit left state and obeys the equations of the canonical
/// parameters (gamma, 1).
inline CanonicalForm to_canonical(const ModelParams& params) {
  params.validate();
  const double sc = std::sqrt(params.c);
  return CanonicalForm{ModelParams{params.gamma(), 1.0}, sc, params.c * sc,
                       params.a};
}

enum class Frame {
  Lab,        // u(x, t), front at x = c t
  Traveling,  // q(x, t) = u(x + c t, t), front at x = 0
  Shifted,    // U(x, t) = Q(x - gamma t, t), canonical units
};

inline const char* to_string(Frame f) {
  switch (f) {
    case Frame::Lab: return "lab";
    case Frame::Traveling: return "traveling";
    case Frame::Shifted: return "shifted";
  }
  return "?";
}

inline Frame parse_frame(const std::string& s) {
  if (s == "lab") return Frame::Lab;
  if (s == "traveling") return Frame::Traveling;
  if (s == "shifted") return Frame::Shifted;
  throw DomainError("unknown frame '" + s + "'");
}

struct SpaceTime {
  double x;
  double t;
};

namespace detail {

inline SpaceTime to_traveling(SpaceTime p, Frame from, const ModelParams& m) {
  switch (from) {
    case Frame::Lab: return {p.x - m.c * p.t, p.t};
    case Frame::Traveling: return p;
    case Frame::Shifted: {
      const double sc = std::sqrt(m.c);
      return {(p.x - m.gamma() * p.t) / sc, p.t / (m.c * sc)};
    }
  }
  return p;
}

inline SpaceTime from_traveling(SpaceTime p, Frame to, const ModelParams& m) {
  switch (to) {
    case Frame::Lab: return {p.x + m.c * p.t, p.t};
    case Frame::Traveling: return p;
    case Frame::Shifted: {
      const double sc = std::sqrt(m.c);
      const double ts = p.t * m.c * sc;
      return {p.x * sc + m.gamma() * ts, ts};
    }
  }
  return p;
}

}  // namespace detail

/// Maps coordinates between frames. Only coordinates move; values in the
/// Shifted frame additionally carry the 1/a amplitude scaling.
inline SpaceTime frame_map(SpaceTime p, Frame from, Frame to,
                           const ModelParams& params) {
  if (from == to) return p;
  return detail::from_traveling(detail::to_traveling(p, from, params), to,
                                params);
}

}  // namespace dswkit
