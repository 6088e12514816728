#pragma once

#include <array>
#include <cmath>

namespace dswkit {

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK qk15 tables).
struct GaussKronrod15 {
  static constexpr std::array<double, 8> xgk{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for the nodes xgk[1], xgk[3], xgk[5], xgk[7].
  static constexpr std::array<double, 4> wg{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  template <class T>
  struct Result {
    T kronrod;
    T gauss;
    double abs_integral;  // Kronrod estimate of the integral of |f|
  };

  /// Applies both rules to f on [lo, hi]; f returns T (double or complex).
  template <class T, class F>
  static Result<T> apply(F&& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const T fc = f(mid);
    T rk = fc * wgk[7];
    T rg = fc * wg[3];
    double ra = std::abs(fc) * wgk[7];
    for (int i = 0; i < 7; ++i) {
      const double dx = half * xgk[i];
      const T f1 = f(mid - dx);
      const T f2 = f(mid + dx);
      rk += (f1 + f2) * wgk[i];
      ra += (std::abs(f1) + std::abs(f2)) * wgk[i];
      if (i % 2 == 1) rg += (f1 + f2) * wg[i / 2];
    }
    return {rk * half, rg * half, ra * std::abs(half)};
  }
};

}  // namespace dswkit
