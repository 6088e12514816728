// Convergence study for D(t) = sup_{x in [-10, 10]} |U(x, t) - stationary|,
// (a, c) = (1, 4). Its output is kept in tests/acceptance/long_time_study.txt
// and fixes checks::kLongTimeThreshold.

#include <cmath>
#include <cstdio>

#include "dswkit/checks.hpp"

namespace {

double distance(double t, double step, double rel_tol) {
  using namespace dswkit;
  const ModelParams& m = checks::reference_params();
  double d = 0.0;
  for (double x = -10.0; x <= 10.0 + 1e-12; x += step) {
    d = std::max(d, std::fabs(checks::shifted_value(x, t, m, rel_tol) -
                              checks::shifted_stationary(x, t, m)));
  }
  return d;
}

}  // namespace

int main() {
  std::printf("# sup_{x in [-10,10]} |U(x,t) - stationary| for (a,c)=(1,4), shifted frame\n");
  std::printf("# t step rel_tol D\n");
  for (double t : {5.0, 10.0, 20.0}) {
    for (double step : {0.05, 0.025, 0.0125}) {
      for (double tol : {1e-10, 1e-12}) {
        std::printf("%g %g %g %.6f\n", t, step, tol, distance(t, step, tol));
      }
    }
  }
}
