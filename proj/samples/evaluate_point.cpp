// Evaluates q(x, t) at a few points and prints the value with its
// quadrature error estimate.
//
//   evaluate_point [a c]

#include <cstdio>
#include <cstdlib>

#include "dswkit/dswkit.hpp"

int main(int argc, char** argv) {
  using namespace dswkit;
  const double a = argc > 2 ? std::atof(argv[1]) : 1.0;
  const double c = argc > 2 ? std::atof(argv[2]) : 4.0;
  const ModelParams m = ModelParams::make(a, c);

  std::printf("a=%g c=%g gamma=%g exclusion radius=%.6f\n", m.a, m.c, m.gamma(),
              exclusion_radius(to_canonical(m).params));
  std::printf("%8s %8s %22s %10s %8s\n", "x", "t", "q", "err", "panels");
  for (double t : {0.1, 1.0, 2.0}) {
    for (double x : {-5.0, -1.0, 0.0, 1.0, 3.0}) {
      EvalRequest r;
      r.x = x;
      r.t = t;
      r.params = m;
      const EvalResult e = evaluate(r);
      std::printf("%8g %8g %22.15f %10.2e %8zu\n", x, t, e.value, e.error_estimate, e.panels);
    }
  }
}
