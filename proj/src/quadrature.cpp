#include "gpebox/quadrature.hpp"

#include <cmath>
#include <mutex>

namespace gpebox {

namespace {
constexpr int kN = 64;
double nodes[kN], weights[kN];
std::once_flag init_flag;

// Nodes/weights by Newton iteration on Legendre P_64.
void init_rule() {
  for (int i = 0; i < kN / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= kN; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = kN * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[kN - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[kN - 1 - i] = w;
  }
}
}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  std::call_once(init_flag, init_rule);
  double h = 0.5 * (b - a), c = 0.5 * (a + b), s = 0.0;
  for (int i = 0; i < kN; ++i) s += weights[i] * f(c + h * nodes[i]);
  return h * s;
}

double integrate_split(const std::function<double(double)>& f) {
  return gauss_legendre(f, -1.0, 0.0) + gauss_legendre(f, 0.0, 1.0);
}

void quadrature_rule(double a, double b, std::vector<double>& xs,
                     std::vector<double>& ws) {
  std::call_once(init_flag, init_rule);
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  xs.resize(kN);
  ws.resize(kN);
  for (int i = 0; i < kN; ++i) {
    xs[i] = c + h * nodes[i];
    ws[i] = h * weights[i];
  }
}

}  // namespace gpebox
