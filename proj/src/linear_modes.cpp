#include "gpebox/linear_modes.hpp"

#include <cmath>
#include <stdexcept>

#include "gpebox/quadrature.hpp"

namespace gpebox {

double LinearMode::eval(double x) const {
  if (parity == Parity::antisymmetric) return amplitude * std::sin(k * x);
  // symmetric: sin(k|x|) + (2k/gamma) cos(kx), gamma recoverable from k via
  // the quantization condition; amplitude stores 1/norm, the gamma-dependent
  // slope ratio is baked into `slope_ratio` below.
  return amplitude * (std::sin(k * std::fabs(x)) + slope_ratio_ * std::cos(k * x));
}

double symmetric_k(double gamma, int n) {
  if (gamma <= 0.0) throw std::domain_error("symmetric_k: gamma must be > 0");
  double lo = (2.0 * n - 1.0) * M_PI / 2.0 + 1e-9;
  double hi = n * M_PI - 1e-9;
  auto f = [&](double k) { return std::sin(k) + 2.0 * k / gamma * std::cos(k); };
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (flo * fm <= 0.0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<LinearMode> basis(double gamma, int count) {
  std::vector<LinearMode> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    LinearMode md;
    if (i % 2 == 1) {
      int j = (i + 1) / 2;
      md.parity = LinearMode::Parity::antisymmetric;
      md.index = j;
      md.k = j * M_PI;
      md.energy = md.k * md.k;
      md.amplitude = 1.0;  // integral of sin^2(j pi x) over [-1,1] is 1
      md.slope_ratio_ = 0.0;
    } else {
      int n = i / 2 + 1;
      md.parity = LinearMode::Parity::symmetric;
      md.index = n;
      md.k = symmetric_k(gamma, n);
      md.energy = md.k * md.k;
      md.slope_ratio_ = 2.0 * md.k / gamma;
      double k = md.k, r = md.slope_ratio_;
      double nrm = integrate_split([&](double x) {
        double v = std::sin(k * std::fabs(x)) + r * std::cos(k * x);
        return v * v;
      });
      md.amplitude = 1.0 / std::sqrt(nrm);
    }
    out.push_back(md);
  }
  return out;
}

TwoModeModel overlaps(double gamma) {
  if (gamma <= 0.0) throw std::domain_error("overlaps: gamma must be > 0");
  auto b = basis(gamma, 2);
  const LinearMode &p0 = b[0], &p1 = b[1];
  TwoModeModel m;
  m.gamma = gamma;
  m.e0 = p0.energy;
  m.e1 = p1.energy;
  m.Delta = m.e1 - m.e0;
  m.omega = 0.5 * m.Delta;
  m.Omega = 0.5 * (m.e1 + m.e0);
  m.chi40 = integrate_split([&](double x) { return std::pow(p0.eval(x), 4); });
  m.chi04 = integrate_split([&](double x) { return std::pow(p1.eval(x), 4); });
  m.chi22 = integrate_split([&](double x) {
    double a = p0.eval(x), c = p1.eval(x);
    return a * a * c * c;
  });
  m.W40 = integrate_split([&](double x) {
    double v = (p0.eval(x) + p1.eval(x)) / std::sqrt(2.0);
    return v * v * v * v;
  });
  return m;
}

}  // namespace gpebox
