#include "gpebox/two_mode.hpp"

#include <cmath>

#include "gpebox/quadrature.hpp"

namespace gpebox {

std::optional<double> variational_u2(const TwoModeModel& m, double etaN) {
  double num = etaN * (3.0 * m.chi22 - m.chi04) - m.Delta;
  double den = etaN * (6.0 * m.chi22 - m.chi40 - m.chi04);
  if (den == 0.0) return std::nullopt;
  double u2 = num / den;
  if (u2 <= 0.0 || u2 >= 1.0) return std::nullopt;
  return u2;
}

double variational_energy(const TwoModeModel& m, double u, double etaN) {
  double u2 = u * u, v2 = 1.0 - u2;
  return u2 * m.e0 + v2 * m.e1 +
         0.5 * etaN * (m.chi40 * u2 * u2 + m.chi04 * v2 * v2 + 6.0 * m.chi22 * u2 * v2);
}

double mode_gamma_u(const TwoModeModel& m, double u, double etaN) {
  double u2 = u * u, v2 = 1.0 - u2;
  return m.e0 + etaN * (m.chi40 * u2 + 3.0 * m.chi22 * v2);
}

double mode_gamma_v(const TwoModeModel& m, double u, double etaN) {
  double u2 = u * u, v2 = 1.0 - u2;
  return m.e1 + etaN * (m.chi04 * v2 + 3.0 * m.chi22 * u2);
}

std::optional<TwoModeState> variational_state(const TwoModeModel& m, double etaN) {
  auto u2 = variational_u2(m, etaN);
  if (!u2) return std::nullopt;
  TwoModeState s;
  s.u = std::sqrt(*u2);
  s.v = std::sqrt(1.0 - *u2);
  s.Gamma = mode_gamma_u(m, s.u, etaN);
  s.energy = variational_energy(m, s.u, etaN);
  return s;
}

double critical_attractive_variational(const TwoModeModel& m) {
  return -m.Delta / (3.0 * m.chi22 - m.chi40);
}

double critical_repulsive_variational(const TwoModeModel& m) {
  return m.Delta / (3.0 * m.chi22 - m.chi04);
}

double malomed_large(double gamma) { return 8.0 * M_PI * M_PI / (3.0 * gamma); }

double malomed_small(double gamma) { return 2.0 * std::log(16.0 / gamma); }

double sacchetti_zeta(const TwoModeModel& m, double etaN) {
  return m.W40 * etaN / m.omega;
}

std::optional<double> sacchetti_z(double zeta) {
  if (std::fabs(zeta) <= 2.0) return std::nullopt;
  return std::sqrt(1.0 - 4.0 / (zeta * zeta));
}

double sacchetti_critical(const TwoModeModel& m) { return 2.0 * m.omega / m.W40; }

double z_exact(const ExactState& state, const TwoModeModel& model,
               double* captured_weight) {
  std::vector<LinearMode> b = basis(model.gamma, 2);
  auto proj = [&](double sign) {
    return integrate_split([&](double x) {
      double phi = (b[0].eval(x) + sign * b[1].eval(x)) / std::sqrt(2.0);
      return phi * state.evaluate(x);
    });
  };
  double AR = proj(+1.0), AL = proj(-1.0);
  double L2 = AL * AL, R2 = AR * AR;
  if (captured_weight) *captured_weight = L2 + R2;
  return (L2 - R2) / (L2 + R2);
}

}  // namespace gpebox
