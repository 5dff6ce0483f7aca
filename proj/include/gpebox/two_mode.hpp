#pragma once

#include <optional>

#include "gpebox/exact_states.hpp"
#include "gpebox/linear_modes.hpp"

namespace gpebox {

struct TwoModeState {
  double u, v;     // real coefficients, u^2 + v^2 = 1
  double Gamma;    // two-mode chemical potential
  double energy;   // variational energy per particle
};

// u^2 of the asymmetric extremum; empty when no such extremum exists
// (interaction between the two critical values).
std::optional<double> variational_u2(const TwoModeModel& model, double etaN);

double variational_energy(const TwoModeModel& model, double u, double etaN);

// Chemical potentials of the two stationarity conditions; equal at a
// genuine extremum.
double mode_gamma_u(const TwoModeModel& model, double u, double etaN);
double mode_gamma_v(const TwoModeModel& model, double u, double etaN);

std::optional<TwoModeState> variational_state(const TwoModeModel& model, double etaN);

double critical_attractive_variational(const TwoModeModel& model);
double critical_repulsive_variational(const TwoModeModel& model);

double malomed_large(double gamma);  // 8 pi^2 / (3 gamma)
double malomed_small(double gamma);  // 2 ln(16 / gamma)

// Effective semiclassical interaction for the two-level model.
double sacchetti_zeta(const TwoModeModel& model, double etaN);

// |z| = sqrt(1 - 4/zeta^2) past the bifurcation at |zeta| = 2, else empty.
std::optional<double> sacchetti_z(double zeta);

double sacchetti_critical(const TwoModeModel& model);

// Projection asymmetry of an exact state onto the left/right-localized
// combinations of the lowest two linear modes.  Returns z and, optionally,
// the captured weight A_L^2 + A_R^2.
double z_exact(const ExactState& state, const TwoModeModel& model,
               double* captured_weight = nullptr);

}  // namespace gpebox
