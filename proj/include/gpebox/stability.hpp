#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpebox/exact_states.hpp"
#include "gpebox/linear_modes.hpp"

namespace gpebox {

enum class Classification { stable, non_oscillatory_unstable, oscillatory_unstable };

std::string classification_name(Classification c);

struct StabilitySpectrum {
  int basis_size;
  double mu;
  std::vector<std::complex<double>> lambda_squared;
  std::vector<std::complex<double>> lambda;  // both signs, Goldstone mode dropped
  Classification classification;
  bool small_basis_warning;  // basis_size < 3 cannot detect oscillatory modes
  // Perturbation coefficient vectors per retained eigenvalue, normalized to
  // sum(u^2 - v^2) = 1 when that bilinear form is nonzero.
  std::vector<Eigen::VectorXcd> u_modes, v_modes;
};

// Omega_{ab} = etaN * <a| psi^2 |b>, symmetric, by split quadrature.
Eigen::MatrixXd build_interaction_matrix(const ExactState& state,
                                         const std::vector<LinearMode>& basis);

StabilitySpectrum bdg_spectrum(const ExactState& state, int basis_size,
                               double im_tol = 1e-6);

struct ThresholdCrossing {
  double etaN;
  Classification before, after;
};

// Classification changes over [begin, end] scanned at |step|, each refined
// by bisection to 0.05 in etaN.
std::vector<ThresholdCrossing> instability_thresholds(Family family, double gamma,
                                                      double etaN_begin,
                                                      double etaN_end, double step,
                                                      int basis_size = 6,
                                                      int branch = 1);

// Smallest gamma at which the two lowest antisymmetric-branch eigenfrequency
// curves touch somewhere along the attractive sweep, bisected to 0.05.
std::optional<double> coalescence_gamma(double gamma_lo = 1.0, double gamma_hi = 10.0);

struct StabilityRow {
  double etaN;
  bool converged;
  std::complex<double> lambda1, lambda2;  // two smallest-|.| positive-branch modes
  Classification classification;
};

// Parallel sweep over etaN (OpenMP); serial_reference forces the serial path.
std::vector<StabilityRow> stability_sweep(Family family, double gamma,
                                          double etaN_begin, double etaN_end,
                                          double step, int basis_size = 6,
                                          int branch = 1,
                                          bool serial_reference = false);

}  // namespace gpebox
