#pragma once

#include <optional>
#include <vector>

namespace gpebox {

// Gaussian-barrier, power-law-wall grid system.  gamma and etaN here are the
// grid-system parameters; unit_well_config() converts from the box-delta
// parameters of the analytic solver (the soft walls sit at |x| ~ L, so
// couplings scale by 1/L and energies by L^2).
struct GridConfig {
  int n_points = 256;
  double dt = 0.0078125;
  double t_max = 30.0;
  double xi = 0.05;   // Gaussian barrier width
  double p = 1000.0;  // wall exponent
  double L = 0.495;   // wall scale
  double gamma = 0.0;
  double etaN = 0.0;
};

GridConfig unit_well_config(double gamma, double etaN);

struct GridState {
  std::vector<double> x;
  std::vector<double> psi;
  double mu;                  // grid units
  double energy_per_particle; // grid units; multiply by L^2 for box units
  double z_asym;              // |P_L - P_R| / (P_L + P_R)
  bool converged;             // |dE| per step fell below 1e-10 before t_max
};

enum class SeedKind { symmetric, noisy };

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> frames;  // |psi|^2 snapshots
};

// V(x) = (gamma/(sqrt(pi) xi)) exp(-x^2/xi^2) + |x/L|^p on the grid.
std::vector<double> build_potential(const GridConfig& config);

std::vector<double> grid_points(const GridConfig& config);

// Imaginary-time ground state by second-order operator splitting with
// renormalization each step.  The noisy seed perturbs the Gaussian by 1e-3
// relative with a fixed-seed generator.  energy_track, when given, records
// the per-step energy estimate.
GridState imaginary_time_ground(const GridConfig& config, SeedKind seed,
                                unsigned rng_seed = 1,
                                Trajectory* trajectory = nullptr,
                                int trajectory_stride = 64,
                                std::vector<double>* energy_track = nullptr);

// Location of the kink in E/N(etaN) for the box-unit parameters, from the
// discrete second derivative refined by a local quadratic fit; empty when
// no kink stands out of the background curvature.
std::optional<double> kink_critical(double gamma, double etaN_begin,
                                    double etaN_end, double step = 0.25);

}  // namespace gpebox
