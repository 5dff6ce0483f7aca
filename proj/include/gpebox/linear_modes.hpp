#pragma once

#include <vector>

namespace gpebox {

// Eigenstates of the non-interacting box-delta Hamiltonian on [-1,1].
// Antisymmetric modes are plain sin(j pi x); symmetric modes have a
// derivative kink at the barrier.
struct LinearMode {
  enum class Parity { symmetric, antisymmetric };
  Parity parity;
  int index;         // 1-based within its parity class
  double k;          // wavenumber
  double energy;     // k^2
  double amplitude;  // normalization constant
  double slope_ratio_ = 0.0;  // 2k/gamma for symmetric modes, 0 otherwise

  double eval(double x) const;
};

// n-th positive root of tan k = -2k/gamma, bracketed in ((2n-1)pi/2, n pi).
double symmetric_k(double gamma, int n);

// First `count` modes sorted by energy; parity alternates starting with the
// symmetric ground mode.
std::vector<LinearMode> basis(double gamma, int count);

struct TwoModeModel {
  double chi40, chi04, chi22;  // quartic overlaps of phi0/phi1
  double W40;                  // localized-basis overlap, (chi40+chi04+6chi22)/4
  double e0, e1;
  double Delta, omega, Omega;
  double gamma;
};

TwoModeModel overlaps(double gamma);

}  // namespace gpebox
