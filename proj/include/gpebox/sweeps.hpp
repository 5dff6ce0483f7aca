#pragma once

#include <vector>

namespace gpebox {

struct EnergySample {
  double etaN;
  double energy;  // grid units
  double z_asym;
};

// Grid-oracle energy curve over an etaN range (box units), one relaxation
// per point.  Points are independent; the default path fans them out over
// OpenMP threads, serial_reference forces the single-threaded path used as
// the correctness baseline.
std::vector<EnergySample> oracle_energy_curve(double gamma, double etaN_begin,
                                              double etaN_end, double step,
                                              bool serial_reference = false);

}  // namespace gpebox
