#include "gpebox/sweeps.hpp"

#include <cmath>

#include "gpebox/grid_oracle.hpp"

namespace gpebox {

std::vector<EnergySample> oracle_energy_curve(double gamma, double etaN_begin,
                                              double etaN_end, double step,
                                              bool serial_reference) {
  double dir = (etaN_end > etaN_begin) ? 1.0 : -1.0;
  step = std::fabs(step);
  int n = (int)std::lround(std::fabs(etaN_end - etaN_begin) / step);
  std::vector<EnergySample> out(n + 1);
  auto work = [&](int i) {
    double e = etaN_begin + dir * step * i;
    GridConfig c = unit_well_config(gamma, e);
    GridState g = imaginary_time_ground(c, SeedKind::noisy);
    out[i] = {e, g.energy_per_particle, g.z_asym};
  };
  if (serial_reference) {
    for (int i = 0; i <= n; ++i) work(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i <= n; ++i) work(i);
  }
  return out;
}

}  // namespace gpebox
