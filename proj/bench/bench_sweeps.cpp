// Compares the OpenMP sweep kernels against their serial reference paths:
// same outputs expected bit-for-bit, wall time reported for both.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "gpebox/stability.hpp"
#include "gpebox/sweeps.hpp"

using namespace gpebox;
using clock_type = std::chrono::steady_clock;

static double seconds(clock_type::time_point a, clock_type::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  {
    auto t0 = clock_type::now();
    auto serial = stability_sweep(Family::antisym_att, 1.0, -1.0, -12.0, 0.1, 10, 1, true);
    auto t1 = clock_type::now();
    auto parallel = stability_sweep(Family::antisym_att, 1.0, -1.0, -12.0, 0.1, 10, 1, false);
    auto t2 = clock_type::now();
    bool match = serial.size() == parallel.size();
    for (size_t i = 0; match && i < serial.size(); ++i)
      match = serial[i].etaN == parallel[i].etaN &&
              serial[i].lambda1 == parallel[i].lambda1 &&
              serial[i].lambda2 == parallel[i].lambda2;
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::printf("stability sweep (111 points, basis 10): serial %.3fs, parallel %.3fs, "
                "speedup %.2fx, outputs %s\n",
                ts, tp, ts / tp, match ? "identical" : "DIFFER");
  }
  {
    auto t0 = clock_type::now();
    auto serial = oracle_energy_curve(10.0, -3.0, -1.0, 0.25, true);
    auto t1 = clock_type::now();
    auto parallel = oracle_energy_curve(10.0, -3.0, -1.0, 0.25, false);
    auto t2 = clock_type::now();
    bool match = serial.size() == parallel.size();
    for (size_t i = 0; match && i < serial.size(); ++i)
      match = serial[i].etaN == parallel[i].etaN && serial[i].energy == parallel[i].energy;
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::printf("oracle energy curve (9 points): serial %.3fs, parallel %.3fs, "
                "speedup %.2fx, outputs %s\n",
                ts, tp, ts / tp, match ? "identical" : "DIFFER");
  }
  return 0;
}
