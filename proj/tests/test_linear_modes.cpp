#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpebox/linear_modes.hpp"
#include "gpebox/quadrature.hpp"

using namespace gpebox;

TEST_CASE("symmetric wavenumbers solve tan k = -2k/gamma") {
  CHECK(symmetric_k(10.0, 1) == doctest::Approx(2.653662399559064).epsilon(1e-13));
  for (int n = 1; n <= 4; ++n) {
    double k = symmetric_k(10.0, n);
    CHECK(std::fabs(std::sin(k) + 2.0 * k / 10.0 * std::cos(k)) < 1e-12);
    CHECK(k > (2 * n - 1) * M_PI / 2);
    CHECK(k < n * M_PI);
  }
  // strong barrier: k approaches n pi (odd modes pair up with even ones)
  CHECK(symmetric_k(1e6, 1) == doctest::Approx(M_PI).epsilon(1e-5));
}

TEST_CASE("basis is orthonormal and energy-sorted") {
  auto b = basis(10.0, 6);
  REQUIRE(b.size() == 6);
  for (size_t i = 1; i < b.size(); ++i) CHECK(b[i].energy > b[i - 1].energy);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i; j < b.size(); ++j) {
      double ip = integrate_split([&](double x) { return b[i].eval(x) * b[j].eval(x); });
      CHECK(std::fabs(ip - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("modes vanish at the walls and obey the barrier jump") {
  auto b = basis(7.5, 4);
  for (const LinearMode& m : b) {
    CHECK(std::fabs(m.eval(-1.0)) < 1e-12);
    CHECK(std::fabs(m.eval(1.0)) < 1e-12);
    double h = 1e-7;
    double jump = (m.eval(h) - m.eval(0.0)) / h - (m.eval(0.0) - m.eval(-h)) / h;
    if (m.parity == LinearMode::Parity::symmetric)
      CHECK(jump == doctest::Approx(7.5 * m.eval(0.0)).epsilon(1e-4));
    else
      CHECK(std::fabs(jump) < 1e-4);  // vanishes at the barrier
  }
}

TEST_CASE("two-mode constants at gamma=10 match frozen references") {
  TwoModeModel tm = overlaps(10.0);
  CHECK(tm.e0 == doctest::Approx(7.041924130833570).epsilon(1e-12));
  CHECK(tm.e1 == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  CHECK(tm.chi40 == doctest::Approx(0.6615938788213804).epsilon(1e-12));
  CHECK(tm.chi04 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(tm.chi22 == doctest::Approx(0.6680766993353502).epsilon(1e-12));
  CHECK(tm.W40 == doctest::Approx(1.355013518708370).epsilon(1e-12));
  CHECK(tm.Delta == doctest::Approx(tm.e1 - tm.e0).epsilon(1e-14));
  CHECK(tm.omega == doctest::Approx(tm.Delta / 2).epsilon(1e-14));
  // localized-basis identity
  CHECK(std::fabs(tm.W40 - (tm.chi40 + tm.chi04 + 6 * tm.chi22) / 4) < 1e-10);
}

TEST_CASE("antisymmetric quartic overlap is exactly 3/4 for every gamma") {
  for (double g : {1.0, 10.0, 50.0}) {
    TwoModeModel tm = overlaps(g);
    CHECK(tm.chi04 == doctest::Approx(0.75).epsilon(1e-12));
  }
}
