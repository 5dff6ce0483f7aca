#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gpebox/elliptic.hpp"

using namespace gpebox;

TEST_CASE("complete integrals against high-precision references") {
  CHECK(complete_K(0.5) == doctest::Approx(1.8540746773013719).epsilon(1e-15));
  CHECK(complete_E(0.25) == doctest::Approx(1.4674622093394272).epsilon(1e-15));
  CHECK(complete_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(complete_E(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(complete_E(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("jacobi functions at a reference point") {
  EllipticTriple t = jacobi(1.0, 0.5);
  CHECK(t.sn == doctest::Approx(0.8030018248956439).epsilon(1e-15));
  CHECK(t.cn == doctest::Approx(0.5959765676721407).epsilon(1e-15));
  CHECK(t.dn == doctest::Approx(0.8231610016315963).epsilon(1e-15));
}

TEST_CASE("epsilon against high-precision references") {
  CHECK(jacobi_epsilon(0.7, 0.3) == doctest::Approx(0.6696417305805881).epsilon(1e-14));
  CHECK(jacobi_epsilon(2.5, 0.9) == doctest::Approx(1.0969512203692500).epsilon(1e-14));
}

TEST_CASE("pythagorean identities across the (u, m) plane") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> um(-30.0, 30.0), mm(0.0, 1.0 - 1e-9);
  for (int i = 0; i < 2000; ++i) {
    double u = um(rng), m = mm(rng);
    EllipticTriple t = jacobi(u, m);
    CHECK(std::fabs(t.sn * t.sn + t.cn * t.cn - 1.0) < 1e-10);
    CHECK(std::fabs(t.dn * t.dn + m * t.sn * t.sn - 1.0) < 1e-10);
    CHECK(t.dn >= std::sqrt(1.0 - m) - 1e-10);
  }
}

TEST_CASE("degenerate limits reduce to trig / hyperbolic") {
  EllipticTriple t0 = jacobi(0.8, 0.0);
  CHECK(t0.sn == doctest::Approx(std::sin(0.8)).epsilon(1e-14));
  CHECK(t0.cn == doctest::Approx(std::cos(0.8)).epsilon(1e-14));
  CHECK(t0.dn == doctest::Approx(1.0).epsilon(1e-14));
  EllipticTriple t1 = jacobi(0.8, 1.0);
  CHECK(t1.sn == doctest::Approx(std::tanh(0.8)).epsilon(1e-12));
  CHECK(t1.cn == doctest::Approx(1.0 / std::cosh(0.8)).epsilon(1e-12));
}

TEST_CASE("periodicity in 4K and quarter-period values") {
  for (double m : {0.1, 0.5, 0.95}) {
    double K = complete_K(m);
    for (double u : {0.3, 1.7, -2.2}) {
      EllipticTriple a = jacobi(u, m), b = jacobi(u + 4.0 * K, m);
      CHECK(a.sn == doctest::Approx(b.sn).epsilon(5e-13));
      CHECK(a.cn == doctest::Approx(b.cn).epsilon(5e-13));
    }
    EllipticTriple q = jacobi(K, m);
    CHECK(q.sn == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(q.cn) < 1e-10);
    CHECK(q.dn == doctest::Approx(std::sqrt(1.0 - m)).epsilon(1e-10));
  }
}

TEST_CASE("derivative relations by central differences") {
  double h = 1e-6;
  for (double m : {0.2, 0.7}) {
    for (double u : {0.4, 1.3, 2.6}) {
      EllipticTriple t = jacobi(u, m);
      double dsn = (jacobi(u + h, m).sn - jacobi(u - h, m).sn) / (2 * h);
      double dcn = (jacobi(u + h, m).cn - jacobi(u - h, m).cn) / (2 * h);
      CHECK(dsn == doctest::Approx(t.cn * t.dn).epsilon(1e-8));
      CHECK(dcn == doctest::Approx(-t.sn * t.dn).epsilon(1e-8));
    }
  }
}

TEST_CASE("epsilon properties: E at K, quasi-periodicity, dn^2 derivative") {
  for (double m : {0.15, 0.6, 0.9}) {
    double K = complete_K(m), E = complete_E(m);
    CHECK(jacobi_epsilon(K, m) == doctest::Approx(E).epsilon(1e-13));
    for (double u : {0.5, 1.9}) {
      CHECK(jacobi_epsilon(u + 2.0 * K, m) ==
            doctest::Approx(jacobi_epsilon(u, m) + 2.0 * E).epsilon(1e-12));
      double h = 1e-6;
      double d = (jacobi_epsilon(u + h, m) - jacobi_epsilon(u - h, m)) / (2 * h);
      double dn = jacobi(u, m).dn;
      CHECK(d == doctest::Approx(dn * dn).epsilon(1e-8));
    }
    CHECK(jacobi_epsilon(0.0, m) == doctest::Approx(0.0));
    // odd function
    CHECK(jacobi_epsilon(-1.1, m) == doctest::Approx(-jacobi_epsilon(1.1, m)).epsilon(1e-13));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
  CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(jacobi(std::nan(""), 0.5), std::domain_error);
}
