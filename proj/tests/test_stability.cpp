#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpebox/stability.hpp"

using namespace gpebox;

TEST_CASE("interaction matrix: symmetric, zero off-diagonal for parity states") {
  ExactState s = solve_sym_attractive(10.0, -5.0, 1);
  auto b = basis(10.0, 6);
  Eigen::MatrixXd O = build_interaction_matrix(s, b);
  CHECK((O - O.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  // parity of psi^2 is even: symmetric/antisymmetric cross terms vanish
  CHECK(std::fabs(O(0, 1)) < 1e-12);
  CHECK(std::fabs(O(1, 2)) < 1e-12);
  // attractive interaction: negative-definite diagonal
  for (int i = 0; i < 6; ++i) CHECK(O(i, i) < 0.0);
}

TEST_CASE("frozen spectrum: symmetric branch at gamma=10, etaN=-5 is unstable") {
  ExactState s = solve_sym_attractive(10.0, -5.0, 1);
  StabilitySpectrum sp = bdg_spectrum(s, 6);
  CHECK(sp.mu == doctest::Approx(3.679239891301788).epsilon(1e-11));
  CHECK(std::fabs(sp.lambda[0].imag()) == doctest::Approx(3.405937906753).epsilon(1e-6));
  CHECK(std::fabs(sp.lambda[0].real()) < 1e-8);
  CHECK(sp.classification == Classification::non_oscillatory_unstable);
  CHECK(!sp.small_basis_warning);
}

TEST_CASE("frozen spectrum: gamma=1 antisymmetric branch, oscillatory pair") {
  ExactState s = solve_antisym_attractive(-8.0, 1);
  s.gamma = 1.0;
  StabilitySpectrum sp = bdg_spectrum(s, 10);
  CHECK(sp.mu == doctest::Approx(3.700635343855406).epsilon(1e-11));
  CHECK(sp.classification == Classification::oscillatory_unstable);
  bool found = false;
  for (const auto& l : sp.lambda)
    if (std::fabs(std::fabs(l.real()) - 10.2170791294) < 1e-4 &&
        std::fabs(std::fabs(l.imag()) - 0.6279535065) < 1e-4)
      found = true;
  CHECK(found);
}

TEST_CASE("gamma=10 antisymmetric branch is stable at etaN=-5") {
  ExactState s = solve_antisym_attractive(-5.0, 1);
  s.gamma = 10.0;
  CHECK(bdg_spectrum(s, 6).classification == Classification::stable);
}

TEST_CASE("eigenvalues come in plus/minus pairs") {
  ExactState s = solve_sym_repulsive(10.0, 8.0, 1);
  StabilitySpectrum sp = bdg_spectrum(s, 8);
  REQUIRE(sp.lambda.size() % 2 == 0);
  for (size_t i = 0; i < sp.lambda.size(); i += 2)
    CHECK(std::abs(sp.lambda[i] + sp.lambda[i + 1]) < 1e-12);
}

TEST_CASE("product order does not change the eigenvalue set") {
  ExactState s = solve_sym_attractive(10.0, -5.0, 1);
  auto b = basis(10.0, 8);
  Eigen::MatrixXd Omega = build_interaction_matrix(s, b);
  Eigen::VectorXd eps(8);
  for (int i = 0; i < 8; ++i) eps[i] = b[i].energy - s.mu;
  Eigen::MatrixXd M3 = Eigen::MatrixXd(eps.asDiagonal()) + 3.0 * Omega;
  Eigen::MatrixXd M1 = Eigen::MatrixXd(eps.asDiagonal()) + Omega;
  Eigen::VectorXcd a = Eigen::EigenSolver<Eigen::MatrixXd>(M1 * M3).eigenvalues();
  Eigen::VectorXcd c = Eigen::EigenSolver<Eigen::MatrixXd>(M3 * M1).eigenvalues();
  auto key = [](const std::complex<double>& z) { return std::make_pair(z.real(), z.imag()); };
  std::vector<std::complex<double>> av(a.data(), a.data() + 8), cv(c.data(), c.data() + 8);
  std::sort(av.begin(), av.end(), [&](auto x, auto y) { return key(x) < key(y); });
  std::sort(cv.begin(), cv.end(), [&](auto x, auto y) { return key(x) < key(y); });
  for (int i = 0; i < 8; ++i) CHECK(std::abs(av[i] - cv[i]) < 1e-8);
}

TEST_CASE("free limit: frequencies approach linear energy differences") {
  ExactState s = solve_sym_repulsive(10.0, 1e-7, 1);
  StabilitySpectrum sp = bdg_spectrum(s, 6);
  auto b = basis(10.0, 6);
  // smallest retained frequency ~ e1 - e0 (the Goldstone e0 - e0 is dropped)
  CHECK(std::fabs(sp.lambda[0]) ==
        doctest::Approx(b[1].energy - b[0].energy).epsilon(1e-5));
}

TEST_CASE("two-state basis on a parity eigenstate: lambda^2 strictly real") {
  ExactState s = solve_antisym_attractive(-9.0, 1);
  s.gamma = 1.0;
  StabilitySpectrum sp = bdg_spectrum(s, 2);
  CHECK(sp.small_basis_warning);
  for (const auto& l2 : sp.lambda_squared) CHECK(std::fabs(l2.imag()) < 1e-10);
}

TEST_CASE("basis convergence on the two lowest frequencies") {
  ExactState s = solve_sym_attractive(10.0, -4.0, 1);
  StabilitySpectrum a = bdg_spectrum(s, 12), b = bdg_spectrum(s, 24);
  for (int i = 0; i < 2; ++i) {
    double ra = std::abs(a.lambda[2 * i]), rb = std::abs(b.lambda[2 * i]);
    CHECK(std::fabs(ra - rb) / std::fmax(rb, 1e-12) < 1e-3);
  }
}

TEST_CASE("mode normalization sum(u^2 - v^2) = 1") {
  ExactState s = solve_antisym_attractive(-5.0, 1);
  s.gamma = 10.0;
  StabilitySpectrum sp = bdg_spectrum(s, 6);
  REQUIRE(sp.u_modes.size() == sp.v_modes.size());
  for (size_t i = 0; i < sp.u_modes.size(); ++i) {
    std::complex<double> n = sp.u_modes[i].array().square().sum() -
                             sp.v_modes[i].array().square().sum();
    CHECK(std::abs(n - 1.0) < 1e-6);
  }
}

TEST_CASE("instability thresholds at gamma=10") {
  auto att = instability_thresholds(Family::sym_att, 10.0, -1.0, -4.0, 0.5);
  REQUIRE(att.size() == 1);
  CHECK(att[0].etaN == doctest::Approx(-2.07).epsilon(0.03));
  CHECK(att[0].after == Classification::non_oscillatory_unstable);
  auto rep = instability_thresholds(Family::antisym_rep, 10.0, 1.0, 4.0, 0.5);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].etaN == doctest::Approx(2.34).epsilon(0.03));
}

TEST_CASE("no instability of the symmetric branch with repulsion") {
  auto th = instability_thresholds(Family::sym_rep, 10.0, 0.5, 20.0, 1.0);
  CHECK(th.empty());
}

TEST_CASE("parallel and serial sweeps agree exactly") {
  auto a = stability_sweep(Family::sym_att, 10.0, -1.0, -3.0, 0.5, 6, 1, true);
  auto b = stability_sweep(Family::sym_att, 10.0, -1.0, -3.0, 0.5, 6, 1, false);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda1 == b[i].lambda1);
    CHECK(a[i].classification == b[i].classification);
  }
}
