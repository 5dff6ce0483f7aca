#include "gpebox/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace gpebox {

namespace {
constexpr double kAgmTol = 1e-14;
constexpr int kMaxIter = 64;
constexpr double kHyperbolicEdge = 1e-12;

// Descending Landen ladder (a_i, b_i, c_i), shared by jacobi() and
// jacobi_epsilon().
struct AgmLadder {
  double a[kMaxIter], c[kMaxIter];
  int n = 0;
};

AgmLadder build_ladder(double m) {
  AgmLadder L;
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  L.a[0] = a;
  L.c[0] = c;
  int i = 0;
  while (std::fabs(c) > kAgmTol && i + 1 < kMaxIter) {
    double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++i;
    L.a[i] = a;
    L.c[i] = c;
  }
  L.n = i;
  return L;
}
}  // namespace

double complete_K(double m) {
  if (!(m >= 0.0 && m < 1.0))
    throw std::domain_error("complete_K: m must be in [0,1)");
  double a = 1.0, b = std::sqrt(1.0 - m);
  while (a - b > kAgmTol * a) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

double complete_E(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw std::domain_error("complete_E: m must be in [0,1]");
  if (m == 1.0) return 1.0;
  AgmLadder L = build_ladder(m);
  double sum = 0.0;
  for (int i = 0; i <= L.n; ++i) sum += std::ldexp(L.c[i] * L.c[i], i - 1);
  double K = M_PI / (2.0 * L.a[L.n]);
  return K * (1.0 - sum);
}

EllipticTriple jacobi(double u, double m) {
  if (!(m >= 0.0 && m <= 1.0) || !std::isfinite(u))
    throw std::domain_error("jacobi: need finite u, m in [0,1]");
  if (m < kAgmTol) {
    double s = std::sin(u);
    return {s, std::cos(u), std::sqrt(1.0 - m * s * s)};
  }
  if (m > 1.0 - kHyperbolicEdge) {
    double s = std::tanh(u), c = 1.0 / std::cosh(u);
    return {s, c, c};
  }
  double K = complete_K(m);
  // Reduce modulo the half period 2K; sn and cn flip sign per half period.
  double q = std::floor(u / (2.0 * K) + 0.5);
  double ur = u - 2.0 * K * q;
  double sign = (std::fmod(std::fabs(q), 2.0) < 0.5) ? 1.0 : -1.0;

  AgmLadder L = build_ladder(m);
  // Gauss back-recurrence: sin(2*phi_{i-1} - phi_i) = (c_i/a_i) sin(phi_i),
  // principal branch.
  double phi = std::ldexp(L.a[L.n] * ur, L.n);
  for (int i = L.n; i >= 1; --i) {
    double s = std::fmin(1.0, std::fmax(-1.0, L.c[i] / L.a[i] * std::sin(phi)));
    phi = 0.5 * (std::asin(s) + phi);
  }
  double sn = std::sin(phi), cn = std::cos(phi);
  double dn = std::sqrt(1.0 - m * sn * sn);
  return {sign * sn, sign * cn, dn};
}

double jacobi_epsilon(double u, double m) {
  if (!(m >= 0.0 && m < 1.0) || !std::isfinite(u))
    throw std::domain_error("jacobi_epsilon: need finite u, m in [0,1)");
  if (m < kAgmTol) return u;
  double K = complete_K(m), E = complete_E(m);
  double q = std::floor(u / (2.0 * K) + 0.5);
  double ur = u - 2.0 * K * q;

  AgmLadder L = build_ladder(m);
  // Jacobi zeta as the ladder sum Z(u) = sum_{i>=1} c_i sin(phi_i); then
  // eps(u) = Z(u) + u E/K plus the accumulated full-period offsets.
  double phi = std::ldexp(L.a[L.n] * ur, L.n);
  double zeta = 0.0;
  for (int i = L.n; i >= 1; --i) {
    zeta += L.c[i] * std::sin(phi);
    double s = std::fmin(1.0, std::fmax(-1.0, L.c[i] / L.a[i] * std::sin(phi)));
    phi = 0.5 * (std::asin(s) + phi);
  }
  return zeta + ur * E / K + 2.0 * q * E;
}

}  // namespace gpebox
