#include "gpebox/stability.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gpebox/quadrature.hpp"

namespace gpebox {

namespace {

ExactState solve_family(Family family, double gamma, double etaN, int branch) {
  switch (family) {
    // Antisymmetric states vanish at the barrier and are gamma-independent,
    // but the perturbation basis is not; carry gamma on the state.
    case Family::antisym_rep: {
      ExactState s = solve_antisym_repulsive(etaN, branch);
      s.gamma = gamma;
      return s;
    }
    case Family::antisym_att: {
      ExactState s = solve_antisym_attractive(etaN, branch);
      s.gamma = gamma;
      return s;
    }
    case Family::sym_rep: return solve_sym_repulsive(gamma, etaN, branch);
    case Family::sym_att: return solve_sym_attractive(gamma, etaN, branch);
    case Family::asym_att: return solve_asym_attractive(gamma, etaN);
    case Family::asym_rep: return solve_asym_repulsive(gamma, etaN);
  }
  throw SolverError("unreachable");
}

std::complex<double> principal_sqrt(std::complex<double> z) {
  std::complex<double> r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

Classification classify(const std::vector<std::complex<double>>& lam, double tol) {
  double max_im = 0.0;
  bool osc = false;
  for (const auto& l : lam) {
    max_im = std::fmax(max_im, std::fabs(l.imag()));
    if (std::fabs(l.real()) > tol && std::fabs(l.imag()) > tol) osc = true;
  }
  if (max_im < tol) return Classification::stable;
  return osc ? Classification::oscillatory_unstable
             : Classification::non_oscillatory_unstable;
}

}  // namespace

std::string classification_name(Classification c) {
  switch (c) {
    case Classification::stable: return "stable";
    case Classification::non_oscillatory_unstable: return "non-oscillatory-unstable";
    case Classification::oscillatory_unstable: return "oscillatory-unstable";
  }
  return "?";
}

Eigen::MatrixXd build_interaction_matrix(const ExactState& state,
                                         const std::vector<LinearMode>& basis) {
  int n = (int)basis.size();
  std::vector<double> xs, ws, xr, wr;
  quadrature_rule(-1.0, 0.0, xs, ws);
  quadrature_rule(0.0, 1.0, xr, wr);
  xs.insert(xs.end(), xr.begin(), xr.end());
  ws.insert(ws.end(), wr.begin(), wr.end());
  int q = (int)xs.size();
  Eigen::MatrixXd B(q, n);
  Eigen::VectorXd d(q);
  for (int i = 0; i < q; ++i) {
    double p = state.evaluate(xs[i]);
    d[i] = ws[i] * p * p;
    for (int j = 0; j < n; ++j) B(i, j) = basis[j].eval(xs[i]);
  }
  Eigen::MatrixXd O = state.etaN * B.transpose() * d.asDiagonal() * B;
  return 0.5 * (O + O.transpose());  // symmetrize away quadrature round-off
}

StabilitySpectrum bdg_spectrum(const ExactState& state, int basis_size, double im_tol) {
  StabilitySpectrum out;
  out.basis_size = basis_size;
  out.mu = state.mu;
  out.small_basis_warning = basis_size < 3;

  std::vector<LinearMode> b = basis(state.gamma, basis_size);
  Eigen::MatrixXd Omega = build_interaction_matrix(state, b);
  Eigen::VectorXd eps(basis_size);
  for (int i = 0; i < basis_size; ++i) eps[i] = b[i].energy - state.mu;
  Eigen::MatrixXd M3 = Eigen::MatrixXd(eps.asDiagonal()) + 3.0 * Omega;
  Eigen::MatrixXd M1 = Eigen::MatrixXd(eps.asDiagonal()) + Omega;

  Eigen::EigenSolver<Eigen::MatrixXd> es(M1 * M3);
  std::vector<std::complex<double>> lam2(es.eigenvalues().data(),
                                         es.eigenvalues().data() + basis_size);
  out.lambda_squared = lam2;

  // The zero mode of the phase symmetry shows up as the eigenvalue closest
  // to zero; numerically it carries a spurious imaginary part, so it is
  // excluded from the classification.
  int goldstone = 0;
  for (int i = 1; i < basis_size; ++i)
    if (std::abs(lam2[i]) < std::abs(lam2[goldstone])) goldstone = i;

  std::vector<int> kept;
  for (int i = 0; i < basis_size; ++i)
    if (i != goldstone) kept.push_back(i);
  std::sort(kept.begin(), kept.end(),
            [&](int a, int b) { return std::abs(lam2[a]) < std::abs(lam2[b]); });

  std::vector<std::complex<double>> pos;
  for (int i : kept) {
    std::complex<double> l = principal_sqrt(lam2[i]);
    pos.push_back(l);
    out.lambda.push_back(l);
    out.lambda.push_back(-l);
    // Recover the (u, v) coefficients: with f = u+v, g = u-v the pencil reads
    // M3 f = lambda g, M1 g = lambda f, and f is the M1*M3 eigenvector.
    if (std::abs(l) > 1e-12) {
      Eigen::VectorXcd f = es.eigenvectors().col(i);
      Eigen::VectorXcd g = (M3.cast<std::complex<double>>() * f) / l;
      std::complex<double> nrm = f.cwiseProduct(g).sum();  // = sum(u^2 - v^2)
      if (std::abs(nrm) > 1e-12) {
        std::complex<double> s = 1.0 / std::sqrt(nrm);
        f *= s;
        g *= s;
      }
      out.u_modes.push_back(0.5 * (f + g));
      out.v_modes.push_back(0.5 * (f - g));
    } else {
      out.u_modes.emplace_back(Eigen::VectorXcd::Zero(basis_size));
      out.v_modes.emplace_back(Eigen::VectorXcd::Zero(basis_size));
    }
  }
  out.classification = classify(pos, im_tol);
  return out;
}

std::vector<ThresholdCrossing> instability_thresholds(Family family, double gamma,
                                                      double etaN_begin,
                                                      double etaN_end, double step,
                                                      int basis_size, int branch) {
  auto cls_at = [&](double e) {
    return bdg_spectrum(solve_family(family, gamma, e, branch), basis_size)
        .classification;
  };
  std::vector<ThresholdCrossing> out;
  double dir = (etaN_end > etaN_begin) ? 1.0 : -1.0;
  step = std::fabs(step);
  int n = (int)std::lround(std::fabs(etaN_end - etaN_begin) / step);
  Classification prev = cls_at(etaN_begin);
  for (int i = 1; i <= n; ++i) {
    double e = etaN_begin + dir * step * i;
    Classification cur = cls_at(e);
    if (cur != prev) {
      double a = e - dir * step, b = e;
      Classification ca = prev;
      while (std::fabs(b - a) > 0.05) {
        double mid = 0.5 * (a + b);
        if (cls_at(mid) == ca)
          a = mid;
        else
          b = mid;
      }
      out.push_back({0.5 * (a + b), prev, cur});
    }
    prev = cur;
  }
  return out;
}

std::optional<double> coalescence_gamma(double gamma_lo, double gamma_hi) {
  // At small gamma the two lowest antisymmetric-branch frequencies touch and
  // form a complex pair somewhere along the attractive sweep; at large gamma
  // they never do.  Bisect the boundary.
  auto touches = [](double gamma) {
    for (double e = -1.0; e >= -80.0; e -= 0.5) {
      ExactState s = solve_antisym_attractive(e, 1);
      s.gamma = gamma;  // barrier strength enters through the basis only
      if (bdg_spectrum(s, 22).classification == Classification::oscillatory_unstable)
        return true;
    }
    return false;
  };
  bool lo_t = touches(gamma_lo), hi_t = touches(gamma_hi);
  if (lo_t == hi_t) return std::nullopt;
  while (gamma_hi - gamma_lo > 0.05) {
    double mid = 0.5 * (gamma_lo + gamma_hi);
    (touches(mid) == lo_t ? gamma_lo : gamma_hi) = mid;
  }
  return 0.5 * (gamma_lo + gamma_hi);
}

std::vector<StabilityRow> stability_sweep(Family family, double gamma,
                                          double etaN_begin, double etaN_end,
                                          double step, int basis_size, int branch,
                                          bool serial_reference) {
  double dir = (etaN_end > etaN_begin) ? 1.0 : -1.0;
  step = std::fabs(step);
  int n = (int)std::lround(std::fabs(etaN_end - etaN_begin) / step);
  std::vector<StabilityRow> rows(n + 1);
  auto work = [&](int i) {
    double e = etaN_begin + dir * step * i;
    StabilityRow& r = rows[i];
    r.etaN = e;
    try {
      StabilitySpectrum sp = bdg_spectrum(solve_family(family, gamma, e, branch),
                                          basis_size);
      r.converged = true;
      r.lambda1 = sp.lambda.size() > 0 ? sp.lambda[0] : 0.0;
      r.lambda2 = sp.lambda.size() > 2 ? sp.lambda[2] : 0.0;
      r.classification = sp.classification;
    } catch (const SolverError&) {
      r.converged = false;
      r.classification = Classification::stable;
    }
  };
  if (serial_reference) {
    for (int i = 0; i <= n; ++i) work(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i <= n; ++i) work(i);
  }
  return rows;
}

}  // namespace gpebox
