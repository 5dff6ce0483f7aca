#include "gpebox/exact_states.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>

#include "gpebox/elliptic.hpp"
#include "gpebox/linear_modes.hpp"
#include "gpebox/quadrature.hpp"

namespace gpebox {

namespace {

bool is_attractive(Family f) {
  return f == Family::antisym_att || f == Family::sym_att || f == Family::asym_att;
}

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---------------------------------------------------------------- Newton ---

struct NewtonResult {
  bool ok = false;
  Vec v;
  double res = 1e300;
};

Mat num_jacobian(const std::function<Vec(const Vec&)>& F, const Vec& v, double h = 1e-7) {
  int n = (int)v.size();
  Mat J(n, n);
  for (int i = 0; i < n; ++i) {
    Vec p = v, q = v;
    p[i] += h;
    q[i] -= h;
    J.col(i) = (F(p) - F(q)) / (2.0 * h);
  }
  return J;
}

NewtonResult damped_newton(const std::function<Vec(const Vec&)>& F,
                           const std::function<void(Vec&)>& clamp, Vec v,
                           int max_iter = 200, double tol = 1e-11) {
  clamp(v);
  double fn = F(v).cwiseAbs().maxCoeff();
  for (int it = 0; it < max_iter; ++it) {
    if (fn < tol) return {true, v, fn};
    Mat J = num_jacobian(F, v);
    Vec dv = J.fullPivLu().solve(-F(v));
    if (!dv.allFinite()) break;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vec cand = v + t * dv;
      clamp(cand);
      Vec fc = F(cand);
      if (fc.allFinite() && fc.cwiseAbs().maxCoeff() < fn) {
        v = cand;
        fn = fc.cwiseAbs().maxCoeff();
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  return {fn < tol, v, fn};
}

// -------------------------------------------------- six-variable systems ---
// v = (A1, k1, m1, A2, k2, m2); side 1 is the left half.

// Keep finite-difference probes of the Jacobian inside the elliptic domain.
double safe_m(double m) { return std::fmin(1.0 - 1e-12, std::fmax(1e-12, m)); }
double safe_k(double k) { return std::fmax(1e-10, k); }

Vec residual_att(const Vec& v, double gamma, double etaN) {
  double A1 = v[0], k1 = safe_k(v[1]), m1 = safe_m(v[2]);
  double A2 = v[3], k2 = safe_k(v[4]), m2 = safe_m(v[5]);
  double K1 = complete_K(m1), K2 = complete_K(m2);
  EllipticTriple tL = jacobi(k1 - K1, m1);
  EllipticTriple tR = jacobi(-k2 - K2, m2);
  EllipticTriple n1 = jacobi(k1, m1), n2 = jacobi(k2, m2);
  double e1 = jacobi_epsilon(k1, m1), e2 = jacobi_epsilon(k2, m2);
  Vec f(6);
  f[0] = A1 * A1 * etaN + 2.0 * m1 * k1 * k1;
  f[1] = A2 * A2 * etaN + 2.0 * m2 * k2 * k2;
  f[2] = k1 * k1 * (1.0 - 2.0 * m1) - k2 * k2 * (1.0 - 2.0 * m2);
  f[3] = A1 * tL.cn - A2 * jacobi(k2 + K2, m2).cn;
  f[4] = -A2 * k2 * tR.sn * tR.dn + A1 * k1 * tL.sn * tL.dn - gamma * A1 * tL.cn;
  f[5] = A1 * A1 / (k1 * m1 * n1.dn) *
             ((k1 * (m1 - 1.0) + e1) * n1.dn - m1 * n1.cn * n1.sn) +
         A2 * A2 / (k2 * m2 * n2.dn) *
             ((k2 * (m2 - 1.0) + e2) * n2.dn - m2 * n2.cn * n2.sn) -
         1.0;
  return f;
}

Vec residual_rep(const Vec& v, double gamma, double etaN) {
  double A1 = v[0], k1 = safe_k(v[1]), m1 = safe_m(v[2]);
  double A2 = v[3], k2 = safe_k(v[4]), m2 = safe_m(v[5]);
  EllipticTriple t1 = jacobi(k1, m1), t2 = jacobi(k2, m2);
  double e1 = jacobi_epsilon(k1, m1), e2 = jacobi_epsilon(k2, m2);
  Vec f(6);
  f[0] = A1 * A1 * etaN - 2.0 * m1 * k1 * k1;
  f[1] = A2 * A2 * etaN - 2.0 * m2 * k2 * k2;
  f[2] = k1 * k1 * (1.0 + m1) - k2 * k2 * (1.0 + m2);
  f[3] = A1 * t1.sn + A2 * t2.sn;
  f[4] = A2 * k2 * t2.cn * t2.dn - A1 * k1 * t1.cn * t1.dn - gamma * A1 * t1.sn;
  f[5] = A1 * A1 * (k1 - e1) / (k1 * m1) + A2 * A2 * (k2 - e2) / (k2 * m2) - 1.0;
  return f;
}

void clamp6(Vec& v) {
  for (int i : {2, 5}) v[i] = std::fmin(1.0 - 1e-10, std::fmax(1e-10, v[i]));
  for (int i : {1, 4}) v[i] = std::fmax(1e-8, v[i]);
}

std::function<Vec(const Vec&)> system_for(Family fam, double gamma, double etaN) {
  if (is_attractive(fam))
    return [gamma, etaN](const Vec& v) { return residual_att(v, gamma, etaN); };
  return [gamma, etaN](const Vec& v) { return residual_rep(v, gamma, etaN); };
}

bool asymmetric_root(const Vec& v) { return std::fabs(v[2] - v[5]) > 1e-7; }

// Kick off a symmetric root along the Jacobian's softest direction; the
// bifurcating branch, when present, captures the Newton iteration.
std::optional<Vec> kick_solve(const std::function<Vec(const Vec&)>& F, const Vec& base) {
  Mat J = num_jacobian(F, base);
  Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeFullV);
  Vec dir = svd.matrixV().col(5);
  for (double d : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
    for (double s : {1.0, -1.0}) {
      NewtonResult r = damped_newton(F, clamp6, base + s * d * dir);
      if (r.ok && asymmetric_root(r.v)) return r.v;
    }
  }
  return std::nullopt;
}

// ----------------------------------------------------------- state assembly

int count_nodes(const ExactState& s) {
  const int n = 4001;
  int count = 0;
  double prev = s.evaluate(-1.0 + 2e-4);
  for (int i = 1; i < n; ++i) {
    double x = -1.0 + 2e-4 + (2.0 - 4e-4) * i / (n - 1);
    double cur = s.evaluate(x);
    if (prev * cur < 0.0) ++count;
    if (cur != 0.0) prev = cur;
  }
  return count;
}

ExactState finalize(Family fam, double gamma, double etaN, SideParams L, SideParams R) {
  ExactState s;
  s.family = fam;
  s.gamma = gamma;
  s.etaN = etaN;
  s.left = L;
  s.right = R;
  s.mu = is_attractive(fam) ? L.k * L.k * (1.0 - 2.0 * L.m)
                            : L.k * L.k * (1.0 + L.m);
  s.node_count = count_nodes(s);
  s.energy_per_particle = energy_per_particle(s);
  return s;
}

ExactState state_from_vec(Family fam, double gamma, double etaN, const Vec& v) {
  return finalize(fam, gamma, etaN, {v[0], v[1], v[2]}, {v[3], v[4], v[5]});
}

Vec vec_from_state(const ExactState& s) {
  Vec v(6);
  v << s.left.A, s.left.k, s.left.m, s.right.A, s.right.k, s.right.m;
  return v;
}

ExactState left_dominant(const ExactState& s) {
  double mL = 0.0, mR = 0.0;
  for (int i = 1; i < 200; ++i) {
    mL = std::fmax(mL, std::fabs(s.evaluate(-i / 200.0)));
    mR = std::fmax(mR, std::fabs(s.evaluate(i / 200.0)));
  }
  return (mR > mL) ? mirror(s) : s;
}

}  // namespace

// ------------------------------------------------------------- evaluation --

std::string family_name(Family f) {
  switch (f) {
    case Family::antisym_rep: return "antisym-rep";
    case Family::sym_rep: return "sym-rep";
    case Family::antisym_att: return "antisym-att";
    case Family::sym_att: return "sym-att";
    case Family::asym_att: return "asym-att";
    case Family::asym_rep: return "asym-rep";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::antisym_rep, Family::sym_rep, Family::antisym_att,
                   Family::sym_att, Family::asym_att, Family::asym_rep})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown family: " + name);
}

double ExactState::evaluate(double x) const {
  if (std::fabs(x) > 1.0) throw std::domain_error("evaluate: |x| > 1");
  const SideParams& p = (x < 0.0) ? left : right;
  double u = (x < 0.0) ? p.k * (x + 1.0) : p.k * (x - 1.0);
  if (is_attractive(family)) return p.A * jacobi(u - complete_K(p.m), p.m).cn;
  return p.A * jacobi(u, p.m).sn;
}

double ExactState::derivative(double x) const {
  const SideParams& p = (x < 0.0) ? left : right;
  double u = (x < 0.0) ? p.k * (x + 1.0) : p.k * (x - 1.0);
  if (is_attractive(family)) {
    EllipticTriple t = jacobi(u - complete_K(p.m), p.m);
    return -p.A * p.k * t.sn * t.dn;
  }
  EllipticTriple t = jacobi(u, p.m);
  return p.A * p.k * t.cn * t.dn;
}

ExactState mirror(const ExactState& s) {
  ExactState r = s;
  r.left = {-s.right.A, s.right.k, s.right.m};
  r.right = {-s.left.A, s.left.k, s.left.m};
  return r;
}

double energy_per_particle(const ExactState& s) {
  double q4 = integrate_split([&](double x) {
    double p = s.evaluate(x);
    return p * p * p * p;
  });
  return s.mu - 0.5 * s.etaN * q4;
}

double max_residual(const ExactState& s) {
  Vec v = vec_from_state(s);
  return system_for(s.family, s.gamma, s.etaN)(v).cwiseAbs().maxCoeff();
}

// ------------------------------------------------------ symmetric families -

ExactState solve_antisym_repulsive(double etaN, int j) {
  if (!(etaN > 0.0)) throw std::domain_error("solve_antisym_repulsive: etaN must be > 0");
  auto f = [&](double m) {
    double K = complete_K(m);
    return 16.0 * j * j * K * (K - complete_E(m)) / etaN - 1.0;
  };
  double lo = 1e-14, hi = 1.0 - 1e-14;
  if (f(lo) > 0.0 || f(hi) < 0.0) throw SolverError("antisym-rep: no root in (0,1)");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double m = 0.5 * (lo + hi);
  double k = 2.0 * j * complete_K(m);
  double A = std::sqrt(2.0 * k * k * m / etaN);
  double a = (j % 2) ? -A : A;
  return finalize(Family::antisym_rep, 0.0, etaN, {a, k, m}, {a, k, m});
}

ExactState solve_antisym_attractive(double etaN, int j) {
  if (!(etaN < 0.0)) throw std::domain_error("solve_antisym_attractive: etaN must be < 0");
  double a = std::fabs(etaN);
  auto f = [&](double m) {
    double K = complete_K(m);
    return 16.0 * j * j * K * (complete_E(m) + (m - 1.0) * K) / a - 1.0;
  };
  double lo = 1e-14, hi = 1.0 - 1e-14;
  if (f(lo) > 0.0 || f(hi) < 0.0) throw SolverError("antisym-att: no root in (0,1)");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double m = 0.5 * (lo + hi);
  double k = 2.0 * j * complete_K(m);
  double A = std::sqrt(2.0 * m * k * k / a);
  double amp = (j % 2) ? -A : A;
  return finalize(Family::antisym_att, 0.0, etaN, {amp, k, m}, {amp, k, m});
}

namespace {

// Shared 2-variable (k,m) solve for the symmetric families, with a
// small-|etaN| continuation ladder as fallback.
ExactState solve_symmetric(Family fam, double gamma, double etaN, int branch) {
  bool att = (fam == Family::sym_att);
  double klin = symmetric_k(gamma, branch);
  auto sys_at = [&](double e) {
    return std::function<Vec(const Vec&)>([gamma, e, att](const Vec& v) -> Vec {
      double k = safe_k(v[0]), m = safe_m(v[1]);
      Vec f(2);
      if (att) {
        double K = complete_K(m);
        EllipticTriple t = jacobi(k + K, m), n = jacobi(k, m);
        f[0] = 2.0 * k * t.sn * t.dn - gamma * t.cn;
        f[1] = 4.0 * k / n.dn *
                   ((k * (m - 1.0) + jacobi_epsilon(k, m)) * n.dn - m * n.cn * n.sn) -
               std::fabs(e);
      } else {
        EllipticTriple t = jacobi(k, m);
        f[0] = 2.0 * k * t.cn * t.dn + gamma * t.sn;
        f[1] = 4.0 * k * (k - jacobi_epsilon(k, m)) - e;
      }
      return f;
    });
  };
  auto clamp2 = [branch](Vec& v) {
    v[1] = std::fmin(1.0 - 1e-10, std::fmax(1e-10, v[1]));
    // quarter-period windows scale with K(m); at m -> 0 they reduce to the
    // linear windows ((2b-1)pi/2, b pi)
    double K = complete_K(v[1]);
    v[0] = std::fmax((2.0 * branch - 1.0) * K + 1e-6, v[0]);
    v[0] = std::fmin(2.0 * branch * K - 1e-6, v[0]);
  };
  auto build = [&](const Vec& v) {
    double k = v[0], m = v[1];
    double A = std::sqrt(2.0 * m * k * k / std::fabs(etaN));
    return finalize(fam, gamma, etaN, {A, k, m}, {-A, k, m});
  };

  std::vector<Vec> seeds;
  for (double m0 : {0.05, 0.2, 0.4})
    for (double kf : {0.0, 0.5, 0.9}) {
      Vec s(2);
      s << klin + kf * (branch * M_PI - klin), m0;
      seeds.push_back(s);
    }
  for (const Vec& s : seeds) {
    NewtonResult r = damped_newton(sys_at(etaN), clamp2, s);
    if (r.ok) return build(r.v);
  }
  // continuation ladder from the near-linear regime
  double e0 = att ? -0.5 : 0.5;
  Vec v(2);
  v << klin, 0.02;
  NewtonResult r = damped_newton(sys_at(e0), clamp2, v);
  if (r.ok) {
    int steps = 100;
    for (int i = 1; i <= steps && r.ok; ++i) {
      double e = e0 + (etaN - e0) * i / steps;
      r = damped_newton(sys_at(e), clamp2, r.v);
    }
    if (r.ok) return build(r.v);
  }
  throw SolverError(family_name(fam) + ": Newton failed from all seeds (gamma=" +
                    std::to_string(gamma) + ", etaN=" + std::to_string(etaN) + ")");
}

}  // namespace

ExactState solve_sym_repulsive(double gamma, double etaN, int branch) {
  if (!(gamma > 0.0) || !(etaN > 0.0))
    throw std::domain_error("solve_sym_repulsive: need gamma > 0, etaN > 0");
  return solve_symmetric(Family::sym_rep, gamma, etaN, branch);
}

ExactState solve_sym_attractive(double gamma, double etaN, int branch) {
  if (!(gamma > 0.0) || !(etaN < 0.0))
    throw std::domain_error("solve_sym_attractive: need gamma > 0, etaN < 0");
  return solve_symmetric(Family::sym_att, gamma, etaN, branch);
}

// ----------------------------------------------------- asymmetric families -

namespace {

Vec symmetric_base_att(double gamma, double etaN, int branch) {
  ExactState s = solve_sym_attractive(gamma, etaN, branch);
  return vec_from_state(s);
}

// Continuation of a six-variable root from etaN = from to etaN = to.
std::optional<Vec> continue_root(Family fam, double gamma, Vec v, double from,
                                 double to, double step) {
  double dir = (to > from) ? 1.0 : -1.0;
  step = std::fabs(step) * dir;
  Vec prev = v;
  double e = from;
  while (std::fabs(to - e) > 1e-12) {
    double en = (dir > 0) ? std::fmin(e + step, to) : std::fmax(e + step, to);
    Vec pred = v + (v - prev);
    prev = v;
    NewtonResult r = damped_newton(system_for(fam, gamma, en), clamp6, pred);
    if (!r.ok || !asymmetric_root(r.v)) return std::nullopt;
    v = r.v;
    e = en;
  }
  return v;
}

}  // namespace

ExactState solve_asym_attractive(double gamma, double etaN,
                                 const std::optional<ExactState>& seed) {
  if (!(gamma > 0.0) || !(etaN < 0.0))
    throw std::domain_error("solve_asym_attractive: need gamma > 0, etaN < 0");
  auto F = system_for(Family::asym_att, gamma, etaN);

  if (seed && seed->family == Family::asym_att) {
    NewtonResult r = damped_newton(F, clamp6, vec_from_state(*seed));
    if (r.ok && asymmetric_root(r.v))
      return left_dominant(state_from_vec(Family::asym_att, gamma, etaN, r.v));
    if (r.ok)
      throw BelowBifurcationError("asym-att: root collapsed onto the symmetric branch");
    throw SolverError("asym-att: Newton failed from provided seed");
  }

  // Excited branch: requested by seeding with an antisymmetric state (the
  // convention of the source analysis) or the second symmetric branch.  The
  // capture basin off the antisymmetric root itself is empty (see tests), so
  // the kick is taken off the second symmetric branch, which this excited
  // asymmetric branch actually connects to.
  bool excited = false;
  if (seed && seed->family == Family::antisym_att) excited = true;
  if (seed && seed->family == Family::sym_att) {
    ExactState b2 = solve_sym_attractive(gamma, seed->etaN, 2);
    excited = std::fabs(seed->mu - b2.mu) < 1e-6;
  }

  int branch = excited ? 2 : 1;
  if (auto root = kick_solve(F, symmetric_base_att(gamma, etaN, branch)))
    return left_dominant(state_from_vec(Family::asym_att, gamma, etaN, *root));

  // Ladder: hunt for a capture point, then continue to the target.
  double start = excited ? etaN : -2.5;
  double stop = excited ? etaN - 4.0 : std::fmin(etaN, -6.0);
  for (double t = start; t >= stop - 1e-9; t -= excited ? 0.2 : 0.25) {
    auto Ft = system_for(Family::asym_att, gamma, t);
    auto root = kick_solve(Ft, symmetric_base_att(gamma, t, branch));
    if (!root) continue;
    if (auto v = continue_root(Family::asym_att, gamma, *root, t, etaN, 0.05))
      return left_dominant(state_from_vec(Family::asym_att, gamma, etaN, *v));
  }
  throw BelowBifurcationError(
      "asym-att: no asymmetric root found; interaction is above the bifurcation "
      "threshold for this branch");
}

ExactState solve_asym_repulsive(double gamma, double etaN,
                                const std::optional<ExactState>& seed) {
  if (!(gamma > 0.0) || !(etaN > 0.0))
    throw std::domain_error("solve_asym_repulsive: need gamma > 0, etaN > 0");
  auto F = system_for(Family::asym_rep, gamma, etaN);

  if (seed && seed->family == Family::asym_rep) {
    NewtonResult r = damped_newton(F, clamp6, vec_from_state(*seed));
    if (r.ok && asymmetric_root(r.v))
      return left_dominant(state_from_vec(Family::asym_rep, gamma, etaN, r.v));
    if (r.ok)
      throw BelowBifurcationError("asym-rep: root collapsed onto the antisymmetric branch");
    throw SolverError("asym-rep: Newton failed from provided seed");
  }

  // This branch bifurcates from the j=1 antisymmetric state.
  auto base_at = [&](double e) { return vec_from_state(solve_antisym_repulsive(e, 1)); };
  if (auto root = kick_solve(F, base_at(etaN)))
    return left_dominant(state_from_vec(Family::asym_rep, gamma, etaN, *root));
  for (double t = 3.0; t <= std::fmax(etaN, 12.0) + 1e-9; t += 0.5) {
    auto Ft = system_for(Family::asym_rep, gamma, t);
    auto root = kick_solve(Ft, base_at(t));
    if (!root) continue;
    if (auto v = continue_root(Family::asym_rep, gamma, *root, t, etaN, 0.05))
      return left_dominant(state_from_vec(Family::asym_rep, gamma, etaN, *v));
  }
  throw BelowBifurcationError(
      "asym-rep: no asymmetric root found; interaction is below the bifurcation "
      "threshold");
}

double bifurcation_threshold(Family family, double gamma, double tol) {
  bool att = (family == Family::asym_att);
  if (!att && family != Family::asym_rep)
    throw std::domain_error("bifurcation_threshold: asymmetric families only");
  auto exists = [&](double e) {
    auto F = system_for(family, gamma, e);
    Vec base = att ? symmetric_base_att(gamma, e, 1)
                   : vec_from_state(solve_antisym_repulsive(e, 1));
    return kick_solve(F, base).has_value();
  };
  // walk outward from the linear regime until the asymmetric root appears;
  // a doubling expansion can overshoot the window where the symmetric-base
  // kick converges, so take fixed-size steps
  double dir = att ? -1.0 : 1.0;
  double none = dir * 0.5, some = 0.0;
  if (exists(none)) throw SolverError("bifurcation_threshold: bracket failed");
  for (double e = 1.5; e <= 40.0 + 1e-9; e += 1.0) {
    if (exists(dir * e)) {
      some = dir * e;
      break;
    }
    none = dir * e;
  }
  if (some == 0.0) throw SolverError("bifurcation_threshold: bracket failed");
  while (std::fabs(some - none) > tol) {
    double mid = 0.5 * (some + none);
    (exists(mid) ? some : none) = mid;
  }
  return 0.5 * (some + none);
}

// ------------------------------------------------------------ continuation -

std::vector<SweepPoint> continuation_sweep(Family family, double gamma,
                                           double etaN_begin, double etaN_end,
                                           double step, int branch) {
  std::vector<SweepPoint> out;
  double dir = (etaN_end > etaN_begin) ? 1.0 : -1.0;
  step = std::fabs(step);
  int n = (int)std::lround(std::fabs(etaN_end - etaN_begin) / step);

  if (family == Family::asym_att || family == Family::asym_rep) {
    std::optional<Vec> cur, prev;
    auto first = (family == Family::asym_att)
                     ? solve_asym_attractive(gamma, etaN_begin)
                     : solve_asym_repulsive(gamma, etaN_begin);
    cur = vec_from_state(first);
    out.push_back({etaN_begin, true, first});
    for (int i = 1; i <= n; ++i) {
      double e = etaN_begin + dir * step * i;
      SweepPoint pt;
      pt.etaN = e;
      pt.converged = false;
      if (cur) {
        Vec pred = prev ? (*cur + (*cur - *prev)) : *cur;
        NewtonResult r = damped_newton(system_for(family, gamma, e), clamp6, pred);
        if (r.ok && asymmetric_root(r.v)) {
          pt.converged = true;
          pt.state = left_dominant(state_from_vec(family, gamma, e, r.v));
          prev = cur;
          cur = r.v;
        } else {
          prev.reset();  // keep the last good seed, drop the extrapolation
        }
      }
      out.push_back(pt);
    }
    return out;
  }

  for (int i = 0; i <= n; ++i) {
    double e = etaN_begin + dir * step * i;
    SweepPoint pt;
    pt.etaN = e;
    try {
      switch (family) {
        case Family::antisym_rep: pt.state = solve_antisym_repulsive(e, branch); break;
        case Family::antisym_att: pt.state = solve_antisym_attractive(e, branch); break;
        case Family::sym_rep: pt.state = solve_sym_repulsive(gamma, e, branch); break;
        case Family::sym_att: pt.state = solve_sym_attractive(gamma, e, branch); break;
        default: throw SolverError("unreachable");
      }
      pt.converged = true;
    } catch (const SolverError&) {
      pt.converged = false;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace gpebox
