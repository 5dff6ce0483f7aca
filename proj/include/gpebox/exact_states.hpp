#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpebox {

enum class Family {
  antisym_rep,
  sym_rep,
  antisym_att,
  sym_att,
  asym_att,
  asym_rep,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct SideParams {
  double A, k, m;
};

// One analytic stationary state.  The wavefunction is stored in a canonical
// two-sided form:
//   repulsive:  left  A_L sn(k_L (x+1) | m_L),  right A_R sn(k_R (x-1) | m_R)
//   attractive: left  A_L cn(k_L (x+1) - K(m_L) | m_L), right mirrored about 0
// which vanishes at both walls by construction.
struct ExactState {
  Family family;
  double gamma;
  double etaN;
  SideParams left, right;
  double mu;
  double energy_per_particle;
  int node_count;

  double evaluate(double x) const;
  double derivative(double x) const;  // one-sided at 0, from sign of x
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class BelowBifurcationError : public SolverError {
 public:
  explicit BelowBifurcationError(const std::string& what) : SolverError(what) {}
};

ExactState solve_antisym_repulsive(double etaN, int j);
ExactState solve_sym_repulsive(double gamma, double etaN, int branch);
ExactState solve_antisym_attractive(double etaN, int j);
ExactState solve_sym_attractive(double gamma, double etaN, int branch);

// Six-variable asymmetric systems.  Without a seed the ground (zero-node)
// branch is located by a bifurcation-direction kick off the relevant
// symmetric branch plus parameter continuation.  A seed of an asymmetric
// state Newton-polishes from that state's parameters; a symmetric-family
// seed selects the branch bifurcating from it.
ExactState solve_asym_attractive(double gamma, double etaN,
                                 const std::optional<ExactState>& seed = {});
ExactState solve_asym_repulsive(double gamma, double etaN,
                                const std::optional<ExactState>& seed = {});

ExactState mirror(const ExactState& s);

double energy_per_particle(const ExactState& s);

// Max of the six algebraic residuals (continuity, jump, two amplitude
// relations, mu equality, normalization) in the asymmetric formulation;
// applicable to every family via the two-sided form.
double max_residual(const ExactState& s);

struct SweepPoint {
  double etaN;
  bool converged;
  ExactState state;  // valid when converged
};

// Interaction strength where the asymmetric branch (asym_att or asym_rep)
// detaches from its parent branch, bisected to tol.
double bifurcation_threshold(Family family, double gamma, double tol = 0.01);

// Continuation in etaN from range start to end (either direction), each
// point seeded from the last converged one.
std::vector<SweepPoint> continuation_sweep(Family family, double gamma,
                                           double etaN_begin, double etaN_end,
                                           double step, int branch = 1);

}  // namespace gpebox
