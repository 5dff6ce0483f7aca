#pragma once

// Jacobi elliptic functions and elliptic integrals via the
// arithmetic-geometric mean.  Accuracy contract: 1e-10 absolute on
// [0,1) x finite arguments; internal AGM tolerance 1e-14.

namespace gpebox {

struct EllipticTriple {
  double sn, cn, dn;
};

// Complete elliptic integral of the first kind, m in [0,1).
double complete_K(double m);

// Complete elliptic integral of the second kind, m in [0,1].
double complete_E(double m);

// sn/cn/dn of real argument u, m in [0,1].  m within 1e-12 of 1 is
// routed to the hyperbolic limit (tanh, sech, sech).
EllipticTriple jacobi(double u, double m);

// Jacobi epsilon: integral of dn^2 from 0 to u, m in [0,1).
// Odd in u; additive over half periods: eps(u+2K) = eps(u) + 2E.
double jacobi_epsilon(double u, double m);

}  // namespace gpebox
