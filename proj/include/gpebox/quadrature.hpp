#pragma once

#include <functional>
#include <vector>

namespace gpebox {

// 64-node Gauss-Legendre rule on [a,b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

// Integral over [-1,1] split at x=0 (integrands here typically have a
// derivative kink at the barrier).
double integrate_split(const std::function<double(double)>& f);

// Mapped nodes and weights of the 64-node rule on [a,b], for callers that
// want to amortize integrand evaluation over many integrals.
void quadrature_rule(double a, double b, std::vector<double>& xs,
                     std::vector<double>& ws);

}  // namespace gpebox
