#pragma once
// Globally adaptive Gauss-Kronrod 15(7) quadrature for complex-valued
// integrands on a finite interval.

#include <functional>

#include "dyr/policy.hpp"

namespace dyr {

// Integrates f over [a,b] to the requested absolute tolerance by repeatedly
// bisecting the interval with the largest Kronrod error estimate. Throws
// convergence_error if the budget of subdivisions is exhausted first.
cplx integrate_gk15(const std::function<cplx(double)>& f, double a, double b,
                    double abs_tol, int max_subdivisions);

} // namespace dyr
