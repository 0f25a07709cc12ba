#pragma once
// Small numeric helpers shared by the evaluator translation units.

#include <cmath>
#include <complex>
#include <numbers>

#include "dyr/policy.hpp"

namespace dyr::detail {

inline constexpr double pi = std::numbers::pi;
inline const cplx iu(0.0, 1.0);
inline const cplx ipi(0.0, std::numbers::pi);

// Sine guarded against evaluation within pole_radius of one of its zeros;
// `scale` converts |sin| into a distance estimate in the caller's variable.
inline cplx checked_sin(cplx arg, double scale, const TruncationPolicy& pol,
                        const char* what) {
  const cplx sv = std::sin(arg);
  if (std::abs(sv) * scale < pol.pole_radius) throw pole_error(what);
  return sv;
}

} // namespace dyr::detail
