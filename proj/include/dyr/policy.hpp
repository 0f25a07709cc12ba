#pragma once
// Shared numerical policy and error taxonomy for every evaluator in the
// library. All series, products and quadratures are governed by one
// TruncationPolicy so that verification runs are reproducible from the
// policy record alone.

#include <complex>
#include <stdexcept>

namespace dyr {

using cplx = std::complex<double>;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct singular_matrix_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationPolicy {
  double series_tail_tol = 1e-14;     // theta-series tail bound
  long max_terms = 1'000'000;         // hard cap on series/product length
  double product_tail_tol = 1e-14;    // infinite-product tail bound
  double quadrature_abs_tol = 1e-12;  // absolute tolerance of the S2 integral
  int quadrature_max_subdivisions = 4000;
  double modular_switch_im_tau = 0.5; // switch to tau -> -1/tau below this
  double pole_radius = 1e-6;          // refuse evaluation this close to a pole

  void validate() const {
    if (!(series_tail_tol > 0) || !(product_tail_tol > 0) ||
        !(quadrature_abs_tol > 0) || !(pole_radius > 0))
      throw domain_error("TruncationPolicy: tolerances must be positive");
    if (max_terms < 8)
      throw domain_error("TruncationPolicy: max_terms must be >= 8");
    if (!(modular_switch_im_tau > 0) || !(modular_switch_im_tau < 1))
      throw domain_error("TruncationPolicy: modular_switch_im_tau must lie in (0,1)");
    if (quadrature_max_subdivisions < 1)
      throw domain_error("TruncationPolicy: quadrature_max_subdivisions must be >= 1");
  }
};

} // namespace dyr
