#pragma once
// Analytic ingredients of the R-matrix constructions: Jacobi theta functions
// with rational characteristics, the Jacobi Theta_p triple product, single-
// and double-base infinite products, the Barnes double sine S2 and the scaled
// normaliser S0.
//
// Conventions:
//   theta[g1,g2](xi,tau) = sum_m exp(i pi (m+g1)^2 tau + 2 i pi (m+g1)(xi+g2))
//   Theta_p(z)           = (p;p)_inf (z;p)_inf (p/z;p)_inf
//   (x;p)_inf            = prod_{k>=0} (1 - x p^k)
//   (x;p,s)_inf          = prod_{a,b>=0} (1 - x p^a s^b)
//   S2(x|w1,w2)          = Gamma2(w1+w2-x)/Gamma2(x), evaluated through the
//                          integral representation on the fundamental strip
//                          0 < Re x < Re(w1+w2) after shift reduction.

#include <complex>

#include "dyr/policy.hpp"

namespace dyr {

// Rational characteristics of a theta function; values are elements of
// (1/N)Z stored as doubles.
struct Characteristics {
  double g1 = 0.0;
  double g2 = 0.0;
};

// Elliptic nome |p| < 1 together with tau such that p = exp(2 i pi tau).
struct Nome {
  cplx p;
  cplx tau;

  static Nome from_p(cplx p);
  static Nome from_tau(cplx tau);
};

// Barnes periods; Re w1 > 0 and Re w2 > 0 required.
struct Periods {
  cplx omega1;
  cplx omega2;
};

// Theta function with characteristics. Below the modular switch the sum is
// routed through tau -> -1/tau to avoid catastrophic cancellation.
cplx theta_char(const Characteristics& g, cplx xi, cplx tau,
                const TruncationPolicy& pol);

// Jacobi Theta_p(z) triple product; for |p| near 1 it is evaluated through
// theta_char as theta[0,0](u + 1/2 - tau/2, tau) with z = exp(2 i pi u).
cplx jacobi_big_theta(cplx z, const Nome& nome, const TruncationPolicy& pol);

// Same function with the argument given by its exponent u (z = e^{2 i pi u})
// and the nome by tau. Used where arguments are assembled from exponents so
// that no principal-branch logarithm is ever taken.
cplx jacobi_big_theta_exp(cplx u, cplx tau, const TruncationPolicy& pol);

// (x;p)_inf. For x equal to the base and |p| near 1 the Dedekind-eta modular
// transformation is used instead of the raw product.
cplx pochhammer_single(cplx x, cplx p, const TruncationPolicy& pol);

// (p;p)_inf with eta acceleration near |p| = 1.
cplx euler_product(cplx p, const TruncationPolicy& pol);

// (x;p,s)_inf accumulated in log space over the truncated index lattice.
cplx pochhammer_double(cplx x, cplx p, cplx s, const TruncationPolicy& pol);

// 1/kappa(z^2): the ratio of eight double products normalising the elliptic
// R-matrix. Throws pole_error if a denominator factor vanishes within
// pole_radius.
cplx kappa_inv(cplx z2, cplx p, cplx q, int N, const TruncationPolicy& pol);

// log S2(x|w1,w2). Branch: principal logs of the shift factors plus the
// integral representation; exp of differences of these values is
// branch-insensitive.
cplx log_S2(cplx x, const Periods& om, const TruncationPolicy& pol);

// S0(beta) = S2(-ib/pi) S2(1+ib/pi) / (S2(ib/pi) S2(1-ib/pi)) with periods
// (r, N). The complex-period overload serves the shifted matrix R*.
cplx S0(cplx beta, double r, int N, const TruncationPolicy& pol);
cplx S0(cplx beta, cplx r_period, int N, const TruncationPolicy& pol);

// Closed-form scaling limit of a ratio of Theta functions:
//   Theta_{p^n}(p^u q^{2v} z^{2m}) / Theta_{p^n'}(p^u' q^{2v'} z^{2m'})
//     -> sin(pi (u r + v + i m beta/pi)/(n r)) / sin(...) .
struct ThetaRatioFactor {
  int n = 1;
  double u = 0.0;
  double v = 0.0;
  int m = 0;
};
cplx theta_ratio_limit(const ThetaRatioFactor& num, const ThetaRatioFactor& den,
                       cplx beta, double r, const TruncationPolicy& pol);

// Helpers shared across modules.
cplx pow_int(cplx x, long n);

} // namespace dyr
