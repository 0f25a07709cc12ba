#include "dyr/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "dyr/detail/checked_math.hpp"
#include "dyr/quadrature.hpp"

namespace dyr {

namespace {

using detail::checked_sin;
using detail::ipi;
using detail::iu;
using detail::pi;

// log(1-y) that stays accurate for small |y|.
cplx log1m(cplx y) {
  const double ay = std::abs(y);
  if (ay < 1e-4) {
    const cplx y2 = y * y;
    return -(y + 0.5 * y2 + y2 * y / 3.0 + 0.25 * y2 * y2 + 0.2 * y2 * y2 * y);
  }
  return std::log(1.0 - y);
}

// Centered theta series sum_m exp(i pi tau (m+g1)^2 + 2 i pi (m+g1)(xi+g2)).
// The summation starts at the index of largest term modulus and walks
// outward in pairs until three consecutive pairs fall below the tail bound.
cplx theta_series(double g1, double g2, cplx xi, cplx tau,
                  const TruncationPolicy& pol) {
  const double im_tau = tau.imag();
  const cplx w = xi + g2;
  const double center = -w.imag() / im_tau - g1;
  const long m0 = std::lround(center);
  auto term = [&](long m) {
    const double mg = double(m) + g1;
    return std::exp(ipi * (mg * mg * tau + 2.0 * mg * w));
  };
  cplx sum = term(m0);
  int below = 0;
  for (long k = 1;; ++k) {
    if (k > pol.max_terms)
      throw convergence_error("theta_char: series exceeds max_terms");
    const cplx tp = term(m0 + k);
    const cplx tm = term(m0 - k);
    sum += tp + tm;
    const double mag = std::max(std::abs(tp), std::abs(tm));
    if (mag < pol.series_tail_tol * (1.0 + std::abs(sum))) {
      if (++below >= 3) break;
    } else {
      below = 0;
    }
  }
  return sum;
}

// Raw truncated product prod_{k>=0} (1 - x p^k), log-accumulated.
cplx pochhammer_raw(cplx x, cplx p, const TruncationPolicy& pol) {
  const double ap = std::abs(p);
  cplx acc = 0.0;
  cplx y = x;
  for (long k = 0;; ++k) {
    if (k > pol.max_terms)
      throw convergence_error("pochhammer_single: cutoff overflow");
    const double tail = 2.0 * std::abs(y) / std::max(1.0 - ap, 1e-300);
    if (tail < pol.product_tail_tol) break;
    acc += log1m(y);
    y *= p;
  }
  return std::exp(acc);
}

// Log of (x;p,s)_inf over the truncated lattice; optionally tracks the
// smallest factor modulus seen (pole detection for denominators).
cplx lattice_log(cplx x, cplx p, cplx s, const TruncationPolicy& pol,
                 double* min_factor) {
  const double ap = std::abs(p), as = std::abs(s);
  const double row_gain = std::max(1.0 - as, 1e-300);
  const double col_gain = std::max(1.0 - ap, 1e-300);
  cplx acc = 0.0;
  cplx xa = x;
  for (long a = 0;; ++a) {
    if (a > pol.max_terms)
      throw convergence_error("pochhammer_double: cutoff overflow");
    const double outer_tail = 2.0 * std::abs(xa) / (row_gain * col_gain);
    if (outer_tail < pol.product_tail_tol) break;
    cplx y = xa;
    for (long b = 0;; ++b) {
      if (b > pol.max_terms)
        throw convergence_error("pochhammer_double: cutoff overflow");
      if (2.0 * std::abs(y) / row_gain < pol.product_tail_tol) break;
      if (min_factor) {
        const double f = std::abs(1.0 - y);
        if (f < *min_factor) *min_factor = f;
      }
      acc += log1m(y);
      y *= s;
    }
    xa *= p;
  }
  return acc;
}

// Integral representation of log S2 on the fundamental strip. The integrand
//   sinh(a t/2) / (2 sinh(w1 t/2) sinh(w2 t/2) t) - a/(w1 w2 t^2)
// with a = w1 + w2 - 2x has a removable singularity at t = 0, handled by an
// explicit power-series integral on [0, t0].
cplx log_S2_strip(cplx x, const Periods& om, const TruncationPolicy& pol) {
  const cplx w1 = om.omega1, w2 = om.omega2;
  const cplx a = w1 + w2 - 2.0 * x;
  const double W = (w1 + w2).real();
  const double decay = 0.5 * (W - std::abs(a.real()));
  if (decay < 1e-3)
    throw domain_error("log_S2: argument effectively on the strip boundary");

  const double s_max =
      std::max({std::abs(a), std::abs(w1), std::abs(w2), 1e-30});
  const double t0 = 0.3 / s_max;

  // Power series of the integrand in y = t^2 via numerical division of the
  // odd-sinh series; G(y) = 2 A(y)/C(y) - a has no constant term.
  constexpr int K = 12;
  std::array<cplx, K> A{}, S1{}, S2s{}, C{}, G{};
  const cplx a24 = a * a * 0.25, w14 = w1 * w1 * 0.25, w24 = w2 * w2 * 0.25;
  cplx fa = 0.5 * a, f1 = 1.0, f2 = 1.0;
  double fact = 1.0;
  for (int j = 0; j < K; ++j) {
    if (j > 0) {
      fa *= a24;
      f1 *= w14;
      f2 *= w24;
      fact *= double(2 * j) * double(2 * j + 1);
    }
    A[j] = fa / fact;
    S1[j] = f1 / fact;
    S2s[j] = f2 / fact;
  }
  for (int j = 0; j < K; ++j) {
    C[j] = 0.0;
    for (int m = 0; m <= j; ++m) C[j] += S1[m] * S2s[j - m];
  }
  for (int j = 0; j < K; ++j) {
    cplx q = 2.0 * A[j];
    for (int m = 0; m < j; ++m) q -= G[m] * C[j - m];
    G[j] = q / C[0];
  }
  G[0] -= a;

  const cplx inv_ww = 1.0 / (w1 * w2);
  cplx head = 0.0;
  double tpow = t0;
  for (int j = 1; j < K; ++j) {
    head += G[j] * tpow / double(2 * j - 1);
    tpow *= t0 * t0;
  }
  head *= inv_ww;

  const double T =
      std::max(10.0, (-std::log(pol.quadrature_abs_tol) + 8.0) / decay);
  auto f = [&](double t) -> cplx {
    const cplx den = 2.0 * std::sinh(0.5 * w1 * t) * std::sinh(0.5 * w2 * t);
    return std::sinh(0.5 * a * t) / (den * t) - a * inv_ww / (t * t);
  };
  const cplx tail = integrate_gk15(f, t0, T, pol.quadrature_abs_tol,
                                   pol.quadrature_max_subdivisions);
  return head + tail;
}

} // namespace

Nome Nome::from_p(cplx p) {
  Nome n;
  n.p = p;
  n.tau = (p == 0.0) ? cplx(0.0, 1e9) : std::log(p) / (2.0 * ipi);
  return n;
}

Nome Nome::from_tau(cplx tau) {
  Nome n;
  n.tau = tau;
  n.p = std::exp(2.0 * ipi * tau);
  return n;
}

cplx pow_int(cplx x, long n) {
  if (n < 0) return 1.0 / pow_int(x, -n);
  cplx r = 1.0, b = x;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

cplx theta_char(const Characteristics& g, cplx xi, cplx tau,
                const TruncationPolicy& pol) {
  if (!(tau.imag() > 0.0))
    throw domain_error("theta_char: Im tau must be positive");
  if (tau.imag() < pol.modular_switch_im_tau) {
    // theta[a,b](xi,tau) = (-i tau)^{-1/2} exp(i pi T (xi+b)^2)
    //                      * theta[0,-a](T (xi+b), T),  T = -1/tau.
    const cplx T = -1.0 / tau;
    const cplx arg = xi + g.g2;
    const cplx expo = ipi * T * arg * arg;
    if (expo.real() > 700.0)
      throw convergence_error("theta_char: modular prefactor overflow");
    const cplx pref = 1.0 / std::sqrt(-iu * tau);
    return pref * std::exp(expo) * theta_series(0.0, -g.g1, T * arg, T, pol);
  }
  return theta_series(g.g1, g.g2, xi, tau, pol);
}

cplx euler_product(cplx p, const TruncationPolicy& pol) {
  const double ap = std::abs(p);
  if (ap >= 1.0) throw domain_error("euler_product: |p| must be < 1");
  if (p == 0.0) return 1.0;
  if (ap > 1.0 - pol.modular_switch_im_tau) {
    // (p;p)_inf = e^{-i pi tau/12} eta(tau); eta(-1/tau) = sqrt(-i tau) eta(tau).
    const cplx tau = std::log(p) / (2.0 * ipi);
    const cplx T = -1.0 / tau;
    const cplx P = std::exp(2.0 * ipi * T);
    return std::exp(-ipi * tau / 12.0) * std::exp(ipi * T / 12.0) *
           pochhammer_raw(P, P, pol) / std::sqrt(-iu * tau);
  }
  return pochhammer_raw(p, p, pol);
}

cplx pochhammer_single(cplx x, cplx p, const TruncationPolicy& pol) {
  if (std::abs(p) >= 1.0)
    throw domain_error("pochhammer_single: |p| must be < 1");
  if (x == 0.0) return 1.0;
  if (x == p && std::abs(p) > 1.0 - pol.modular_switch_im_tau)
    return euler_product(p, pol);
  return pochhammer_raw(x, p, pol);
}

cplx pochhammer_double(cplx x, cplx p, cplx s, const TruncationPolicy& pol) {
  if (std::abs(p) >= 1.0 || std::abs(s) >= 1.0)
    throw domain_error("pochhammer_double: bases must satisfy |p|,|s| < 1");
  if (x == 0.0) return 1.0;
  return std::exp(lattice_log(x, p, s, pol, nullptr));
}

cplx jacobi_big_theta_exp(cplx u, cplx tau, const TruncationPolicy& pol) {
  if (!(tau.imag() > 0.0))
    throw domain_error("jacobi_big_theta: Im tau must be positive");
  const double ap = std::exp(-2.0 * pi * tau.imag());
  if (ap > 1.0 - pol.modular_switch_im_tau)
    return theta_char({0.0, 0.0}, u + 0.5 - 0.5 * tau, tau, pol);
  const cplx p = std::exp(2.0 * ipi * tau);
  const cplx z = std::exp(2.0 * ipi * u);
  return euler_product(p, pol) * pochhammer_raw(z, p, pol) *
         pochhammer_raw(p / z, p, pol);
}

cplx jacobi_big_theta(cplx z, const Nome& nome, const TruncationPolicy& pol) {
  if (std::abs(nome.p) >= 1.0)
    throw domain_error("jacobi_big_theta: |p| must be < 1");
  if (z == 0.0) throw domain_error("jacobi_big_theta: z must be nonzero");
  if (std::abs(nome.p) > 1.0 - pol.modular_switch_im_tau) {
    const cplx u = std::log(z) / (2.0 * ipi);
    return theta_char({0.0, 0.0}, u + 0.5 - 0.5 * nome.tau, nome.tau, pol);
  }
  return euler_product(nome.p, pol) * pochhammer_raw(z, nome.p, pol) *
         pochhammer_raw(nome.p / z, nome.p, pol);
}

cplx kappa_inv(cplx z2, cplx p, cplx q, int N, const TruncationPolicy& pol) {
  if (N < 2) throw domain_error("kappa_inv: N must be >= 2");
  if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
    throw domain_error("kappa_inv: |p| and |q| must be < 1");
  if (z2 == 0.0) throw domain_error("kappa_inv: z^2 must be nonzero");
  const cplx s = pow_int(q, 2 * N);
  const cplx q2 = q * q;
  const cplx qe = pow_int(q, 2 * N - 2);
  const cplx zi = 1.0 / z2;
  const std::array<cplx, 4> num = {s * zi, q2 * z2, p * zi, p * qe * z2};
  const std::array<cplx, 4> den = {s * z2, q2 * zi, p * z2, p * qe * zi};
  cplx acc = 0.0;
  double min_factor = std::numeric_limits<double>::infinity();
  for (const cplx& x : num) acc += lattice_log(x, p, s, pol, nullptr);
  for (const cplx& x : den) acc -= lattice_log(x, p, s, pol, &min_factor);
  if (min_factor < pol.pole_radius)
    throw pole_error("kappa_inv: denominator product vanishes at evaluation point");
  return std::exp(acc);
}

cplx log_S2(cplx x, const Periods& om, const TruncationPolicy& pol) {
  if (!(om.omega1.real() > 0.0) || !(om.omega2.real() > 0.0))
    throw domain_error("log_S2: periods must have positive real part");
  const double W = (om.omega1 + om.omega2).real();
  cplx acc = 0.0;
  // S2(x) = S2(x+w1) * 2 sin(pi x / w2) and the w2 twin translate x into the
  // fundamental strip; each factor's log is accumulated.
  auto shift_log = [&](cplx xx, cplx other) {
    const cplx sv = checked_sin(pi * xx / other, std::abs(other) / pi, pol,
                                "log_S2: shift factor hits a lattice point");
    return std::log(2.0 * sv);
  };
  int guard = 0;
  while (x.real() <= 0.0) {
    acc += shift_log(x, om.omega2);
    x += om.omega1;
    if (++guard > 1'000'000) throw convergence_error("log_S2: shift reduction stalled");
  }
  while (x.real() >= W) {
    x -= om.omega1;
    acc -= shift_log(x, om.omega2);
    if (++guard > 1'000'000) throw convergence_error("log_S2: shift reduction stalled");
  }
  // Keep the argument away from the strip boundary so the integrand decays.
  const double margin =
      0.25 * std::min(om.omega1.real(), om.omega2.real());
  if (x.real() < margin) {
    acc += shift_log(x, om.omega1);
    x += om.omega2;
  } else if (x.real() > W - margin) {
    x -= om.omega2;
    acc -= shift_log(x, om.omega1);
  }
  return acc + log_S2_strip(x, om, pol);
}

cplx S0(cplx beta, cplx r_period, int N, const TruncationPolicy& pol) {
  if (N < 2) throw domain_error("S0: N must be >= 2");
  if (beta == 0.0) return 1.0;
  const Periods om{r_period, cplx(double(N), 0.0)};
  const cplx x = iu * beta / pi;
  return std::exp(log_S2(-x, om, pol) + log_S2(1.0 + x, om, pol) -
                  log_S2(x, om, pol) - log_S2(1.0 - x, om, pol));
}

cplx S0(cplx beta, double r, int N, const TruncationPolicy& pol) {
  if (!(r > 0.0)) throw domain_error("S0: r must be positive");
  return S0(beta, cplx(r, 0.0), N, pol);
}

cplx theta_ratio_limit(const ThetaRatioFactor& num, const ThetaRatioFactor& den,
                       cplx beta, double r, const TruncationPolicy& pol) {
  auto arg = [&](const ThetaRatioFactor& f) {
    return pi * (f.u * r + f.v + iu * double(f.m) * beta / pi) /
           (double(f.n) * r);
  };
  const cplx d = checked_sin(arg(den), double(den.n) * r / pi, pol,
                             "theta_ratio_limit: denominator sine vanishes");
  return std::sin(arg(num)) / d;
}

} // namespace dyr
