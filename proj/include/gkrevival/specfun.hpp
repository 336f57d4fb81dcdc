#pragma once

// Real-order special functions used by the coherent-state code.
//
// All Bessel entry points work in scaled or logarithmic form. I_nu(x) and
// K_nu(x) over/underflow long before the quantities built from them do
// (I_80(56.6) ~ 1e6 is harmless, but K_100(1e-3) ~ 1e480 is not), so the
// log variants are the primary implementation and the scaled variants are
// thin exp() wrappers.

#include <span>

namespace gkr::specfun {

struct AccuracyPolicy {
  double rel_tol = 1e-12;
  int max_terms = 5000;

  // Throws DomainError unless rel_tol in (0, 1e-6] and max_terms >= 100.
  void validate() const;
};

// ln Gamma(x) for x > 0 (Lanczos, g = 607/128).
double ln_gamma(double x);

// e^{-x} I_nu(x), nu >= 0, x >= 0.
double bessel_i_scaled(double nu, double x, const AccuracyPolicy& policy = {});

// ln I_nu(x). Returns -inf at x == 0 for nu > 0.
double ln_bessel_i(double nu, double x, const AccuracyPolicy& policy = {});

// e^{x} K_nu(x), nu >= 0, x > 0. May be +inf where K_nu itself is huge;
// use ln_bessel_k_scaled in that regime.
double bessel_k_scaled(double nu, double x, const AccuracyPolicy& policy = {});

// ln(e^{x} K_nu(x)).
double ln_bessel_k_scaled(double nu, double x, const AccuracyPolicy& policy = {});

// ln K_nu(x).
double ln_bessel_k(double nu, double x, const AccuracyPolicy& policy = {});

// I_{nu+1}(x) / I_nu(x) by continued fraction. Lies in [0, 1).
double bessel_i_ratio(double nu, double x, const AccuracyPolicy& policy = {});

// ln(sum_i exp(v_i)) without overflow.
double log_sum_exp(std::span<const double> values);

}  // namespace gkr::specfun
