#pragma once

// Test-only reference computations. Everything here runs in long double and
// shares no code with the library.

#include <cmath>
#include <functional>

namespace oracle {

// tanh-sinh rule on [a, b]; step 1/128 over |tau| <= 4.5.
inline long double tanh_sinh(const std::function<long double(long double)>& f, long double a, long double b) {
  const long double pi_2 = 1.5707963267948966192313216916397514L;
  const long double mid = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  const long double h = 1.0L / 128.0L;
  long double sum = 0.0L;
  for (int k = -576; k <= 576; ++k) {
    const long double tau = k * h;
    const long double u = pi_2 * std::sinh(tau);
    const long double x = std::tanh(u);
    const long double c = std::cosh(u);
    const long double w = pi_2 * std::cosh(tau) / (c * c);
    if (w == 0.0L || std::abs(x) == 1.0L) continue;
    sum += w * f(mid + half * x);
  }
  return sum * h * half;
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, truncated where the
// integrand is far below long double resolution.
inline long double bessel_k(long double nu, long double x) {
  auto ln_f = [&](long double t) { return -x * std::cosh(t) + nu * t; };
  long double best = ln_f(0.0L);
  long double upper = 0.0L;
  for (;;) {
    upper += 0.25L;
    const long double v = ln_f(upper);
    if (v > best) best = v;
    else if (v < best - 60.0L) break;
  }
  return tanh_sinh([&](long double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); }, 0.0L, upper);
}

// Ascending series sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)).
inline long double bessel_i(long double nu, long double x) {
  const long double y = 0.25L * x * x;
  long double term = std::pow(0.5L * x, nu) / std::tgamma(nu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= y / (k * (k + nu));
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum;
}

}  // namespace oracle
