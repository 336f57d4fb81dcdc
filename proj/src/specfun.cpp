#include "gkrevival/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gkrevival/errors.hpp"

namespace gkr::specfun {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Godfrey's coefficients for g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

double lanczos_ln_gamma(double x) {
  // Gamma(x) = Gamma(z + 1) with z = x - 1, valid for z > -1/2.
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// ln cosh(y) for y >= 0 without overflow.
double ln_cosh(double y) { return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2; }

// Log of the K integrand after pulling out e^{-x}: -x(cosh t - 1) + ln cosh(nu t).
double k_log_integrand(double nu, double x, double t) {
  const double s = std::sinh(0.5 * t);
  return -2.0 * x * s * s + ln_cosh(nu * t);
}

// Location of the maximum of k_log_integrand in t >= 0.
double k_peak(double nu, double x) {
  if (nu * nu <= x) return 0.0;
  // f'(t) = nu tanh(nu t) - x sinh t: positive just right of 0, negative for
  // large t. Bracket and bisect.
  auto slope = [&](double t) { return nu * std::tanh(nu * t) - x * std::sinh(t); };
  double lo = 0.0;
  double hi = std::max(1.0, std::asinh(nu / x));
  while (slope(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void AccuracyPolicy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) throw DomainError("AccuracyPolicy: rel_tol must lie in (0, 1e-6]");
  if (max_terms < 100) throw DomainError("AccuracyPolicy: max_terms must be >= 100");
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be > 0, got " + std::to_string(x));
  if (std::isinf(x)) return kInf;
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Reflection; sin(pi x) > 0 on (0, 1/2).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_ln_gamma(1.0 - x);
  }
  return lanczos_ln_gamma(x);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -kInf;
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

double ln_bessel_i(double nu, double x, const AccuracyPolicy& policy) {
  if (!(nu >= 0.0) || !(x >= 0.0)) throw DomainError("bessel_i: requires nu >= 0 and x >= 0");
  if (x == 0.0) return nu == 0.0 ? 0.0 : -kInf;

  // Ascending series sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)). Every term is
  // positive; sum outward from the largest one so that nothing overflows.
  const double y = 0.25 * x * x;
  const double k_root = 0.5 * (std::sqrt(nu * nu + 4.0 * y) - nu);
  const double peak = std::floor(std::max(0.0, k_root));
  const double ln_peak = (2.0 * peak + nu) * std::log(0.5 * x) - ln_gamma(peak + 1.0) - ln_gamma(peak + nu + 1.0);

  double sum = 1.0;
  int terms = 1;
  const double stop = 0.25 * kEps;

  double term = 1.0;
  for (double k = peak;; k += 1.0) {
    const double ratio = y / ((k + 1.0) * (k + 1.0 + nu));
    term *= ratio;
    sum += term;
    if (++terms > policy.max_terms) throw ConvergenceError("bessel_i: series exceeded max_terms");
    if (ratio < 0.5 && term < stop * sum) break;
  }
  term = 1.0;
  for (double k = peak; k >= 1.0; k -= 1.0) {
    const double ratio = k * (k + nu) / y;
    term *= ratio;
    sum += term;
    if (++terms > policy.max_terms) throw ConvergenceError("bessel_i: series exceeded max_terms");
    if (ratio < 0.5 && term < stop * sum) break;
  }
  return ln_peak + std::log(sum);
}

double bessel_i_scaled(double nu, double x, const AccuracyPolicy& policy) {
  const double ln_i = ln_bessel_i(nu, x, policy);
  return std::exp(ln_i - x);
}

double ln_bessel_k_scaled(double nu, double x, const AccuracyPolicy& policy) {
  if (!(nu >= 0.0)) throw DomainError("bessel_k: requires nu >= 0");
  if (!(x > 0.0)) throw DomainError("bessel_k: requires x > 0, got " + std::to_string(x));

  // e^x K_nu(x) = int_0^inf exp(-x(cosh t - 1)) cosh(nu t) dt. The integrand
  // is even in t and decays double-exponentially, so the plain trapezoid rule
  // on the half line converges geometrically in 1/h. Work relative to the peak
  // value to stay in range.
  const double t_peak = k_peak(nu, x);
  const double f_peak = k_log_integrand(nu, x, t_peak);
  const double curvature =
      x * std::cosh(t_peak) - nu * nu / std::exp(2.0 * ln_cosh(nu * t_peak));
  const double width = std::min(1.0, 1.0 / std::sqrt(std::max(std::abs(curvature), 1e-300)));
  double h = std::clamp(0.5 * width, 1e-6, 0.5);

  constexpr double kCutoff = -60.0;
  auto g = [&](double t) { return std::exp(k_log_integrand(nu, x, t) - f_peak); };

  // Last node beyond the peak where the integrand has dropped below e^kCutoff.
  double t_end = t_peak;
  for (double step = std::max(h, width);; step *= 2.0) {
    t_end += step;
    if (k_log_integrand(nu, x, t_end) - f_peak < kCutoff) break;
  }

  long evaluations = 0;
  const long budget = 64L * policy.max_terms;
  double sum = 0.5 * g(0.0);
  const long first = static_cast<long>(std::ceil(t_end / h));
  for (long j = 1; j <= first; ++j) sum += g(static_cast<double>(j) * h);
  evaluations += first;
  double estimate = h * sum;

  const double accept = std::pow(policy.rel_tol, 0.75);
  for (int level = 0; level < 40; ++level) {
    const double half = 0.5 * h;
    const long count = static_cast<long>(std::ceil(t_end / h));
    double mid = 0.0;
    for (long j = 0; j < count; ++j) mid += g((2.0 * static_cast<double>(j) + 1.0) * half);
    evaluations += count;
    sum += mid;
    h = half;
    const double refined = h * sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 1 && change <= accept * refined) return f_peak + std::log(estimate);
    if (evaluations > budget) break;
  }
  throw ConvergenceError("bessel_k: trapezoid refinement did not converge");
}

double bessel_k_scaled(double nu, double x, const AccuracyPolicy& policy) {
  return std::exp(ln_bessel_k_scaled(nu, x, policy));
}

double ln_bessel_k(double nu, double x, const AccuracyPolicy& policy) {
  return ln_bessel_k_scaled(nu, x, policy) - x;
}

double bessel_i_ratio(double nu, double x, const AccuracyPolicy& policy) {
  if (!(nu >= 0.0) || !(x >= 0.0)) throw DomainError("bessel_i_ratio: requires nu >= 0 and x >= 0");
  if (x == 0.0) return 0.0;

  // I_{nu+1}/I_nu = 1 / (b_1 + 1 / (b_2 + ...)), b_j = 2(nu + j)/x.
  // Modified Lentz evaluation.
  constexpr double tiny = 1e-300;
  const double two_over_x = 2.0 / x;
  double f = (nu + 1.0) * two_over_x;
  double c = f;
  double d = 0.0;
  for (int j = 2; j <= policy.max_terms + 1; ++j) {
    const double b = (nu + static_cast<double>(j)) * two_over_x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) return 1.0 / f;
  }
  throw ConvergenceError("bessel_i_ratio: continued fraction exceeded max_terms");
}

}  // namespace gkr::specfun
