#include "gkrevival/measure.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gkrevival/errors.hpp"
#include "gkrevival/quadrature.hpp"
#include "gkrevival/specfun.hpp"

namespace gkr {
namespace {

void require_positive_action(double action, const char* where) {
  if (!(action > 0.0) || !std::isfinite(action)) throw DomainError(std::string(where) + ": J must be finite and > 0");
}

// ln of the moment integrand in the chosen variable.
double ln_integrand(long n, const SpectrumParams& p, MomentVariable variable, double v) {
  const double mu = p.mu();
  const double nd = static_cast<double>(n);
  if (variable == MomentVariable::direct) return nd * std::log(v) + ln_density_rho(v, p);
  // J = u^2/(4 mu), dJ = u/(2 mu) du, (J mu)^{mu/2} = (u/2)^mu.
  return nd * std::log(v * v / (4.0 * mu)) + mu * std::log(0.5 * v) + std::log(v) + specfun::ln_bessel_k(mu, v) -
         specfun::ln_gamma(1.0 + mu);
}

struct Window {
  double ln_peak;
  double upper;
};

// Scan a geometric grid for the integrand peak, then walk outward until the
// integrand is below the cutoff relative to that peak.
Window integration_window(long n, const SpectrumParams& p, const QuadratureConfig& cfg, MomentVariable variable) {
  const double ln_cut = std::log(cfg.abs_tol * cfg.cutoff_factor);
  double ln_peak = -std::numeric_limits<double>::infinity();
  double v = variable == MomentVariable::direct ? 1e-6 : 1e-3;
  for (int step = 0; step < 4000; ++step, v *= 1.05) {
    const double value = ln_integrand(n, p, variable, v);
    if (value > ln_peak) {
      ln_peak = value;
    } else if (value < ln_peak + ln_cut) {
      return {ln_peak, v};
    }
  }
  throw ConvergenceError("moment_check: integrand did not decay within the scan range");
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(cutoff_factor > 0.0))
    throw DomainError("QuadratureConfig: tolerances must be positive");
  if (max_intervals < 1) throw DomainError("QuadratureConfig: max_intervals must be >= 1");
}

double ln_density_rho(double action, const SpectrumParams& p) {
  require_positive_action(action, "density_rho");
  const double mu = p.mu();
  const double x = action * mu;
  return std::log(2.0 * mu) + 0.5 * mu * std::log(x) - specfun::ln_gamma(1.0 + mu) +
         specfun::ln_bessel_k(mu, 2.0 * std::sqrt(x));
}

double density_rho(double action, const SpectrumParams& p) { return std::exp(ln_density_rho(action, p)); }

double measure_k(double action, const SpectrumParams& p) {
  require_positive_action(action, "measure_k");
  const double mu = p.mu();
  const double z = 2.0 * std::sqrt(action * mu);
  // e^{-z} I and e^{z} K: the exponentials cancel in the product.
  return 2.0 * mu * std::exp(specfun::ln_bessel_i(mu, z) - z + specfun::ln_bessel_k_scaled(mu, z));
}

MomentReport moment_check(long n, const SpectrumParams& p, const QuadratureConfig& cfg, MomentVariable variable) {
  if (n < 0 || n > kMaxMomentOrder)
    throw DomainError("moment_check: n must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
  cfg.validate();
  const Window window = integration_window(n, p, cfg, variable);
  // Integrate the peak-normalised integrand so abs_tol is relative to its scale.
  const std::function<double(double)> f = [&](double v) {
    return std::exp(ln_integrand(n, p, variable, v) - window.ln_peak);
  };
  const quad::Result r = quad::integrate(f, 0.0, window.upper, cfg.abs_tol, cfg.rel_tol, cfg.max_intervals);

  MomentReport report;
  report.n = n;
  const double scale = std::exp(window.ln_peak);
  report.integral = r.value * scale;
  report.error_estimate = r.error * scale;
  report.rho_n = std::exp(ln_moment_rho(n, p));
  report.rel_err = std::abs(report.integral - report.rho_n) / report.rho_n;
  report.upper_limit = window.upper;
  return report;
}

std::vector<MomentReport> moment_table(long n_max, const SpectrumParams& p, const QuadratureConfig& cfg) {
  if (n_max < 0 || n_max > kMaxMomentOrder)
    throw DomainError("moment_table: n_max must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
  cfg.validate();
  std::vector<MomentReport> out(static_cast<std::size_t>(n_max + 1));
  // Exceptions must not cross the parallel region; record and rethrow.
  std::vector<std::string> failures(out.size());
#pragma omp parallel for schedule(dynamic)
  for (long n = 0; n <= n_max; ++n) {
    try {
      out[static_cast<std::size_t>(n)] = moment_check(n, p, cfg);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(n)] = e.what();
    }
  }
  for (const auto& msg : failures)
    if (!msg.empty()) throw ConvergenceError(msg);
  return out;
}

namespace serial {

std::vector<MomentReport> moment_table(long n_max, const SpectrumParams& p, const QuadratureConfig& cfg) {
  if (n_max < 0 || n_max > kMaxMomentOrder)
    throw DomainError("moment_table: n_max must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
  std::vector<MomentReport> out;
  for (long n = 0; n <= n_max; ++n) out.push_back(moment_check(n, p, cfg));
  return out;
}

}  // namespace serial
}  // namespace gkr
