#include "gkrevival/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "gkrevival/errors.hpp"
#include "gkrevival/specfun.hpp"

namespace gkr {

SpectrumParams::SpectrumParams(double alpha, double mu) : alpha_(alpha), mu_(mu) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("SpectrumParams: alpha must be finite and > 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("SpectrumParams: mu must be finite and > 0");
}

SpectrumParams SpectrumParams::from_deformation(double alpha, double lambda_scaled) {
  if (!(lambda_scaled != 0.0)) throw DomainError("SpectrumParams: Lambda must be nonzero");
  return SpectrumParams(alpha, 2.0 / std::abs(lambda_scaled));
}

bool SpectrumParams::mu_is_integer() const { return mu_ < 9.0e15 && std::floor(mu_) == mu_; }

double energy_level(long n, const SpectrumParams& p) {
  if (n < 0) throw DomainError("energy_level: n must be >= 0");
  const double nd = static_cast<double>(n);
  return nd * (nd + p.mu()) / p.mu();
}

double ln_moment_rho(long n, const SpectrumParams& p) {
  if (n < 0) throw DomainError("moment_rho: n must be >= 0");
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  const double mu = p.mu();
  return specfun::ln_gamma(nd + 1.0) + specfun::ln_gamma(nd + 1.0 + mu) - nd * std::log(mu) -
         specfun::ln_gamma(1.0 + mu);
}

double ln_moment_rho_product(long n, const SpectrumParams& p) {
  if (n < 0) throw DomainError("moment_rho: n must be >= 0");
  double acc = 0.0;
  for (long i = 1; i <= n; ++i) acc += std::log(energy_level(i, p));
  return acc;
}

double revival_time(const SpectrumParams& p) { return 2.0 * std::numbers::pi * p.mu() / p.alpha(); }

double classical_period(double n_bar, const SpectrumParams& p) {
  if (!(n_bar >= 0.0)) throw DomainError("classical_period: n_bar must be >= 0");
  return 2.0 * std::numbers::pi * p.mu() / (p.alpha() * (2.0 * n_bar + p.mu()));
}

TimeScales time_scales(double n_bar, const SpectrumParams& p) {
  return {classical_period(n_bar, p), revival_time(p)};
}

}  // namespace gkr
