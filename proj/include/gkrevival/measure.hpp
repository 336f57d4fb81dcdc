#pragma once

// Resolution of unity for the coherent states. With the angular integral done
// analytically (it removes every off-diagonal |n><m|), the identity
//   (1/2pi) int dgamma int dJ k(J) |J,gamma><J,gamma| = 1
// reduces to the moment problem  int_0^inf J^n rho(J) dJ = rho_n  for all n.
// This module evaluates rho(J), k(J) and those moment integrals.

#include <vector>

#include "gkrevival/spectrum.hpp"

namespace gkr {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  // The integration range ends once the integrand falls below
  // abs_tol * cutoff_factor relative to its peak.
  double cutoff_factor = 1e-3;
  int max_intervals = 4000;

  void validate() const;
};

enum class MomentVariable {
  substituted,  // u = 2 sqrt(J mu); integrand ~ u^{2n+mu+1} K_mu(u)
  direct,       // J itself
};

struct MomentReport {
  long n = 0;
  double integral = 0.0;
  double rho_n = 0.0;
  double rel_err = 0.0;
  double error_estimate = 0.0;
  double upper_limit = 0.0;  // in the integration variable
};

inline constexpr long kMaxMomentOrder = 20;

// rho(J) = 2 mu (J mu)^{mu/2} K_mu(2 sqrt(J mu)) / Gamma(1+mu); J > 0.
double density_rho(double action, const SpectrumParams& p);
double ln_density_rho(double action, const SpectrumParams& p);

// k(J) = 2 mu I_mu(z) K_mu(z), z = 2 sqrt(J mu); J > 0.
double measure_k(double action, const SpectrumParams& p);

// Numerically integrates int J^n rho(J) dJ and compares with rho_n.
// Requires 0 <= n <= kMaxMomentOrder.
MomentReport moment_check(long n, const SpectrumParams& p, const QuadratureConfig& cfg = {},
                          MomentVariable variable = MomentVariable::substituted);

// moment_check for n = 0..n_max, orders evaluated in parallel.
std::vector<MomentReport> moment_table(long n_max, const SpectrumParams& p, const QuadratureConfig& cfg = {});

namespace serial {
std::vector<MomentReport> moment_table(long n_max, const SpectrumParams& p, const QuadratureConfig& cfg = {});
}

}  // namespace gkr
