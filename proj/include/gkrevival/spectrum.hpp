#pragma once

// Energy ladder of the nonlinear oscillator (lambda < 0 branch) shifted by
// the ground-state energy:  E_n = hbar alpha n (n + mu) / mu,  mu = 2/|Lambda|.
// Units: hbar = 1; energies are returned in units of hbar*alpha.

namespace gkr {

class SpectrumParams {
 public:
  // Throws DomainError unless alpha > 0 and mu > 0 (both finite).
  SpectrumParams(double alpha, double mu);
  static SpectrumParams from_deformation(double alpha, double lambda_scaled);

  double alpha() const { return alpha_; }
  double mu() const { return mu_; }
  // |Lambda| = 2 / mu.
  double deformation() const { return 2.0 / mu_; }
  bool mu_is_integer() const;

  friend bool operator==(const SpectrumParams&, const SpectrumParams&) = default;

 private:
  double alpha_;
  double mu_;
};

struct TimeScales {
  double t_classical;
  double t_revival;
};

// e_n = n (n + mu) / mu.
double energy_level(long n, const SpectrumParams& p);

// ln rho_n where rho_n = prod_{i=1..n} e_i, via the Gamma form
// Gamma(n+1) Gamma(n+1+mu) / (mu^n Gamma(1+mu)).
double ln_moment_rho(long n, const SpectrumParams& p);

// Same quantity by accumulating ln e_i term by term. O(n); kept as the
// product-form cross-check.
double ln_moment_rho_product(long n, const SpectrumParams& p);

// t_rev = 2 pi mu / alpha.
double revival_time(const SpectrumParams& p);

// T_cl = 2 pi / |dE/dn| at n_bar = 2 pi mu / (alpha (2 n_bar + mu)).
double classical_period(double n_bar, const SpectrumParams& p);

TimeScales time_scales(double n_bar, const SpectrumParams& p);

}  // namespace gkr
