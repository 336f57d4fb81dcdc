#pragma once

// Gazeau-Klauder coherent states |J, gamma> of the nonlinear oscillator.
//
//   |J,gamma> = N(J)^{-1} sum_n J^{n/2} e^{-i gamma e_n} / sqrt(rho_n) |n>
//
// A CoherentState keeps only ln|c_n|^2 (truncated at n_max); the phases
// e^{-i gamma e_n} are synthesised on demand.

#include <complex>
#include <span>
#include <vector>

#include "gkrevival/spectrum.hpp"

namespace gkr {

inline constexpr double kDefaultTailTol = 1e-14;

// Hard cap on the number of retained components.
inline constexpr long kMaxComponents = 1'000'000;

class CoherentState {
 public:
  double action() const { return action_; }
  double angle() const { return angle_; }
  const SpectrumParams& params() const { return params_; }
  long n_max() const { return static_cast<long>(ln_weights_.size()) - 1; }
  long peak_index() const { return peak_; }
  double tail_tol() const { return tail_tol_; }

  // ln|c_n|^2 for n = 0..n_max.
  std::span<const double> ln_weights() const { return ln_weights_; }
  // ln N(J)^2 from the Bessel closed form.
  double ln_norm_sq() const { return ln_norm_sq_; }

  // |c_n|^2; zero past n_max.
  double weight(long n) const;
  std::vector<double> weights() const;

 private:
  friend CoherentState build_state(double, double, const SpectrumParams&, double);
  friend CoherentState evolve(const CoherentState&, double);

  CoherentState(double action, double angle, SpectrumParams params, double tail_tol)
      : action_(action), angle_(angle), params_(params), tail_tol_(tail_tol) {}

  double action_;
  double angle_;
  SpectrumParams params_;
  double tail_tol_;
  long peak_ = 0;
  std::vector<double> ln_weights_;
  double ln_norm_sq_ = 0.0;
};

// Weights follow |c_n|^2 = (J mu)^{n + mu/2} / (n! Gamma(n+1+mu) I_mu(2 sqrt(J mu))).
// Truncation keeps every n up to the first index n_max past the peak at which
// the geometric bound on the mass from n_max onward falls below tail_tol
// times the peak weight; the kept
// weights are normalised over themselves, so they exceed the untruncated
// values by a relative amount below tail_tol.
// Throws DomainError for J < 0 or tail_tol outside (0, 1e-6];
// ConvergenceError if more than kMaxComponents would be needed.
CoherentState build_state(double action, double angle, const SpectrumParams& p,
                          double tail_tol = kDefaultTailTol);

// e^{-i H t}|J,gamma> = |J, gamma + alpha t>. Time is physical (not t_rev units).
CoherentState evolve(const CoherentState& s, double t);

// ln N(J)^2 = ln[ Gamma(1+mu) (J mu)^{-mu/2} I_mu(2 sqrt(J mu)) ].
double ln_normalization_sq(double action, const SpectrumParams& p);

// <n> = sqrt(J mu) I_{mu+1}/I_mu.
double mean_n(const CoherentState& s);

// Q = sqrt(J mu) [I_{mu+2}/I_{mu+1} - I_{mu+1}/I_mu]. DomainError at J == 0.
double mandel_q(const CoherentState& s);

// <H> in units of hbar alpha; equals J up to truncation.
double mean_energy(const CoherentState& s);

// <bra|ket>. DomainError if the two states were built with different params.
std::complex<double> overlap(const CoherentState& bra, const CoherentState& ket);

// <J2,gamma|J1,gamma> from the Bessel form; independent of gamma.
double overlap_same_angle(double action1, double action2, const SpectrumParams& p);

struct PhotonStatistics {
  double action;
  double mean_n;
  double mandel_q;
};

// <n> and Q from the Bessel closed forms at each J > 0, evaluated in parallel.
std::vector<PhotonStatistics> photon_statistics_sweep(std::span<const double> actions, const SpectrumParams& p);

namespace serial {
std::vector<PhotonStatistics> photon_statistics_sweep(std::span<const double> actions, const SpectrumParams& p);
}

// Defining-series forms of the Bessel closed forms above. These sum the
// truncated expansion directly and serve as the reference side of the
// closed-form/series duality checks.
namespace series {

// ln sum_n J^n / rho_n, summed until terms drop below 1e-17 of the total.
double ln_normalization_sq(double action, const SpectrumParams& p);
// sum n |c_n|^2 / sum |c_n|^2.
double mean_n(const CoherentState& s);
// (<n^2> - <n>^2)/<n> - 1 from the stored weights.
double mandel_q(const CoherentState& s);
// Gamma(mu+1)/(N N') sum (J J' mu^2)^{n/2} / (n! Gamma(n+1+mu)) at equal angles.
double overlap_same_angle(double action1, double action2, const SpectrumParams& p);

}  // namespace series

}  // namespace gkr
