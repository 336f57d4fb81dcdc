#pragma once

// Revival analysis of a coherent state: autocorrelation, packet fractions
// P_Delta(t) for revival order q, and the diagonal / interference split of the
// survival intensity |A(t)|^2.
//
// Time arguments in this header are dimensionless, in units of the revival
// time t_rev = 2 pi mu / alpha, so the n-th component carries the phase
//   phi_n(t) = 2 pi (mu n + n^2) t.
//
// The *_series functions evaluate grid points in parallel (OpenMP). Each
// sample is computed independently, so results do not depend on the thread
// count. gkr::serial holds the single-threaded reference versions.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "gkrevival/gkstate.hpp"

namespace gkr {

struct TimeSeries {
  std::string label;
  std::vector<double> t_grid;
  std::vector<double> values;
};

struct ComplexTimeSeries {
  std::string label;
  std::vector<double> t_grid;
  std::vector<std::complex<double>> values;
};

// fractions[delta][i] = P_delta(t_grid[i]).
struct FractionalDecomposition {
  int q = 0;
  std::vector<double> t_grid;
  std::vector<std::vector<std::complex<double>>> fractions;
};

struct SurvivalIntensity {
  double abs2 = 0.0;          // |A(t)|^2
  double diagonal = 0.0;      // sum_D |P_D|^2
  double interference = 0.0;  // Re sum_D sum_{G != D} P_D conj(P_G)
  double interference_imag = 0.0;
};

struct PhaseGroupReport {
  int q = 0;
  long mu = 0;
  long k_max = 0;
  std::vector<double> group_phase;  // 2 pi (mu D + D^2)/q mod 2 pi, per D
  std::vector<double> spread;       // max - min of observed phases within group D
  double max_deviation = 0.0;       // worst |observed - group_phase| (circular)
};

// Uniform grid t_i = t_max * i / (points - 1). Requires t_max > 0, points >= 2.
std::vector<double> make_time_grid(double t_max, int points);
// Throws DomainError unless the grid is non-empty and strictly increasing.
void validate_time_grid(std::span<const double> t_grid);

// phi_n(t) = 2 pi (mu n + n^2) t, unreduced.
double phase(long n, double t, double mu);
// phi_n(t) / 2 pi reduced to [0, 1). The products are split with fma so the
// fractional part survives for large mu n + n^2.
double phase_turns(long n, double t, double mu);
// phi_n(t) reduced to [0, 2 pi).
double phase_reduced(long n, double t, double mu);

// A(t) = sum_n |c_n|^2 e^{-i phi_n(t)}. Independent of the state's angle.
std::complex<double> autocorrelation(const CoherentState& s, double t);

// P_delta(t) = sum_k |c_{kq+delta}|^2 e^{-i phi_{kq+delta}(t)}.
std::complex<double> survival_fraction(const CoherentState& s, int q, int delta, double t);

// sum_k |c_{kq+delta}|^2, the modulus of P_delta at t = 0 and t = 1/q.
double residue_mass(const CoherentState& s, int q, int delta);

SurvivalIntensity survival_intensity(const CoherentState& s, int q, double t);
double diagonal_term(const CoherentState& s, int q, double t);
double interference_term(const CoherentState& s, int q, double t);

// Checks that at t = 1/q the phases of n = kq + D (k <= k_max) collapse to
// 2 pi (mu D + D^2)/q mod 2 pi. Requires integer mu; DomainError otherwise.
PhaseGroupReport phase_group_check(int q, double mu, long k_max);

ComplexTimeSeries autocorrelation_samples(const CoherentState& s, std::span<const double> t_grid);
// |A(t)|^2.
TimeSeries autocorrelation_series(const CoherentState& s, std::span<const double> t_grid);
// |P_delta(t)|^2.
TimeSeries survival_fraction_series(const CoherentState& s, int q, int delta, std::span<const double> t_grid);
FractionalDecomposition fractional_decomposition(const CoherentState& s, int q, std::span<const double> t_grid);
std::vector<SurvivalIntensity> survival_intensity_series(const CoherentState& s, int q,
                                                         std::span<const double> t_grid);

namespace serial {

ComplexTimeSeries autocorrelation_samples(const CoherentState& s, std::span<const double> t_grid);
TimeSeries autocorrelation_series(const CoherentState& s, std::span<const double> t_grid);
TimeSeries survival_fraction_series(const CoherentState& s, int q, int delta, std::span<const double> t_grid);
FractionalDecomposition fractional_decomposition(const CoherentState& s, int q, std::span<const double> t_grid);
std::vector<SurvivalIntensity> survival_intensity_series(const CoherentState& s, int q,
                                                         std::span<const double> t_grid);

}  // namespace serial
}  // namespace gkr
