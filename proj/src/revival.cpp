#include "gkrevival/revival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gkrevival/errors.hpp"

namespace gkr {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// frac(a * t) with the rounding error of the product carried separately.
inline double frac_product(double a, double t) {
  const double p = a * t;
  const double e = std::fma(a, t, -p);
  return (p - std::floor(p)) + e;
}

inline double wrap_unit(double v) {
  v -= std::floor(v);
  return v >= 1.0 ? 0.0 : v;
}

// mu n + n^2 split as n_sq + mu_n_hi + mu_n_lo, each part exact.
struct PhaseTerms {
  double n_sq;
  double mu_n_hi;
  double mu_n_lo;
};

inline PhaseTerms phase_terms(long n, double mu) {
  const double nd = static_cast<double>(n);
  const double hi = mu * nd;
  return {nd * nd, hi, std::fma(mu, nd, -hi)};
}

inline double turns_of(const PhaseTerms& pt, double t) {
  return wrap_unit(frac_product(pt.n_sq, t) + frac_product(pt.mu_n_hi, t) + pt.mu_n_lo * t);
}

inline std::complex<double> rotor(double turns) {
  const double angle = -kTwoPi * turns;
  return {std::cos(angle), std::sin(angle)};
}

void require_order(int q, const char* where) {
  if (q < 2) throw DomainError(std::string(where) + ": revival order q must be >= 2");
}

void require_residue(int q, int delta, const char* where) {
  require_order(q, where);
  if (delta < 0 || delta >= q) throw DomainError(std::string(where) + ": delta must lie in [0, q)");
}

// Flattened per-component data for the grid kernels.
struct ComponentTable {
  std::vector<double> weight;
  std::vector<PhaseTerms> terms;

  explicit ComponentTable(const CoherentState& s) {
    const auto count = static_cast<std::size_t>(s.n_max() + 1);
    weight = s.weights();
    terms.reserve(count);
    for (std::size_t n = 0; n < count; ++n) terms.push_back(phase_terms(static_cast<long>(n), s.params().mu()));
  }

  std::size_t size() const { return weight.size(); }
};

std::complex<double> table_autocorrelation(const ComponentTable& tab, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = 0; n < tab.size(); ++n) acc += tab.weight[n] * rotor(turns_of(tab.terms[n], t));
  return acc;
}

std::complex<double> table_fraction(const ComponentTable& tab, int q, int delta, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = static_cast<std::size_t>(delta); n < tab.size(); n += static_cast<std::size_t>(q))
    acc += tab.weight[n] * rotor(turns_of(tab.terms[n], t));
  return acc;
}

SurvivalIntensity combine(std::complex<double> a, std::span<const std::complex<double>> fractions) {
  SurvivalIntensity out;
  out.abs2 = std::norm(a);
  std::complex<double> cross{0.0, 0.0};
  for (std::size_t d = 0; d < fractions.size(); ++d) {
    out.diagonal += std::norm(fractions[d]);
    for (std::size_t g = 0; g < fractions.size(); ++g)
      if (g != d) cross += fractions[d] * std::conj(fractions[g]);
  }
  out.interference = cross.real();
  out.interference_imag = cross.imag();
  return out;
}

}  // namespace

std::vector<double> make_time_grid(double t_max, int points) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("time grid: t_max must be finite and > 0");
  if (points < 2) throw DomainError("time grid: points must be >= 2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double denom = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / denom;
  return grid;
}

void validate_time_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw DomainError("time grid: empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i])) throw DomainError("time grid: non-finite sample");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid: not strictly increasing");
  }
}

double phase(long n, double t, double mu) {
  if (n < 0) throw DomainError("phase: n must be >= 0");
  const double nd = static_cast<double>(n);
  return kTwoPi * (mu * nd + nd * nd) * t;
}

double phase_turns(long n, double t, double mu) {
  if (n < 0) throw DomainError("phase: n must be >= 0");
  return turns_of(phase_terms(n, mu), t);
}

double phase_reduced(long n, double t, double mu) { return kTwoPi * phase_turns(n, t, mu); }

std::complex<double> autocorrelation(const CoherentState& s, double t) {
  const double mu = s.params().mu();
  std::complex<double> acc{0.0, 0.0};
  for (long n = 0; n <= s.n_max(); ++n) acc += s.weight(n) * rotor(phase_turns(n, t, mu));
  return acc;
}

std::complex<double> survival_fraction(const CoherentState& s, int q, int delta, double t) {
  require_residue(q, delta, "survival_fraction");
  const double mu = s.params().mu();
  std::complex<double> acc{0.0, 0.0};
  for (long n = delta; n <= s.n_max(); n += q) acc += s.weight(n) * rotor(phase_turns(n, t, mu));
  return acc;
}

double residue_mass(const CoherentState& s, int q, int delta) {
  require_residue(q, delta, "residue_mass");
  double acc = 0.0;
  for (long n = delta; n <= s.n_max(); n += q) acc += s.weight(n);
  return acc;
}

SurvivalIntensity survival_intensity(const CoherentState& s, int q, double t) {
  require_order(q, "survival_intensity");
  std::vector<std::complex<double>> fractions(static_cast<std::size_t>(q));
  for (int d = 0; d < q; ++d) fractions[static_cast<std::size_t>(d)] = survival_fraction(s, q, d, t);
  return combine(autocorrelation(s, t), fractions);
}

double diagonal_term(const CoherentState& s, int q, double t) { return survival_intensity(s, q, t).diagonal; }

double interference_term(const CoherentState& s, int q, double t) {
  return survival_intensity(s, q, t).interference;
}

PhaseGroupReport phase_group_check(int q, double mu, long k_max) {
  require_order(q, "phase_group_check");
  if (!(mu > 0.0) || std::floor(mu) != mu || mu > 1e9)
    throw DomainError("phase_group_check: phase grouping requires a positive integer mu");
  if (k_max < 1) throw DomainError("phase_group_check: k_max must be >= 1");

  PhaseGroupReport report;
  report.q = q;
  report.mu = static_cast<long>(mu);
  report.k_max = k_max;
  const double t = 1.0 / static_cast<double>(q);
  for (long d = 0; d < q; ++d) {
    const long residue = (report.mu * d + d * d) % q;
    const double expected = kTwoPi * static_cast<double>(residue) / static_cast<double>(q);
    double lo = 0.0;
    double hi = 0.0;
    for (long k = 0; k <= k_max; ++k) {
      const double observed = phase_reduced(k * q + d, t, mu);
      // Signed circular offset from the expected group phase.
      const double offset = std::remainder(observed - expected, kTwoPi);
      lo = k == 0 ? offset : std::min(lo, offset);
      hi = k == 0 ? offset : std::max(hi, offset);
      report.max_deviation = std::max(report.max_deviation, std::abs(offset));
    }
    report.group_phase.push_back(expected);
    report.spread.push_back(hi - lo);
  }
  return report;
}

ComplexTimeSeries autocorrelation_samples(const CoherentState& s, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  const ComponentTable tab(s);
  ComplexTimeSeries out{"A", {t_grid.begin(), t_grid.end()}, std::vector<std::complex<double>>(t_grid.size())};
  const auto count = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out.values[i] = table_autocorrelation(tab, t_grid[i]);
  return out;
}

TimeSeries autocorrelation_series(const CoherentState& s, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  const ComponentTable tab(s);
  TimeSeries out{"abs2", {t_grid.begin(), t_grid.end()}, std::vector<double>(t_grid.size())};
  const auto count = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out.values[i] = std::norm(table_autocorrelation(tab, t_grid[i]));
  return out;
}

TimeSeries survival_fraction_series(const CoherentState& s, int q, int delta, std::span<const double> t_grid) {
  require_residue(q, delta, "survival_fraction_series");
  validate_time_grid(t_grid);
  const ComponentTable tab(s);
  TimeSeries out{"P" + std::to_string(delta) + "_abs2", {t_grid.begin(), t_grid.end()},
                 std::vector<double>(t_grid.size())};
  const auto count = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) out.values[i] = std::norm(table_fraction(tab, q, delta, t_grid[i]));
  return out;
}

FractionalDecomposition fractional_decomposition(const CoherentState& s, int q, std::span<const double> t_grid) {
  require_order(q, "fractional_decomposition");
  validate_time_grid(t_grid);
  const ComponentTable tab(s);
  FractionalDecomposition out;
  out.q = q;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.fractions.assign(static_cast<std::size_t>(q), std::vector<std::complex<double>>(t_grid.size()));
  const auto count = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i)
    for (int d = 0; d < q; ++d) out.fractions[static_cast<std::size_t>(d)][i] = table_fraction(tab, q, d, t_grid[i]);
  return out;
}

std::vector<SurvivalIntensity> survival_intensity_series(const CoherentState& s, int q,
                                                         std::span<const double> t_grid) {
  require_order(q, "survival_intensity_series");
  validate_time_grid(t_grid);
  const ComponentTable tab(s);
  std::vector<SurvivalIntensity> out(t_grid.size());
  const auto count = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    std::vector<std::complex<double>> fractions(static_cast<std::size_t>(q));
    for (int d = 0; d < q; ++d) fractions[static_cast<std::size_t>(d)] = table_fraction(tab, q, d, t_grid[i]);
    out[i] = combine(table_autocorrelation(tab, t_grid[i]), fractions);
  }
  return out;
}

namespace serial {

ComplexTimeSeries autocorrelation_samples(const CoherentState& s, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  ComplexTimeSeries out{"A", {t_grid.begin(), t_grid.end()}, {}};
  for (double t : t_grid) out.values.push_back(autocorrelation(s, t));
  return out;
}

TimeSeries autocorrelation_series(const CoherentState& s, std::span<const double> t_grid) {
  validate_time_grid(t_grid);
  TimeSeries out{"abs2", {t_grid.begin(), t_grid.end()}, {}};
  for (double t : t_grid) out.values.push_back(std::norm(autocorrelation(s, t)));
  return out;
}

TimeSeries survival_fraction_series(const CoherentState& s, int q, int delta, std::span<const double> t_grid) {
  require_residue(q, delta, "survival_fraction_series");
  validate_time_grid(t_grid);
  TimeSeries out{"P" + std::to_string(delta) + "_abs2", {t_grid.begin(), t_grid.end()}, {}};
  for (double t : t_grid) out.values.push_back(std::norm(survival_fraction(s, q, delta, t)));
  return out;
}

FractionalDecomposition fractional_decomposition(const CoherentState& s, int q, std::span<const double> t_grid) {
  require_order(q, "fractional_decomposition");
  validate_time_grid(t_grid);
  FractionalDecomposition out;
  out.q = q;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.fractions.resize(static_cast<std::size_t>(q));
  for (int d = 0; d < q; ++d)
    for (double t : t_grid) out.fractions[static_cast<std::size_t>(d)].push_back(survival_fraction(s, q, d, t));
  return out;
}

std::vector<SurvivalIntensity> survival_intensity_series(const CoherentState& s, int q,
                                                         std::span<const double> t_grid) {
  require_order(q, "survival_intensity_series");
  validate_time_grid(t_grid);
  std::vector<SurvivalIntensity> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(survival_intensity(s, q, t));
  return out;
}

}  // namespace serial
}  // namespace gkr
