#include "gkrevival/gkstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gkrevival/errors.hpp"
#include "gkrevival/specfun.hpp"

namespace gkr {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_action(double action, const char* where) {
  if (!(action >= 0.0) || !std::isfinite(action))
    throw DomainError(std::string(where) + ": J must be finite and >= 0");
}

// Index of the largest term of sum_n x^n / (n! Gamma(n+1+mu)).
long peak_of(double x, double mu) {
  const double root = 0.5 * (std::sqrt(mu * mu + 4.0 * x) - mu);
  return static_cast<long>(std::floor(std::max(0.0, root)));
}

}  // namespace

double CoherentState::weight(long n) const {
  if (n < 0 || n > n_max()) return 0.0;
  return std::exp(ln_weights_[static_cast<std::size_t>(n)]);
}

std::vector<double> CoherentState::weights() const {
  std::vector<double> out(ln_weights_.size());
  std::transform(ln_weights_.begin(), ln_weights_.end(), out.begin(), [](double v) { return std::exp(v); });
  return out;
}

double ln_normalization_sq(double action, const SpectrumParams& p) {
  require_action(action, "normalization_sq");
  if (action == 0.0) return 0.0;
  const double mu = p.mu();
  const double x = action * mu;
  return specfun::ln_gamma(1.0 + mu) - 0.5 * mu * std::log(x) + specfun::ln_bessel_i(mu, 2.0 * std::sqrt(x));
}

CoherentState build_state(double action, double angle, const SpectrumParams& p, double tail_tol) {
  require_action(action, "build_state");
  if (!std::isfinite(angle)) throw DomainError("build_state: gamma must be finite");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) throw DomainError("build_state: tail_tol must lie in (0, 1e-6]");

  CoherentState s(action, angle, p, tail_tol);
  if (action == 0.0) {
    s.ln_weights_ = {0.0};
    return s;
  }

  const double mu = p.mu();
  const double x = action * mu;
  const double ln_x = std::log(x);
  const double ln_i = specfun::ln_bessel_i(mu, 2.0 * std::sqrt(x));
  s.ln_norm_sq_ = specfun::ln_gamma(1.0 + mu) - 0.5 * mu * ln_x + ln_i;

  const long peak = peak_of(x, mu);
  if (peak >= kMaxComponents) throw ConvergenceError("build_state: weight peak beyond the component cap");
  s.peak_ = peak;

  // Weights relative to the peak by the ratio |c_{n+1}|^2/|c_n|^2 =
  // x/((n+1)(n+1+mu)), rebasing into the log domain before the running
  // product underflows. Normalised at the end over the retained components.
  std::vector<double> below(static_cast<std::size_t>(peak));
  {
    double base = 0.0;
    double prod = 1.0;
    for (long n = peak; n >= 1; --n) {
      const double nd = static_cast<double>(n);
      prod *= nd * (nd + mu) / x;
      below[static_cast<std::size_t>(n - 1)] = base + std::log(prod);
      if (prod < 1e-200) {
        base = below[static_cast<std::size_t>(n - 1)];
        prod = 1.0;
      }
    }
  }

  std::vector<double> above{0.0};
  {
    const double ln_stop = std::log(tail_tol);
    double base = 0.0;
    double prod = 1.0;
    for (long n = peak;; ++n) {
      if (n + 1 >= kMaxComponents)
        throw ConvergenceError("build_state: tail not bounded within " + std::to_string(kMaxComponents) +
                               " components");
      const double nd = static_cast<double>(n);
      const double ratio = x / ((nd + 1.0) * (nd + 1.0 + mu));
      // Stop at n once the mass from n onward, at most w_n / (1 - r_n), is
      // below tail_tol. Since e_m w_m = J w_{m-1}, the energy omitted past n
      // is J times that same mass.
      if (ratio < 1.0 && base + std::log(prod) - std::log1p(-ratio) < ln_stop) break;
      const double ln_next = base + std::log(prod * ratio);
      prod *= ratio;
      above.push_back(ln_next);
      if (prod < 1e-200) {
        base = ln_next;
        prod = 1.0;
      }
    }
  }

  s.ln_weights_ = std::move(below);
  s.ln_weights_.insert(s.ln_weights_.end(), above.begin(), above.end());
  const double ln_total = specfun::log_sum_exp(s.ln_weights_);
  for (double& v : s.ln_weights_) v -= ln_total;
  return s;
}

CoherentState evolve(const CoherentState& s, double t) {
  if (!std::isfinite(t)) throw DomainError("evolve: t must be finite");
  CoherentState out = s;
  out.angle_ = s.angle_ + s.params_.alpha() * t;
  return out;
}

namespace {

double closed_mean_n(double action, double mu) {
  if (action == 0.0) return 0.0;
  const double root = std::sqrt(action * mu);
  return root * specfun::bessel_i_ratio(mu, 2.0 * root);
}

double closed_mandel_q(double action, double mu) {
  if (action == 0.0) throw DomainError("mandel_q: undefined at J = 0 (<n> = 0)");
  const double root = std::sqrt(action * mu);
  const double z = 2.0 * root;
  return root * (specfun::bessel_i_ratio(mu + 1.0, z) - specfun::bessel_i_ratio(mu, z));
}

void require_sweep(std::span<const double> actions) {
  for (double j : actions)
    if (!(j > 0.0) || !std::isfinite(j)) throw DomainError("photon_statistics_sweep: every J must be finite and > 0");
}

}  // namespace

double mean_n(const CoherentState& s) { return closed_mean_n(s.action(), s.params().mu()); }

double mandel_q(const CoherentState& s) { return closed_mandel_q(s.action(), s.params().mu()); }

std::vector<PhotonStatistics> photon_statistics_sweep(std::span<const double> actions, const SpectrumParams& p) {
  require_sweep(actions);
  std::vector<PhotonStatistics> out(actions.size());
  const double mu = p.mu();
  const auto count = static_cast<long>(actions.size());
  bool failed = false;
#pragma omp parallel for schedule(static) reduction(|| : failed)
  for (long i = 0; i < count; ++i) {
    const double j = actions[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = {j, closed_mean_n(j, mu), closed_mandel_q(j, mu)};
    } catch (const ConvergenceError&) {
      failed = true;
    }
  }
  if (failed) throw ConvergenceError("photon_statistics_sweep: Bessel ratio did not converge");
  return out;
}

namespace serial {

std::vector<PhotonStatistics> photon_statistics_sweep(std::span<const double> actions, const SpectrumParams& p) {
  require_sweep(actions);
  std::vector<PhotonStatistics> out;
  for (double j : actions) {
    const CoherentState s = build_state(j, 0.0, p);
    out.push_back({j, mean_n(s), mandel_q(s)});
  }
  return out;
}

}  // namespace serial

double mean_energy(const CoherentState& s) {
  double acc = 0.0;
  for (long n = 0; n <= s.n_max(); ++n) acc += s.weight(n) * energy_level(n, s.params());
  return acc;
}

std::complex<double> overlap(const CoherentState& bra, const CoherentState& ket) {
  if (!(bra.params() == ket.params())) throw DomainError("overlap: states were built with different SpectrumParams");
  const double dgamma = bra.angle() - ket.angle();
  const long top = std::min(bra.n_max(), ket.n_max());
  std::complex<double> acc{0.0, 0.0};
  for (long n = 0; n <= top; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double amp = std::exp(0.5 * (bra.ln_weights()[i] + ket.ln_weights()[i]));
    acc += std::polar(amp, dgamma * energy_level(n, bra.params()));
  }
  return acc;
}

double overlap_same_angle(double action1, double action2, const SpectrumParams& p) {
  require_action(action1, "overlap_same_angle");
  require_action(action2, "overlap_same_angle");
  if (action1 == 0.0 && action2 == 0.0) return 1.0;
  // <0|J> is the n = 0 amplitude, 1/N(J).
  if (action1 == 0.0) return std::exp(-0.5 * ln_normalization_sq(action2, p));
  if (action2 == 0.0) return std::exp(-0.5 * ln_normalization_sq(action1, p));
  const double mu = p.mu();
  const double z1 = 2.0 * std::sqrt(action1 * mu);
  const double z2 = 2.0 * std::sqrt(action2 * mu);
  const double z12 = 2.0 * std::sqrt(mu) * std::pow(action1 * action2, 0.25);
  return std::exp(specfun::ln_bessel_i(mu, z12) -
                  0.5 * (specfun::ln_bessel_i(mu, z1) + specfun::ln_bessel_i(mu, z2)));
}

namespace series {
namespace {

// ln sum_n exp(ln_term(n)) for a unimodal term sequence; stops once terms fall
// 40 e-folds below the running maximum past the peak.
template <class Term>
double ln_sum_unimodal(Term&& ln_term) {
  std::vector<double> terms;
  double best = kNegInf;
  for (long n = 0; n < kMaxComponents; ++n) {
    const double v = ln_term(n);
    terms.push_back(v);
    if (v > best) {
      best = v;
    } else if (v < best - 40.0) {
      return specfun::log_sum_exp(terms);
    }
  }
  throw ConvergenceError("series: did not converge within the component cap");
}

}  // namespace

double ln_normalization_sq(double action, const SpectrumParams& p) {
  require_action(action, "series::normalization_sq");
  if (action == 0.0) return 0.0;
  const double ln_j = std::log(action);
  // rho_n built up one factor e_n at a time; terms are requested in order.
  double ln_rho = 0.0;
  return ln_sum_unimodal([&](long n) {
    if (n > 0) ln_rho += std::log(energy_level(n, p));
    return static_cast<double>(n) * ln_j - ln_rho;
  });
}

double mean_n(const CoherentState& s) {
  double total = 0.0;
  double first = 0.0;
  for (long n = 0; n <= s.n_max(); ++n) {
    const double w = s.weight(n);
    total += w;
    first += static_cast<double>(n) * w;
  }
  return first / total;
}

double mandel_q(const CoherentState& s) {
  if (s.action() == 0.0) throw DomainError("mandel_q: undefined at J = 0 (<n> = 0)");
  const double mean = series::mean_n(s);
  double total = 0.0;
  double central = 0.0;
  for (long n = 0; n <= s.n_max(); ++n) {
    const double w = s.weight(n);
    const double d = static_cast<double>(n) - mean;
    total += w;
    central += d * d * w;
  }
  return central / total / mean - 1.0;
}

double overlap_same_angle(double action1, double action2, const SpectrumParams& p) {
  require_action(action1, "series::overlap_same_angle");
  require_action(action2, "series::overlap_same_angle");
  const double mu = p.mu();
  const double ln_n1 = series::ln_normalization_sq(action1, p);
  const double ln_n2 = series::ln_normalization_sq(action2, p);
  if (action1 == 0.0 || action2 == 0.0) return std::exp(-0.5 * (ln_n1 + ln_n2));
  const double ln_base = 0.5 * std::log(action1 * action2 * mu * mu);
  const double ln_sum = ln_sum_unimodal([&](long n) {
    const double nd = static_cast<double>(n);
    return nd * ln_base - specfun::ln_gamma(nd + 1.0) - specfun::ln_gamma(nd + 1.0 + mu);
  });
  return std::exp(specfun::ln_gamma(mu + 1.0) - 0.5 * (ln_n1 + ln_n2) + ln_sum);
}

}  // namespace series
}  // namespace gkr
