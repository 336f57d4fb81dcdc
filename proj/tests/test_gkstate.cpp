#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gkrevival/errors.hpp"
#include "gkrevival/gkstate.hpp"
#include "gkrevival/specfun.hpp"

using gkr::SpectrumParams;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double weight_sum(const gkr::CoherentState& s) {
  double acc = 0.0;
  for (double w : s.weights()) acc += w;
  return acc;
}

}  // namespace

TEST_CASE("J = 0 is the ground state") {
  const auto s = gkr::build_state(0.0, 0.3, SpectrumParams(1.0, 28.0));
  CHECK(s.n_max() == 0);
  CHECK(s.weight(0) == 1.0);
  CHECK(s.weight(1) == 0.0);
  CHECK(gkr::mean_n(s) == 0.0);
  CHECK(gkr::mean_energy(s) == 0.0);
  CHECK(gkr::ln_normalization_sq(0.0, s.params()) == 0.0);
  CHECK_THROWS_AS(gkr::mandel_q(s), gkr::DomainError);
}

TEST_CASE("build_state argument checks") {
  const SpectrumParams p(1.0, 2.0);
  CHECK_THROWS_AS(gkr::build_state(-1.0, 0.0, p), gkr::DomainError);
  CHECK_THROWS_AS(gkr::build_state(1.0, 0.0, p, 0.0), gkr::DomainError);
  CHECK_THROWS_AS(gkr::build_state(1.0, 0.0, p, 1e-3), gkr::DomainError);
  CHECK_THROWS_AS(gkr::build_state(1.0, INFINITY, p), gkr::DomainError);
  // Peak beyond the component cap.
  CHECK_THROWS_AS(gkr::build_state(1e13, 0.0, SpectrumParams(1.0, 1.0)), gkr::ConvergenceError);
}

TEST_CASE("normalization and truncation over a grid") {
  for (double j : {0.1, 1.0, 10.0, 100.0})
    for (double mu : {0.5, 1.0, 28.0, 80.0}) {
      const auto s = gkr::build_state(j, 0.0, SpectrumParams(1.0, mu));
      const double total = weight_sum(s);
      CHECK(total >= 1.0 - s.tail_tol());
      CHECK(total <= 1.0 + 1e-12);
      CHECK(s.n_max() > s.peak_index());
      // First omitted weight is below tail_tol times the peak weight.
      const double w_peak = s.weight(s.peak_index());
      const double n = static_cast<double>(s.n_max());
      const double omitted = s.weight(s.n_max()) * j * mu / ((n + 1.0) * (n + 1.0 + mu));
      CHECK(omitted < s.tail_tol() * w_peak);
    }
}

TEST_CASE("weights are unimodal and follow the ratio law") {
  for (double mu : {1.0, 28.0, 80.0}) {
    const SpectrumParams p(1.0, mu);
    const double j = 10.0;
    const auto s = gkr::build_state(j, 0.0, p);
    int turns = 0;
    for (long n = 0; n < s.n_max(); ++n) {
      const double ratio = s.weight(n + 1) / s.weight(n);
      CHECK(rel(ratio, j * mu / ((n + 1.0) * (n + 1.0 + mu))) < 1e-12);
      if (n > 0 && (s.weight(n) - s.weight(n - 1)) * (s.weight(n + 1) - s.weight(n)) < 0.0) ++turns;
    }
    CHECK(turns == 1);
    // Peak sits below <n> + 1.
    CHECK(static_cast<double>(s.peak_index()) < gkr::mean_n(s) + 1.0);
  }
}

TEST_CASE("weights match the closed-form expression") {
  const SpectrumParams p(1.0, 28.0);
  const auto s = gkr::build_state(10.0, 0.0, p);
  const double x = 280.0;
  const double ln_i = gkr::specfun::ln_bessel_i(28.0, 2.0 * std::sqrt(x));
  REQUIRE(s.n_max() >= 30);
  for (long n : {0L, 3L, 9L, 20L, 30L}) {
    const double nd = static_cast<double>(n);
    const double ln_w = (nd + 14.0) * std::log(x) - std::lgamma(nd + 1.0) - std::lgamma(nd + 29.0) - ln_i;
    CHECK(std::abs(s.ln_weights()[static_cast<std::size_t>(n)] - ln_w) < 1e-12);
  }
  CHECK(s.weight(-1) == 0.0);
  CHECK(s.weight(s.n_max() + 1) == 0.0);
}

TEST_CASE("normalization: Bessel form vs 60-term series oracle") {
  // J = 1, mu = 2: sum_n J^n / rho_n with rho_n = prod i(i+2)/2.
  long double series = 0.0L;
  long double rho = 1.0L;
  for (int n = 0; n < 60; ++n) {
    if (n > 0) rho *= static_cast<long double>(n) * (n + 2) / 2.0L;
    series += 1.0L / rho;
  }
  const double closed = gkr::ln_normalization_sq(1.0, SpectrumParams(1.0, 2.0));
  CHECK(rel(std::exp(closed), static_cast<double>(series)) < 1e-11);
  CHECK(rel(gkr::series::ln_normalization_sq(1.0, SpectrumParams(1.0, 2.0)), static_cast<double>(std::log(series))) <
        1e-12);

  const SpectrumParams p80(1.0, 80.0);
  CHECK(std::abs(gkr::ln_normalization_sq(10.0, p80) - gkr::series::ln_normalization_sq(10.0, p80)) < 1e-10);
}

TEST_CASE("closed-form / series duality") {
  for (double j : {0.1, 1.0, 10.0, 37.0})
    for (double mu : {0.5, 1.0, 28.0, 80.0}) {
      const SpectrumParams p(1.0, mu);
      const auto s = gkr::build_state(j, 0.0, p);
      CAPTURE(j);
      CAPTURE(mu);
      CHECK(rel(std::exp(gkr::ln_normalization_sq(j, p)), std::exp(gkr::series::ln_normalization_sq(j, p))) < 1e-9);
      CHECK(rel(gkr::mean_n(s), gkr::series::mean_n(s)) < 1e-9);
      CHECK(rel(gkr::mandel_q(s), gkr::series::mandel_q(s)) < 1e-9);
      CHECK(rel(gkr::overlap_same_angle(j, 2.0 * j, p), gkr::series::overlap_same_angle(j, 2.0 * j, p)) < 1e-9);
    }
}

TEST_CASE("<n> bounds") {
  for (double j : {0.01, 1.0, 10.0, 50.0}) {
    const auto s = gkr::build_state(j, 0.0, SpectrumParams(1.0, 2.0));
    CHECK(gkr::mean_n(s) > 0.0);
    CHECK(gkr::mean_n(s) < std::sqrt(2.0 * j));
  }
}

TEST_CASE("Mandel Q: sub-Poissonian and small-J limit") {
  for (double mu : {1.0, 2.0, 28.0, 80.0}) {
    const SpectrumParams p(1.0, mu);
    for (double j = 0.25; j <= 50.0; j += 0.25) CHECK(gkr::mandel_q(gkr::build_state(j, 0.0, p)) < 0.0);
    // Two-term expansion of the moment sums: Q ~ -J mu / ((mu+1)(mu+2)).
    const double j = 1e-6;
    const double want = -j * mu / ((mu + 1.0) * (mu + 2.0));
    CHECK(rel(gkr::mandel_q(gkr::build_state(j, 0.0, p)), want) < 1e-4);
  }
}

TEST_CASE("photon statistics sweep matches per-state observables") {
  const SpectrumParams p(1.0, 28.0);
  std::vector<double> js;
  for (int i = 1; i <= 40; ++i) js.push_back(0.5 * i);
  const auto fast = gkr::photon_statistics_sweep(js, p);
  const auto ref = gkr::serial::photon_statistics_sweep(js, p);
  REQUIRE(fast.size() == ref.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i].action == ref[i].action);
    CHECK(fast[i].mean_n == ref[i].mean_n);
    CHECK(fast[i].mandel_q == ref[i].mandel_q);
  }
  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(gkr::photon_statistics_sweep(bad, p), gkr::DomainError);
}

TEST_CASE("action identity <H> = J") {
  for (double j : {0.1, 1.0, 10.0, 100.0})
    for (double mu : {0.5, 1.0, 28.0, 80.0}) {
      const auto s = gkr::build_state(j, 0.0, SpectrumParams(1.0, mu));
      CHECK(std::abs(gkr::mean_energy(s) - j) < 10.0 * s.tail_tol() * std::max(1.0, j));
    }
  CHECK(gkr::mean_energy(gkr::build_state(10.0, 0.0, SpectrumParams(1.0, 28.0))) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(gkr::mean_energy(gkr::build_state(3.7, 0.0, SpectrumParams(1.0, 1.0))) == doctest::Approx(3.7).epsilon(1e-9));
}

TEST_CASE("evolve shifts the angle by alpha t") {
  const SpectrumParams p(2.5, 28.0);
  const auto s = gkr::build_state(10.0, 0.4, p);
  const auto same = gkr::evolve(s, 0.0);
  CHECK(same.angle() == s.angle());
  const auto once = gkr::evolve(s, 1.3);
  const auto twice = gkr::evolve(gkr::evolve(s, 0.65), 0.65);
  CHECK(once.angle() == doctest::Approx(0.4 + 2.5 * 1.3).epsilon(1e-15));
  CHECK(twice.angle() == doctest::Approx(once.angle()).epsilon(1e-15));
  CHECK(std::abs(gkr::overlap(once, twice) - 1.0) < 1e-12);
  for (long n = 0; n <= s.n_max(); ++n) CHECK(once.weight(n) == s.weight(n));
}

TEST_CASE("overlap") {
  const SpectrumParams p(1.0, 2.0);
  const auto a = gkr::build_state(1.0, 0.2, p);
  const auto b = gkr::build_state(4.0, 1.1, p);
  CHECK(std::abs(gkr::overlap(a, a) - 1.0) < 1e-13);
  const auto ab = gkr::overlap(a, b);
  const auto ba = gkr::overlap(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-15);
  CHECK(std::abs(ab) < 1.0);

  // Equal angles: 100-term series of (J J' mu^2)^{n/2} / (n! Gamma(n+1+mu)).
  long double sum = 0.0L;
  for (int n = 0; n < 100; ++n)
    sum += std::pow(4.0L * 4.0L, n / 2.0L) / (std::tgamma(n + 1.0L) * std::tgamma(n + 3.0L));
  const long double n1 = std::exp(static_cast<long double>(gkr::ln_normalization_sq(1.0, p)) / 2.0L);
  const long double n4 = std::exp(static_cast<long double>(gkr::ln_normalization_sq(4.0, p)) / 2.0L);
  const double oracle = static_cast<double>(2.0L * sum / (n1 * n4));
  CHECK(rel(gkr::overlap_same_angle(1.0, 4.0, p), oracle) < 1e-12);
  const auto a0 = gkr::build_state(1.0, 0.7, p);
  const auto b0 = gkr::build_state(4.0, 0.7, p);
  CHECK(std::abs(gkr::overlap(a0, b0) - oracle) < 1e-12);

  CHECK(gkr::overlap_same_angle(0.0, 0.0, p) == 1.0);
  CHECK(rel(gkr::overlap_same_angle(0.0, 4.0, p), b0.weight(0) > 0 ? std::sqrt(b0.weight(0)) : 0.0) < 1e-12);

  const auto other = gkr::build_state(1.0, 0.2, SpectrumParams(1.0, 3.0));
  CHECK_THROWS_AS(gkr::overlap(a, other), gkr::DomainError);
}

TEST_CASE("continuity of labelling") {
  const SpectrumParams p(1.0, 28.0);
  for (double j : {0.5, 10.0, 40.0}) {
    const auto base = gkr::build_state(j, 0.3, p);
    double prev = 1.0;
    for (double delta : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const auto near = gkr::build_state(j + delta, 0.3 + delta, p);
      const double gap = 1.0 - std::norm(gkr::overlap(near, base));
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev < 1e-9);
  }
}
