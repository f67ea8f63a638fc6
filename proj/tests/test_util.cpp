// Utility-layer checks: FFT identities, counter-RNG determinism and sampler
// moments, number formatting round-trips, and the parallel-for driver.

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/numstr.hpp"
#include "nlse/parallel.hpp"
#include "nlse/rng.hpp"

using Cx = std::complex<double>;

TEST_CASE("fft: forward transform of a pure mode is a delta") {
  const std::size_t K = 64;
  const int mode = 5;
  std::vector<Cx> x(K);
  for (std::size_t p = 0; p < K; ++p) {
    const double angle = 2.0 * std::numbers::pi * mode * double(p) / double(K);
    x[p] = Cx(std::cos(angle), std::sin(angle));
  }
  nlse::fft_forward(x);
  for (std::size_t k = 0; k < K; ++k) {
    const double expected = (k == std::size_t(mode)) ? double(K) : 0.0;
    CHECK(std::abs(x[k] - Cx(expected, 0.0)) < 1e-10);
  }
}

TEST_CASE("fft: inverse undoes forward to near machine precision") {
  nlse::RandomStream rng(42);
  std::vector<Cx> x(256);
  for (auto& v : x) v = Cx(rng.normal(), rng.normal());
  const auto original = x;
  nlse::fft_forward(x);
  nlse::fft_inverse(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(x[i] - original[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("fft: rejects non-power-of-two lengths") {
  std::vector<Cx> x(48);
  CHECK_THROWS_AS(nlse::fft_forward(x), nlse::ValidationError);
}

TEST_CASE("fft: Parseval identity") {
  nlse::RandomStream rng(7);
  std::vector<Cx> x(128);
  double time_energy = 0.0;
  for (auto& v : x) {
    v = Cx(rng.normal(), rng.normal());
    time_energy += std::norm(v);
  }
  nlse::fft_forward(x);
  double freq_energy = 0.0;
  for (const auto& v : x) freq_energy += std::norm(v);
  CHECK(std::abs(freq_energy / double(x.size()) - time_energy) <
        1e-10 * std::max(1.0, time_energy));
}

TEST_CASE("rng: identical seeds give identical streams, derive() forks them") {
  nlse::RandomStream a(123);
  nlse::RandomStream b(123);
  for (int i = 0; i < 16; ++i) CHECK(a.next_bits() == b.next_bits());

  nlse::RandomStream base(123);
  nlse::RandomStream forked = base.derive(1);
  nlse::RandomStream again = nlse::RandomStream(123).derive(1);
  CHECK(forked.next_bits() == again.next_bits());
  CHECK(nlse::RandomStream(123).derive(1).next_bits() !=
        nlse::RandomStream(123).derive(2).next_bits());
}

TEST_CASE("rng: sampler means and variances match the laws within 5 standard errors") {
  const int draws = 10000;

  SUBCASE("uniform") {
    nlse::RandomStream rng(1);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      sum += u;
    }
    const double se = std::sqrt(1.0 / 12.0 / draws);
    CHECK(std::abs(sum / draws - 0.5) < 5.0 * se);
  }

  SUBCASE("normal") {
    nlse::RandomStream rng(2);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double z = rng.normal();
      sum += z;
      sumsq += z * z;
    }
    CHECK(std::abs(sum / draws) < 5.0 / std::sqrt(double(draws)));
    CHECK(std::abs(sumsq / draws - 1.0) < 5.0 * std::sqrt(2.0 / draws));
  }

  SUBCASE("exponential rate 2") {
    nlse::RandomStream rng(3);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double v = rng.exponential(2.0);
      CHECK(v >= 0.0);
      sum += v;
    }
    const double se = 0.5 / std::sqrt(double(draws));
    CHECK(std::abs(sum / draws - 0.5) < 5.0 * se);
  }

  SUBCASE("chi-squared with 4 degrees of freedom") {
    nlse::RandomStream rng(4);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double v = rng.chi_squared(4.0);
      CHECK(v > 0.0);
      sum += v;
    }
    const double se = std::sqrt(8.0 / draws);
    CHECK(std::abs(sum / draws - 4.0) < 5.0 * se);
  }

  SUBCASE("gamma shape 0.7 (small-shape branch)") {
    nlse::RandomStream rng(5);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double v = rng.gamma(0.7);
      CHECK(v > 0.0);
      sum += v;
    }
    const double se = std::sqrt(0.7 / draws);
    CHECK(std::abs(sum / draws - 0.7) < 5.0 * se);
  }
}

TEST_CASE("numstr: shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 4.0}) {
    CHECK(nlse::parse_double(nlse::format_double(v)) == v);
  }
  CHECK_THROWS_AS(nlse::parse_double("not-a-number"), nlse::ValidationError);
}

TEST_CASE("parallel_for: serial and parallel runs produce identical slots") {
  const std::size_t n = 1000;
  std::vector<double> serial(n), parallel(n);
  const auto work = [](std::size_t i) {
    nlse::RandomStream rng(nlse::RandomStream(99).derive(i).next_bits());
    return rng.normal() + double(i);
  };
  nlse::parallel_for(nlse::Exec::serial, n, [&](std::size_t i) { serial[i] = work(i); });
  nlse::parallel_for(nlse::Exec::parallel, n,
                     [&](std::size_t i) { parallel[i] = work(i); });
  CHECK(serial == parallel);
}

TEST_CASE("parallel_for: visits every index exactly once") {
  const std::size_t n = 257;
  std::vector<std::atomic<int>> hits(n);
  nlse::parallel_for(nlse::Exec::parallel, n, [&](std::size_t i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(),
                    [](const std::atomic<int>& h) { return h.load() == 1; }));
}

TEST_CASE("parallel_for: exceptions from workers propagate") {
  CHECK_THROWS_AS(nlse::parallel_for(nlse::Exec::parallel, 8,
                                     [](std::size_t i) {
                                       if (i == 3) throw nlse::NumericalError("boom");
                                     }),
                  nlse::NumericalError);
}

TEST_CASE("worker_count is at least one") { CHECK(nlse::worker_count() >= 1); }
