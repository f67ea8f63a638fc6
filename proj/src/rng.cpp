#include "nlse/rng.hpp"

#include <cmath>
#include <numbers>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

// splitmix64 finalizer: bijective avalanche mix on 64 bits.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(mix64(seed)) {}

RandomStream RandomStream::derive(std::uint64_t tag) const {
  return RandomStream(mix64(key_ ^ mix64(tag * 0xA24BAED4963EE407ull + 0x165667B19E3779F9ull)), 0);
}

std::uint64_t RandomStream::next_bits() { return mix64(key_ ^ mix64(ctr_++)); }

double RandomStream::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0)) throw ValidationError("exponential rate must be positive");
  return -std::log(1.0 - uniform()) / rate;
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0)) throw ValidationError("gamma shape must be positive");
  if (shape < 1.0) {
    const double u = 1.0 - uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    const double t = 1.0 + c * x;
    if (t <= 0) continue;
    const double v = t * t * t;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::chi_squared(double dof) {
  if (!(dof > 0)) throw ValidationError("chi-squared dof must be positive");
  return 2.0 * gamma(0.5 * dof);
}

}  // namespace nlse
