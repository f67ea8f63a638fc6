#pragma once

#include <cstdint>

namespace nlse {

/// Counter-based splittable random stream.  A stream is a 64-bit key plus a
/// draw counter; child streams are derived by hashing the key with a tag.
/// Draws depend only on (key, counter), never on global state or call order,
/// so ensembles are bit-reproducible for a given (seed, realization) no
/// matter how work is scheduled across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Independent child stream; derivation is pure in (key, tag).
  [[nodiscard]] RandomStream derive(std::uint64_t tag) const;

  std::uint64_t next_bits();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller (fixed two-uniform budget per draw).
  double normal();

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  /// Gamma(shape, scale 1) via Marsaglia-Tsang; shape < 1 boosted through
  /// the shape+1 law.  Rejection draws advance only this stream's counter.
  double gamma(double shape);

  /// Chi-squared with dof degrees of freedom (mean dof).
  double chi_squared(double dof);

 private:
  RandomStream(std::uint64_t key, int) : key_(key) {}
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace nlse
