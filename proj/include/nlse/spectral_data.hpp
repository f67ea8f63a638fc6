#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlse/rng.hpp"

namespace nlse {

/// Scalar law for ensemble draws.  Amplitude laws must come from the
/// positive sub-exponential family (chi-squared, exponential, shifted
/// constant); the Gaussian is admitted for velocities only.
struct Distribution {
  enum class Kind { chi_squared, exponential, shifted_constant, gaussian };
  Kind kind = Kind::chi_squared;
  double a = 4.0;  // chi2: dof | exponential: rate | shifted_constant: value | gaussian: mean
  double b = 0.0;  // gaussian: variance

  static Distribution make_chi_squared(double dof);
  static Distribution make_exponential(double rate);
  static Distribution make_constant(double value);
  static Distribution make_gaussian(double mean, double variance);

  /// Analytic mean of the law (chi2: dof, exponential: 1/rate, ...).
  double mean() const;

  /// True for the positive-support sub-exponential family.
  bool positive() const;

  double sample(RandomStream& rng) const;

  /// Textual form matching the CLI grammar: chi2:4, exp:2, const:1, gauss:0:15.
  std::string spec() const;
  static Distribution parse(const std::string& text);
};

/// Discrete scattering data for a reflectionless potential: eigenvalues in
/// the upper half plane plus either connection coefficients p or norming
/// constants c (or both, kept consistent through the dictionary).
struct SpectralData {
  std::vector<std::complex<double>> lambda;               // distinct, Im > 0
  std::vector<std::complex<double>> p;                    // connection coefficients, nonzero
  std::optional<std::vector<std::complex<double>>> c;     // norming constants
  std::optional<double> zeta;                             // lattice drift used when sampling
  std::uint64_t seed = 0;                                 // substream seed that produced the data

  int n() const { return static_cast<int>(lambda.size()); }
  void validate() const;
};

/// Pairwise eigenvalue separations below this make the dictionary products
/// meaningless at any precision; samplers redraw, converters refuse.
inline constexpr double kSeparationFloor = 1e-8;

double min_separation(const std::vector<std::complex<double>>& lambda);

struct RandomEnsembleConfig {
  int n = 1;
  Distribution amplitude = Distribution::make_chi_squared(4);
  std::optional<Distribution> velocity;  // absent: velocities identically zero
  std::optional<double> zeta;            // present: drifted lattice -zeta*k + v_k + i*mu_k, 0 < zeta < 1
  std::uint64_t seed = 0;
  int realizations = 1;

  void validate() const;
};

/// Key for the (seed, realization) substream; stored in SpectralData::seed
/// so a saved dataset can be regenerated without the original config.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t realization);

/// Draw the raw amplitude/velocity vectors for one realization.  Pure in
/// (config, realization); used directly by the good-set probes.
void sample_mu_v(const RandomEnsembleConfig& config, int realization,
                 std::vector<double>& mu, std::vector<double>& v);

/// Assemble a full dataset for one realization: eigenvalues from the draws
/// (with bounded redraws enforcing the separation floor), p identically one
/// (the maximal-amplitude family), c filled through the dictionary.
SpectralData sample_ensemble(const RandomEnsembleConfig& config, int realization);

/// Dictionary between connection coefficients and norming constants:
///   c_n = (1/p_n) * prod_l (lambda_n - conj lambda_l) * prod_{l != n} 1/(lambda_n - lambda_l)
/// evaluated as exp of summed logs so magnitudes spanning hundreds of
/// decades stay representable.
std::vector<std::complex<double>> norming_from_connection(
    const std::vector<std::complex<double>>& lambda, const std::vector<std::complex<double>>& p);
std::vector<std::complex<double>> connection_from_norming(
    const std::vector<std::complex<double>>& lambda, const std::vector<std::complex<double>>& c);

/// Time evolution of the data: c_n(t) = c_n exp(2 i t lambda_n^2) and
/// p_n(t) = p_n exp(-2 i t lambda_n^2).
SpectralData evolve_spectral_data(const SpectralData& data, double t);

std::string spectral_to_json(const SpectralData& data);
SpectralData spectral_from_json(const std::string& text);
void save_spectral(const SpectralData& data, const std::string& path);
SpectralData load_spectral(const std::string& path);

}  // namespace nlse
