#pragma once

#include <array>
#include <complex>
#include <vector>

#include "nlse/parallel.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

namespace nlse {

/// Working precision for the dressing recursion.  The chain of projector
/// matrices loses digits roughly in proportion to the ensemble size near the
/// focusing point, so binary64 is only the first rung of a 53/128/256/512
/// mantissa-bit ladder.
struct PrecisionPolicy {
  enum class Mode { fixed, escalate };
  Mode mode = Mode::fixed;
  int bits = 53;       // fixed mode: working mantissa width
  int max_bits = 512;  // escalate mode: ladder cap

  static PrecisionPolicy fixed_bits(int mantissa_bits);
  static PrecisionPolicy escalating(int max_mantissa_bits = 512);
};

/// The rungs {53, 128, 256, 512} clipped to max_bits.
std::vector<int> precision_ladder(int max_bits);

/// Dressing chain state at one point after all steps: the field value and
/// the unit spinors that define each step's projector.
struct DressingState {
  std::complex<double> psi{0, 0};
  std::vector<std::array<std::complex<double>, 2>> q;
};

/// Apply one dressing factor at spectral parameter w to the vector v:
///   v + (lambda_j - conj lambda_j)/(w - lambda_j) * (q^T v / |q|^2) * conj(q).
/// Invariant under rescaling of q (only the projector direction matters).
std::array<std::complex<double>, 2> chi_apply(const std::array<std::complex<double>, 2>& q,
                                              std::complex<double> lambda_j,
                                              std::complex<double> w,
                                              const std::array<std::complex<double>, 2>& v);

/// Field value psi(x, t) built by the iterated dressing recursion,
/// O(n^2) arithmetic per point.  Escalating mode retries at the next
/// ladder rung when a non-finite intermediate appears.
std::complex<double> darboux_evaluate(const SpectralData& data, double x, double t,
                                      PrecisionPolicy policy = {});

/// Full chain state at binary64, for tests and diagnostics.
DressingState dress_point(const SpectralData& data, double x, double t);

/// Exact peak value 2 * sum Im lambda_n attained at the origin by the
/// maximal-amplitude family.
double extremal_peak(const SpectralData& data);

/// Smallest ladder rung at which |psi(0,0)| reproduces extremal_peak to
/// rel_tol; PrecisionExhaustedError if even max_bits fails.
int calibrate_bits(const SpectralData& data, double rel_tol, int max_bits = 512);

/// Evaluate psi over a tensor grid.  The parallel driver writes each grid
/// point into its own slot, so serial and parallel results are organised
/// identically bit for bit; evaluate_field_serial is the reference twin.
WaveField evaluate_field(const SpectralData& data, const std::vector<double>& xs,
                         const std::vector<double>& ts, PrecisionPolicy policy, Exec exec);
WaveField evaluate_field_serial(const SpectralData& data, const std::vector<double>& xs,
                                const std::vector<double>& ts, PrecisionPolicy policy = {});

}  // namespace nlse
