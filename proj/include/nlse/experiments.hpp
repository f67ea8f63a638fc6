#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlse/models.hpp"
#include "nlse/parallel.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

namespace nlse {

struct RealizationRecord {
  int n = 0;
  int realization = 0;
  std::uint64_t seed = 0;
  double l2_error = 0.0;
  bool ok = false;
  std::string note;
};

/// Outcome of one universality run: the cached model profile, one record per
/// (size, realization), and ensemble-mean modulus profiles per size.  Every
/// number is reproducible from (base_seed, configuration) alone.
struct ExperimentReport {
  ModelKind kind = ModelKind::piii;
  std::vector<int> sizes;
  std::vector<double> grid_X;
  double T = 0.0;
  int modes = 0;
  std::uint64_t base_seed = 0;
  int realizations = 0;
  std::vector<std::complex<double>> model_profile;
  std::vector<RealizationRecord> records;
  std::vector<std::vector<double>> mean_abs_profile;  ///< indexed like `sizes`
  std::vector<std::string> warnings;
  double model_solve_seconds = 0.0;
  double ensemble_seconds = 0.0;

  /// Mean / standard error of the L2 errors over successful realizations at
  /// size n (NaN when none succeeded; failures are recorded in `warnings`).
  double mean_error(int n) const;
  double std_error(int n) const;
};

/// For each size N and realization: sample spectral data, verify the peak
/// identity while calibrating precision, evaluate the dressed field on the
/// pulled-back grid, rescale to the model frame, and record the
/// trapezoid-weighted L2 distance to the model profile (solved once and
/// shared across sizes and realizations).  Per-realization failures become
/// warnings and are excluded from the means, never silently dropped.
ExperimentReport run_universality(const RandomEnsembleConfig& config, ModelKind kind,
                                  const std::vector<int>& sizes,
                                  const std::vector<double>& X_grid, double T, int modes,
                                  Exec exec = Exec::parallel);

/// Discrete L2 distance with trapezoid weights on the shared grid (product
/// weights over x and t).  Grids must agree to 1e-9; mismatch throws
/// ValidationError.
double l2_error(const WaveField& f, const WaveField& g);

struct GoodSetStats {
  int n = 0;
  double delta = 0.0;
  int trials = 0;
  double amplitudes_fail = 0.0;  ///< empirical frequency outside the amplitude window
  double sum_fail = 0.0;         ///< outside the partial-sum window
  double resolvent_fail = 0.0;   ///< outside the circle-uniform window (0 without zeta)
};

/// Monte-Carlo failure frequencies of the three concentration sets over raw
/// i.i.d. draws (no separation redraws) of the configured ensemble.
GoodSetStats good_set_probe(const RandomEnsembleConfig& config, double delta, int trials,
                            Exec exec = Exec::parallel);

struct ConvergenceRow {
  int n = 0;
  double mean_error = 0.0;
  std::optional<double> rate;  ///< log2(previous mean / this mean)
};

std::vector<ConvergenceRow> convergence_table(const ExperimentReport& report);

/// CSV emitters.  Schemas:
///   records:  case,N,realization,seed,l2_error   (successful rows only)
///   summary:  case,N,mean_error,std_error
///   profile:  X,abs_psi_model,abs_psi_N_mean     (one file per size)
void write_report_csv(const ExperimentReport& report, const std::string& path);
void write_summary_csv(const ExperimentReport& report, const std::string& path);
void write_profile_csv(const ExperimentReport& report, int n, const std::string& path);

}  // namespace nlse
