#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "nlse/rhp.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

namespace nlse {

enum class ModelKind { piii, pv };

const char* model_name(ModelKind kind);

/// Parameters of the two model Riemann-Hilbert problems on the unit circle.
/// The phase is XZ + TZ^2 plus a case-specific singular part: 2/Z for the
/// first model, (mu_mean/zeta) Log(1 + zeta/Z) for the second, which needs
/// 0 < zeta < 1 so the branch point -zeta stays strictly inside the circle.
struct ModelParams {
  ModelKind kind = ModelKind::piii;
  double X = 0.0;
  double T = 0.0;
  double zeta = 0.0;     ///< second model only
  double mu_mean = 0.0;  ///< second model only (the first fixes the coefficient to 2)

  void validate() const;
};

/// log of the degree-zero rational a(z) = prod (z - lambda_n)/(z - conj lambda_n),
/// summed term by term so huge eigenvalue counts neither overflow nor underflow.
/// exp(log_blaschke) equals the product exactly regardless of per-term branch.
std::complex<double> log_blaschke(const std::vector<std::complex<double>>& eigenvalues,
                                  std::complex<double> z);

/// a(z) itself, evaluated through log space.  Throws ValidationError when z is
/// within 1e-12 of a pole conj(lambda_n) (or of a zero lambda_n, where the log
/// representation degenerates).
std::complex<double> blaschke(const std::vector<std::complex<double>>& eigenvalues,
                              std::complex<double> z);

/// Model jump e^{-i phi sigma3} [[1,1],[-1,1]]/sqrt2 e^{i phi sigma3} with
/// phi = XZ + TZ^2 + 2/Z, analytic on 7/8 < |Z| < 9/8.
JumpMatrix piii_jump(const ModelParams& params);

/// Same sandwich with phi = XZ + TZ^2 + (mu_mean/zeta) Log(1 + zeta/Z),
/// principal branch; analytic on (1+zeta)/2 < |Z| < (3-zeta)/2.
JumpMatrix pv_jump(const ModelParams& params);

/// Finite-N jump on the circle |z| = radius, expressed in the unit-circle
/// variable Z = z/radius that the solver works in:
///   J = (1/sqrt2) [[1, a(z) e^{-2i theta}], [-e^{2i theta}/a(z), 1]],
/// theta = z x + z^2 t.  All eigenvalues must lie strictly inside the circle.
/// The physical potential is radius * 2i (R1)_{12} of the unit-circle solve.
JumpMatrix nsoliton_jump(const SpectralData& data, double x, double t, double radius);

/// Change of variables between the model frame (X, T) and the physical frame
/// (x, t), together with the amplitude factor and the finite-N contour radius.
struct ScalingMap {
  ModelKind kind = ModelKind::piii;
  int n = 1;
  double mu_mean = 1.0;

  double x_of(double X) const;
  double t_of(double T) const;
  double X_of(double x) const;
  double T_of(double t) const;
  double amplitude() const;
  double contour_radius() const;

  /// Map a field sampled at physical points x = x_of(X), t = t_of(T) into the
  /// model frame: abscissae are pulled back and psi (and mass, if present) is
  /// multiplied by the amplitude factor.
  WaveField rescale(const WaveField& physical) const;
};

ScalingMap scaling_map(ModelKind kind, int n, double mu_mean);

/// Membership of one sampled realization in the concentration sets that the
/// convergence theorems condition on, with exponent delta in (1/4, 1/2):
///  - amplitudes_bounded: every |mu_j| and |v_j| below N^delta;
///  - sum_concentrated: |sum mu_j - N mu_mean| at most N^{2 delta};
///  - resolvent_bounded (only with zeta): the lattice resolvent sum
///    |sum_j (mu_j - mu_mean)/(Z + zeta j/N)| at most N^{2 delta} on a 4N-point
///    angular net of the unit circle.
struct GoodSetFlags {
  bool amplitudes_bounded = false;
  bool sum_concentrated = false;
  bool resolvent_bounded = true;

  bool all() const { return amplitudes_bounded && sum_concentrated && resolvent_bounded; }
};

GoodSetFlags good_set_flags(const std::vector<double>& mu, const std::vector<double>& v,
                            double mu_mean, double delta = 0.3,
                            std::optional<double> zeta = std::nullopt);

}  // namespace nlse
