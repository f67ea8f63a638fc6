#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "nlse/models.hpp"
#include "nlse/rhp.hpp"
#include "nlse/wavefield.hpp"

namespace nlse {

/// Complex-valued function sampled on a strictly monotone uniform real grid,
/// with the finite-difference stencil order (2 or 4) it should be
/// differentiated at.
struct SampledFunction {
  std::vector<double> x;
  std::vector<std::complex<double>> f;
  int stencil_order = 2;

  double step() const;
  /// Points consumed on each side by the derivative stencil.
  int margin() const { return stencil_order / 2; }
  void validate() const;
};

/// Parameter set of the two transcendent equations.  For the second case the
/// monodromy-style angles are theta_inf = 0, theta_0 = -theta_1 = 2 i mu/zeta,
/// which fix alpha = -2 mu^2/zeta^2, beta = +2 mu^2/zeta^2, gamma = 1,
/// delta = -1/2.
struct PainleveParams {
  ModelKind kind = ModelKind::pv;
  std::complex<double> theta0{}, theta1{}, theta_inf{};
  std::complex<double> alpha{}, beta{}, gamma{}, delta{};
  double zeta = 0.0;
  double mu_mean = 0.0;
};

PainleveParams pv_params(double zeta, double mu_mean);

/// Recover u(x) = 2 / (d/dx ln(x^2 psi(x))) from samples of the model
/// potential along the parabola (first model, T = 0): psi(x) = Psi(-x^2/8, 0)
/// on a positive uniform grid.  The logarithmic derivative is formed as
/// 2/x + psi'/psi (no log unwrapping).  Throws NumericalError when psi
/// vanishes or the logarithmic derivative is within 1e-8 of zero, naming the
/// abscissa.
SampledFunction extract_u_piii(const SampledFunction& psi_samples);

/// Recover u from samples of the second model potential on an X grid through
/// u = (1 - 2 i zeta / L)^{-1} with L = d/dX ln(X Psi(X, 0)) = 1/X + Psi'/Psi
/// (the scale factor is fixed by matching the isomonodromy matrices of the
/// associated linear system, which also forces Im L = zeta and |u| = 1 along
/// the real line).  The returned samples are indexed by the real parameter X;
/// the transcendent argument s = 2 i zeta X is applied inside pv_residual.
/// Throws NumericalError when Psi vanishes, L is near zero, or L is within
/// 1e-8 of the pole condition L = 2 i zeta.
SampledFunction extract_u_pv(const SampledFunction& psi_samples, double zeta);

/// Max interior residual of u'' = (u')^2/u - u'/x + 4/x + 4u^3 - 4/u.
/// Throws NumericalError listing the abscissa when u comes within 1e-10 of 0.
double piii_residual(const SampledFunction& u);

/// Max interior residual of
/// u'' = (1/(2u) +- 1/(u-1)) (u')^2 - u'/s + (u-1)^2 (alpha u + beta/u)/s^2
///        + gamma u/s + delta u(u+1)/(u-1)
/// on the line s = 2 i zeta X, with the sign of the 1/(u-1) term chosen by
/// `plus_branch` (the default "+" is the one consistent with delta = -1/2).
/// Throws NumericalError when u comes within 1e-10 of 0 or 1.
double pv_residual(const SampledFunction& u, const PainleveParams& params,
                   bool plus_branch = true);

/// Closed intervals of abscissae the sampling grid cannot resolve: wherever
/// consecutive samples jump by more than `threshold` relative to one plus the
/// larger magnitude (a pole passage, or a phase sweeping faster than the
/// mesh), the surrounding `radius` is marked, and overlapping marks are
/// merged.  Finite differences measure nothing inside such a span; residual
/// evaluation should skip it.
std::vector<std::pair<double, double>> unresolved_spans(const SampledFunction& u,
                                                        double threshold = 0.35,
                                                        double radius = 0.25);

/// Union of two interval lists: sorted by left endpoint with overlapping or
/// touching intervals merged.  Use it to pool the unresolved spans detected
/// on several grids of the same function, so every grid is measured away
/// from every passage any of them detected.
std::vector<std::pair<double, double>> merge_spans(
    std::vector<std::pair<double, double>> a,
    const std::vector<std::pair<double, double>>& b);

/// Singularity-tolerant gauge of the same third-ODE: clears denominators by
/// multiplying through by x u,
///   P = x u u'' - x (u')^2 + u u' - 4 u - 4 x u^4 + 4 x,
/// and reports the max over interior points of |P| divided by the sum of the
/// term magnitudes.  P is a polynomial in (u, u', u''), so the gauge stays
/// finite at zeros of u (where it encodes the slope condition u' = +-2) and
/// degrades gracefully through poles, where the raw form diverges.  Intended
/// for solve -> extract chains whose transcendent crosses its singular set
/// inside the window; use the raw residual when u is known to stay regular.
/// Abscissae inside any of the `exclude` intervals are skipped (pass
/// unresolved_spans(u) to measure away from passages the grid cannot
/// resolve); throws NumericalError if nothing remains.
double piii_residual_normalized(
    const SampledFunction& u,
    const std::vector<std::pair<double, double>>& exclude = {});

/// Same denominators-cleared gauge for the fifth-ODE on s = 2 i zeta X:
/// multiplies through by 2 s^2 u (u - 1),
///   P = 2 s^2 u (u-1) u'' - s^2 ((u-1) + 2 sign u) (u')^2 + 2 s u (u-1) u'
///       - 2 (u-1)^3 (alpha u^2 + beta) - 2 gamma s u^2 (u-1)
///       - 2 delta s^2 u^2 (u+1),
/// and reports max |P| / sum of term magnitudes over interior points outside
/// the `exclude` intervals.
double pv_residual_normalized(
    const SampledFunction& u, const PainleveParams& params, bool plus_branch = true,
    const std::vector<std::pair<double, double>>& exclude = {});

/// Max interior residual of i psi_t + psi_xx/2 + |psi|^2 psi on a uniform
/// space-time field with at least 5 points per axis (second-order stencils).
double nls_residual(const WaveField& field);

struct LaxProbe {
  double residual = 0.0;      ///< max over Z samples of ||W_Z - Lambda W||_F
  double trace_defect = 0.0;  ///< max |tr Lambda| (exactly 0 in exact arithmetic)
};

/// Overdetermined-consistency probe for the second model at T = 0: builds
/// W(Z; X) = E(Z) e^{-i sigma3 (XZ + (mu/zeta) Log(1 + zeta/Z))} from
/// off-contour evaluations, differences it in Z, and compares against
///   Lambda = -iX sigma3 + (iX [sigma3, R1] - D + i(mu/zeta) sigma3)/Z
///            + (D - i(mu/zeta) sigma3)/(Z + zeta),      D = d/dX (X R1),
/// with D formed from solves at X +- step_x.  `solve_at` must return the
/// unit-circle solution of the model problem at the given X (T = 0).
/// Z samples must stay away from the contour and the points {0, -zeta};
/// violations throw NearContourError.
LaxProbe lax_residual_pv(const std::function<RhpSolution(double)>& solve_at, double X,
                         double step_x, double zeta, double mu_mean,
                         const std::vector<std::complex<double>>& Z_samples,
                         double step_z);

}  // namespace nlse
