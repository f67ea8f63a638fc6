#pragma once

#include <complex>
#include <functional>
#include <string>

#include "nlse/laurent.hpp"

namespace nlse {

/// Jump data for a 2x2 Riemann-Hilbert problem posed on the unit circle,
/// oriented counterclockwise with the "+" boundary value taken from the
/// interior.  The evaluator must be analytic on the annulus
/// r_in <= |Z| <= r_out with r_in < 1 < r_out.
///
/// All jumps in scope are unimodular (det J = 1 on the circle) and, when
/// `schwartz_symmetric` is set, satisfy J(Z) J^dagger(conj Z) = I on |Z| = 1.
struct JumpMatrix {
  std::function<Mat2(std::complex<double>)> evaluator;
  double r_in = 0.0;
  double r_out = 0.0;
  bool schwartz_symmetric = true;
  std::string label;

  void validate() const;
};

/// Tunables shared by the solvers.
struct SolveOptions {
  /// Largest tolerated Laurent tail, relative to the largest coefficient of
  /// the same series, before a solve counts as under-resolved.
  double resolution_tol = 1e-9;
  /// Return an under-resolved solution (flagged) instead of throwing.
  bool allow_under_resolved = false;
  /// Largest tolerated deviation of det J from 1 at the collocation points.
  double det_tol = 1e-8;
  /// Mode range for the adaptive driver: start at min_modes (or the
  /// oscillation-based estimate if larger) and double up to max_modes.
  int min_modes = 128;
  int max_modes = 4096;
};

struct RhpDiagnostics {
  int modes = 0;                ///< truncation order M of the mu expansion
  double jump_residual = 0.0;   ///< max over collocation points of ||E+ - E- J||_F
  double tail = 0.0;            ///< largest Laurent coefficient near the truncation edge
  bool under_resolved = false;  ///< tail exceeded the resolution tolerance
  std::string method;           ///< "collocation" or "neumann"
};

/// Solved boundary data.  `mu` is the exterior boundary value E_- as a
/// Laurent series with mu_0 = I and vanishing positive modes; `g` holds
/// mu * (J - I) to twice the truncation; `r1` is the coefficient of 1/Z in
/// the exterior expansion E(Z) = I + r1/Z + O(1/Z^2), computed as -g_{-1}.
struct RhpSolution {
  LaurentSeries mu;
  LaurentSeries g;
  Mat2 r1;
  RhpDiagnostics diag;
};

/// Potential data read off the 1/Z coefficient.  For Schwartz-symmetric
/// jumps R1 has the structure (1/2i) [[-m, psi], [conj psi, m]] with m real;
/// `structure_defect` is the largest violation of that structure.
struct PotentialExtract {
  std::complex<double> psi;
  double m = 0.0;
  double structure_defect = 0.0;
};

/// Direct dense solve of the truncated mode system for
/// mu = I + C_-(mu (J - I)).  Samples J at 2M equispaced circle points,
/// forms the dense operator on the 2M unknown negative-mode rows (pointwise
/// products go through discrete Fourier transforms with 2x zero-padding for
/// dealiasing), and LU-solves it.  M must be a power of two >= 16.
///
/// Throws ValidationError for a malformed jump or truncation,
/// IllConditionedError if the operator is numerically singular (the theory
/// guarantees solvability, so this signals discretization failure), and
/// ResolutionError if the relative Laurent tail stays above
/// options.resolution_tol and options.allow_under_resolved is not set.
RhpSolution solve_collocation(const JumpMatrix& jump, int truncation,
                              const SolveOptions& options = {});

/// Small-norm route: iterates mu <- I + C_-(mu (J - I)) in mode space until
/// the largest coefficient change drops below `tol`.  Requires the
/// contraction precondition max ||J - I||_F < 1 on the circle; otherwise
/// throws DivergenceError naming the norm.  Exceeding `max_terms` before
/// converging also throws DivergenceError.
RhpSolution solve_neumann(const JumpMatrix& jump, int truncation, int max_terms,
                          double tol, const SolveOptions& options = {});

/// Collocation with automatic truncation: starts at
/// max(options.min_modes, next power of two >= 16 * oscillation_estimate)
/// and doubles M until the tail clears options.resolution_tol or
/// options.max_modes is reached.  `oscillation_estimate` should scale like
/// the maximal phase magnitude of the jump on the circle.
RhpSolution solve_adaptive(const JumpMatrix& jump, const SolveOptions& options = {},
                           double oscillation_estimate = 0.0);

/// Cauchy-representation evaluation away from the contour:
/// interior  E(Z) = I + sum_{k >= 0} g_k Z^k,
/// exterior  E(Z) = I - sum_{k <= -1} g_k Z^k.
/// Throws NearContourError when |Z| is within 1e-6 of 1 (use the boundary
/// values held in `mu` instead).
Mat2 evaluate_off_contour(const RhpSolution& solution, std::complex<double> Z);

/// Reads psi = 2i (R1)_{12} and m = 2i (R1)_{22} off the solution and checks
/// the Schwartz structure ((R1)_{21} = -conj (R1)_{12}, R1 traceless, m real),
/// measured relative to ||R1||_F (floored at 1).  A relative defect beyond
/// `structure_tol` throws StructureError (malformed jump).
PotentialExtract extract_potential(const RhpSolution& solution,
                                   double structure_tol = 1e-6);

/// One-line JSON diagnostic record: truncation, residual, method, R1 entries.
std::string diagnostics_json(const RhpSolution& solution);

}  // namespace nlse
