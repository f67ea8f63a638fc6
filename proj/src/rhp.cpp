#include "nlse/rhp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/numstr.hpp"

namespace nlse {
namespace {

using Cx = std::complex<double>;
using EntrySpectra = std::array<std::vector<Cx>, 4>;

void set_entry(Mat2& m, int row, int col, Cx value) {
  if (row == 0) {
    (col == 0 ? m.a : m.b) = value;
  } else {
    (col == 0 ? m.c : m.d) = value;
  }
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(double x) {
  int m = 1;
  while (static_cast<double>(m) < x && m < (1 << 20)) m <<= 1;
  return m;
}

std::vector<Cx> circle_grid(int count) {
  std::vector<Cx> z(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) {
    const double angle = 2.0 * std::numbers::pi * p / count;
    z[static_cast<std::size_t>(p)] = Cx(std::cos(angle), std::sin(angle));
  }
  return z;
}

/// Forward transform per matrix entry; bins are scaled so that bin
/// (k mod K) holds the Fourier coefficient of Z^k.
EntrySpectra sample_modes(const std::vector<Mat2>& samples) {
  const std::size_t count = samples.size();
  EntrySpectra out;
  for (auto& v : out) v.resize(count);
  for (std::size_t p = 0; p < count; ++p) {
    out[0][p] = samples[p].a;
    out[1][p] = samples[p].b;
    out[2][p] = samples[p].c;
    out[3][p] = samples[p].d;
  }
  for (auto& v : out) {
    fft_forward(v);
    for (auto& z : v) z /= static_cast<double>(count);
  }
  return out;
}

Mat2 mode_at(const EntrySpectra& spectra, int k) {
  const int count = static_cast<int>(spectra[0].size());
  const std::size_t bin = static_cast<std::size_t>(((k % count) + count) % count);
  return {spectra[0][bin], spectra[1][bin], spectra[2][bin], spectra[3][bin]};
}

/// Evaluate sum_{k in [k_lo, k_hi]} modes(k) Z^k on the `count`-point circle
/// grid by inverse transform.  Requires k_hi - k_lo < count (distinct bins).
std::vector<Mat2> synthesize(int count, int k_lo, int k_hi,
                             const std::function<Mat2(int)>& modes) {
  EntrySpectra spectra;
  for (auto& v : spectra) v.assign(static_cast<std::size_t>(count), Cx{});
  for (int k = k_lo; k <= k_hi; ++k) {
    const std::size_t bin = static_cast<std::size_t>(((k % count) + count) % count);
    const Mat2 m = modes(k);
    spectra[0][bin] += m.a;
    spectra[1][bin] += m.b;
    spectra[2][bin] += m.c;
    spectra[3][bin] += m.d;
  }
  for (auto& v : spectra) {
    fft_inverse(v);
    for (auto& z : v) z *= static_cast<double>(count);
  }
  std::vector<Mat2> out(static_cast<std::size_t>(count));
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = {spectra[0][p], spectra[1][p], spectra[2][p], spectra[3][p]};
  return out;
}

/// Jump samples on the 2M-point collocation grid, with unimodularity check.
std::vector<Mat2> sample_jump(const JumpMatrix& jump, int truncation, double det_tol) {
  const int count = 2 * truncation;
  const auto grid = circle_grid(count);
  std::vector<Mat2> samples(static_cast<std::size_t>(count));
  double worst_det = 0.0;
  for (int p = 0; p < count; ++p) {
    Mat2 value = jump.evaluator(grid[static_cast<std::size_t>(p)]);
    if (!std::isfinite(value.max_abs()))
      throw NumericalError("jump evaluator returned a non-finite matrix on the circle");
    worst_det = std::max(worst_det, std::abs(value.det() - Cx(1.0, 0.0)));
    samples[static_cast<std::size_t>(p)] = value;
  }
  if (worst_det > det_tol)
    throw ValidationError("jump is not unimodular on the circle (max |det J - 1| = " +
                          format_double(worst_det) + ")");
  for (auto& s : samples) s = s - Mat2::identity();
  return samples;
}

/// Shared final stage: given the solved negative mu-modes and the jump
/// samples on the 2M grid, compute g = mu (J - I) on the zero-padded 4M
/// grid, assemble the series, and measure residual and tails.
RhpSolution assemble_solution(int truncation, const std::vector<Mat2>& jump_minus_identity,
                              const std::vector<Mat2>& mu_negative_modes,
                              const SolveOptions& options, const std::string& method) {
  const int padded = 4 * truncation;
  const EntrySpectra jm_modes = sample_modes(jump_minus_identity);

  RhpSolution out{LaurentSeries(truncation), LaurentSeries(2 * truncation), Mat2{}, {}};
  out.mu.at(0) = Mat2::identity();
  for (int k = -truncation; k <= -1; ++k)
    out.mu.at(k) = mu_negative_modes[static_cast<std::size_t>(-1 - k)];

  const auto mu_samples = synthesize(padded, -truncation, 0, [&](int k) {
    return out.mu.at(k);
  });
  const auto jm_samples = synthesize(padded, -truncation, truncation - 1, [&](int k) {
    return mode_at(jm_modes, k);
  });

  std::vector<Mat2> g_samples(static_cast<std::size_t>(padded));
  for (std::size_t p = 0; p < g_samples.size(); ++p)
    g_samples[p] = mu_samples[p] * jm_samples[p];
  const EntrySpectra g_modes = sample_modes(g_samples);
  for (int k = -2 * truncation; k <= 2 * truncation - 1; ++k)
    out.g.at(k) = mode_at(g_modes, k);
  out.r1 = Cx(-1.0, 0.0) * out.g.at(-1);

  // Residual ||E+ - E- J|| at the 2M collocation points (even indices of the
  // padded grid, where the band-limited interpolant matches J exactly).
  const auto eplus_samples = synthesize(padded, 0, 2 * truncation - 1, [&](int k) {
    return out.g.at(k);
  });
  double residual = 0.0;
  for (int p = 0; p < 2 * truncation; ++p) {
    const std::size_t fine = static_cast<std::size_t>(2 * p);
    const Mat2 eplus = Mat2::identity() + eplus_samples[fine];
    const Mat2 jump_value =
        jump_minus_identity[static_cast<std::size_t>(p)] + Mat2::identity();
    residual = std::max(residual, (eplus - mu_samples[fine] * jump_value).frob());
  }

  out.diag.modes = truncation;
  out.diag.jump_residual = residual;
  // Judge each tail against its own series' largest coefficient: strong
  // jumps scale every mode (and the rounding floor) linearly, and an
  // absolute gate would misread amplitude for missing resolution.
  out.diag.tail = std::max(out.mu.tail_max() / std::max(1.0, out.mu.max_frob()),
                           out.g.tail_max() / std::max(1.0, out.g.max_frob()));
  out.diag.under_resolved = out.diag.tail > options.resolution_tol;
  out.diag.method = method;
  if (out.diag.under_resolved && !options.allow_under_resolved)
    throw ResolutionError("relative Laurent tail " + format_double(out.diag.tail) +
                          " above resolution tolerance at M = " +
                          std::to_string(truncation) + "; increase the truncation");
  return out;
}

void validate_inputs(const JumpMatrix& jump, int truncation) {
  jump.validate();
  if (!is_power_of_two(truncation) || truncation < 16 || truncation > 8192)
    throw ValidationError("truncation must be a power of two in [16, 8192], got " +
                          std::to_string(truncation));
}

}  // namespace

void JumpMatrix::validate() const {
  if (!evaluator) throw ValidationError("jump evaluator is empty");
  if (!(r_in > 0.0) || !(r_in < 1.0) || !(r_out > 1.0))
    throw ValidationError("jump analyticity annulus must satisfy 0 < r_in < 1 < r_out");
}

RhpSolution solve_collocation(const JumpMatrix& jump, int truncation,
                              const SolveOptions& options) {
  validate_inputs(jump, truncation);
  const auto jm = sample_jump(jump, truncation, options.det_tol);
  const EntrySpectra jm_modes = sample_modes(jm);

  // Unknowns: rows of mu_m for m in [-M, -1].  The two rows of mu satisfy the
  // same linear system with different right-hand sides, so one LU serves both.
  // Row index (k, i) and column index (m, j) both map to 2*(-1 - mode) + entry.
  const int dim = 2 * truncation;
  Eigen::MatrixXcd op(dim, dim);
  for (int k = -truncation; k <= -1; ++k) {
    for (int m = -truncation; m <= -1; ++m) {
      const Mat2 jmode = mode_at(jm_modes, k - m);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          op(2 * (-1 - k) + i, 2 * (-1 - m) + j) =
              jmode.entry(j, i) + (k == m && i == j ? 1.0 : 0.0);
    }
  }
  Eigen::MatrixXcd rhs(dim, 2);
  for (int k = -truncation; k <= -1; ++k) {
    const Mat2 jmode = mode_at(jm_modes, k);
    for (int i = 0; i < 2; ++i)
      for (int r = 0; r < 2; ++r) rhs(2 * (-1 - k) + i, r) = -jmode.entry(r, i);
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(op);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw IllConditionedError(
        "collocation operator numerically singular (rcond = " + format_double(rcond) +
        "): discretization failure, increase the truncation");
  const Eigen::MatrixXcd solution = lu.solve(rhs);

  std::vector<Mat2> mu_modes(static_cast<std::size_t>(truncation));
  for (int m = -truncation; m <= -1; ++m)
    for (int r = 0; r < 2; ++r)
      for (int j = 0; j < 2; ++j)
        set_entry(mu_modes[static_cast<std::size_t>(-1 - m)], r, j,
                  solution(2 * (-1 - m) + j, r));
  return assemble_solution(truncation, jm, mu_modes, options, "collocation");
}

RhpSolution solve_neumann(const JumpMatrix& jump, int truncation, int max_terms,
                          double tol, const SolveOptions& options) {
  validate_inputs(jump, truncation);
  if (max_terms < 1) throw ValidationError("max_terms must be positive");
  if (!(tol > 0.0)) throw ValidationError("convergence tolerance must be positive");
  const auto jm = sample_jump(jump, truncation, options.det_tol);

  double sup_norm = 0.0;
  for (const auto& m : jm) sup_norm = std::max(sup_norm, m.frob());
  if (!(sup_norm < 1.0))
    throw DivergenceError("jump is not a small-norm perturbation: max ||J - I||_F = " +
                          format_double(sup_norm) + " >= 1");

  const int padded = 4 * truncation;
  const EntrySpectra jm_modes = sample_modes(jm);
  const auto jm_samples = synthesize(padded, -truncation, truncation - 1, [&](int k) {
    return mode_at(jm_modes, k);
  });

  std::vector<Mat2> current(static_cast<std::size_t>(truncation), Mat2{});
  bool converged = false;
  for (int term = 0; term < max_terms && !converged; ++term) {
    const auto mu_samples = synthesize(padded, -truncation, 0, [&](int k) {
      if (k == 0) return Mat2::identity();
      return current[static_cast<std::size_t>(-1 - k)];
    });
    std::vector<Mat2> g_samples(static_cast<std::size_t>(padded));
    for (std::size_t p = 0; p < g_samples.size(); ++p)
      g_samples[p] = mu_samples[p] * jm_samples[p];
    const EntrySpectra g_modes = sample_modes(g_samples);

    double change = 0.0;
    for (int k = -truncation; k <= -1; ++k) {
      const Mat2 updated = Cx(-1.0, 0.0) * mode_at(g_modes, k);
      change = std::max(change,
                        (updated - current[static_cast<std::size_t>(-1 - k)]).max_abs());
      current[static_cast<std::size_t>(-1 - k)] = updated;
    }
    if (!std::isfinite(change)) throw NumericalError("iteration produced non-finite modes");
    converged = change < tol;
  }
  if (!converged)
    throw DivergenceError("small-norm iteration did not reach tolerance " +
                          format_double(tol) + " within " + std::to_string(max_terms) +
                          " terms");
  return assemble_solution(truncation, jm, current, options, "neumann");
}

RhpSolution solve_adaptive(const JumpMatrix& jump, const SolveOptions& options,
                           double oscillation_estimate) {
  int truncation = std::max({options.min_modes, 16,
                             next_power_of_two(16.0 * oscillation_estimate)});
  if (!is_power_of_two(truncation)) truncation = next_power_of_two(truncation);

  SolveOptions inner = options;
  inner.allow_under_resolved = true;
  RhpSolution best = solve_collocation(jump, truncation, inner);
  while (best.diag.under_resolved && 2 * truncation <= options.max_modes) {
    truncation *= 2;
    best = solve_collocation(jump, truncation, inner);
  }
  if (best.diag.under_resolved && !options.allow_under_resolved)
    throw ResolutionError("solution still under-resolved at the mode cap M = " +
                          std::to_string(truncation) + " (tail " +
                          format_double(best.diag.tail) + ")");
  return best;
}

Mat2 evaluate_off_contour(const RhpSolution& solution, std::complex<double> Z) {
  const double radius = std::abs(Z);
  if (std::abs(radius - 1.0) < 1e-6)
    throw NearContourError("evaluation point within 1e-6 of the contour; use the "
                           "stored boundary values instead");
  const int order = solution.g.truncation();
  if (radius < 1.0) {
    Mat2 acc{};
    for (int k = order; k >= 0; --k) acc = Z * acc + solution.g.at(k);
    return Mat2::identity() + acc;
  }
  const Cx w = 1.0 / Z;
  Mat2 acc{};
  for (int k = order; k >= 1; --k) acc = w * acc + solution.g.at(-k);
  return Mat2::identity() - w * acc;
}

PotentialExtract extract_potential(const RhpSolution& solution, double structure_tol) {
  const Mat2& r1 = solution.r1;
  const Cx psi = Cx(0.0, 2.0) * r1.b;
  const Cx mass = Cx(0.0, 2.0) * r1.d;
  // Judged relative to the size of R1 itself: rescaled finite-size problems
  // carry R1 entries of order the contour radius, and rounding noise in the
  // identities scales with them.
  const double defect = std::max({std::abs(r1.c + std::conj(r1.b)),
                                  std::abs(r1.a + r1.d), std::abs(mass.imag())}) /
                        std::max(1.0, r1.frob());
  if (!(defect <= structure_tol))
    throw StructureError("R1 violates the Schwartz structure (relative defect " +
                         format_double(defect) + "); the jump is likely malformed");
  PotentialExtract out;
  out.psi = psi;
  out.m = mass.real();
  out.structure_defect = defect;
  return out;
}

std::string diagnostics_json(const RhpSolution& solution) {
  nlohmann::json j;
  j["modes"] = solution.diag.modes;
  j["jump_residual"] = solution.diag.jump_residual;
  j["tail"] = solution.diag.tail;
  j["under_resolved"] = solution.diag.under_resolved;
  j["method"] = solution.diag.method;
  j["r1"] = {{"a", {solution.r1.a.real(), solution.r1.a.imag()}},
             {"b", {solution.r1.b.real(), solution.r1.b.imag()}},
             {"c", {solution.r1.c.real(), solution.r1.c.imag()}},
             {"d", {solution.r1.d.real(), solution.r1.d.imag()}}};
  return j.dump();
}

}  // namespace nlse
