#include "nlse/painleve.hpp"

#include <cmath>
#include <string>

#include "nlse/errors.hpp"
#include "nlse/numstr.hpp"

namespace nlse {
namespace {

using Cx = std::complex<double>;

constexpr double kLogDerivativeFloor = 1e-8;
constexpr double kSingularFloor = 1e-10;

/// Centered first derivative at interior index i (order 2 or 4).
Cx derivative1(const SampledFunction& s, std::size_t i, double h) {
  if (s.stencil_order == 2) return (s.f[i + 1] - s.f[i - 1]) / (2.0 * h);
  return (-s.f[i + 2] + 8.0 * s.f[i + 1] - 8.0 * s.f[i - 1] + s.f[i - 2]) / (12.0 * h);
}

/// Centered second derivative at interior index i (order 2 or 4).
Cx derivative2(const SampledFunction& s, std::size_t i, double h) {
  if (s.stencil_order == 2) return (s.f[i + 1] - 2.0 * s.f[i] + s.f[i - 1]) / (h * h);
  return (-s.f[i + 2] + 16.0 * s.f[i + 1] - 30.0 * s.f[i] + 16.0 * s.f[i - 1] -
          s.f[i - 2]) /
         (12.0 * h * h);
}

[[noreturn]] void singular_at(const std::string& what, double x) {
  throw NumericalError(what + " at abscissa " + format_double(x));
}

}  // namespace

double SampledFunction::step() const {
  validate();
  return x[1] - x[0];
}

void SampledFunction::validate() const {
  if (stencil_order != 2 && stencil_order != 4)
    throw ValidationError("stencil order must be 2 or 4");
  if (x.size() != f.size()) throw ValidationError("abscissae/value size mismatch");
  if (x.size() < static_cast<std::size_t>(stencil_order + 1))
    throw ValidationError("need at least stencil_order + 1 sample points");
  const double h = x[1] - x[0];
  if (!(h > 0.0) && !(h < 0.0)) throw ValidationError("grid must be strictly monotone");
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double gap = x[i] - x[i - 1];
    if (gap * h <= 0.0) throw ValidationError("grid must be strictly monotone");
    if (std::abs(gap - h) > 1e-9 * std::abs(h))
      throw ValidationError("grid must be uniform for the difference stencils");
  }
}

PainleveParams pv_params(double zeta, double mu_mean) {
  if (!(zeta > 0.0) || !(zeta < 1.0))
    throw ValidationError("zeta must lie in (0, 1), got " + format_double(zeta));
  if (!(mu_mean > 0.0)) throw ValidationError("mu_mean must be positive");
  PainleveParams p;
  p.kind = ModelKind::pv;
  p.theta0 = Cx(0.0, 2.0 * mu_mean / zeta);
  p.theta1 = -p.theta0;
  p.theta_inf = Cx(0.0, 0.0);
  const Cx diff = p.theta0 - p.theta1;
  p.alpha = (diff + p.theta_inf) * (diff + p.theta_inf) / 8.0;
  p.beta = -(diff - p.theta_inf) * (diff - p.theta_inf) / 8.0;
  p.gamma = 1.0 - p.theta0 - p.theta1;
  p.delta = Cx(-0.5, 0.0);
  p.zeta = zeta;
  p.mu_mean = mu_mean;
  return p;
}

SampledFunction extract_u_piii(const SampledFunction& psi_samples) {
  psi_samples.validate();
  const double h = psi_samples.step();
  const int margin = psi_samples.margin();
  for (double x : psi_samples.x)
    if (!(x > 0.0)) throw ValidationError("the extraction grid must be positive");

  SampledFunction u;
  u.stencil_order = psi_samples.stencil_order;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < psi_samples.x.size(); ++i) {
    const double x = psi_samples.x[i];
    const Cx psi = psi_samples.f[i];
    if (std::abs(psi) < kSingularFloor) singular_at("potential vanishes", x);
    const Cx log_derivative = 2.0 / x + derivative1(psi_samples, i, h) / psi;
    if (std::abs(log_derivative) < kLogDerivativeFloor)
      singular_at("logarithmic derivative near zero", x);
    u.x.push_back(x);
    u.f.push_back(2.0 / log_derivative);
  }
  u.validate();
  return u;
}

SampledFunction extract_u_pv(const SampledFunction& psi_samples, double zeta) {
  psi_samples.validate();
  if (!(zeta > 0.0) || !(zeta < 1.0)) throw ValidationError("zeta must lie in (0, 1)");
  const double h = psi_samples.step();
  const int margin = psi_samples.margin();
  for (double x : psi_samples.x)
    if (x == 0.0) throw ValidationError("the extraction grid must avoid X = 0");

  SampledFunction u;
  u.stencil_order = psi_samples.stencil_order;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < psi_samples.x.size(); ++i) {
    const double X = psi_samples.x[i];
    const Cx psi = psi_samples.f[i];
    if (std::abs(psi) < kSingularFloor) singular_at("potential vanishes", X);
    const Cx log_derivative = 1.0 / X + derivative1(psi_samples, i, h) / psi;
    if (std::abs(log_derivative) < kLogDerivativeFloor)
      singular_at("logarithmic derivative near zero", X);
    const Cx shift(0.0, 2.0 * zeta);
    if (std::abs(log_derivative - shift) < kLogDerivativeFloor)
      singular_at("logarithmic derivative at the pole condition 2 i zeta", X);
    u.x.push_back(X);
    u.f.push_back(log_derivative / (log_derivative - shift));
  }
  u.validate();
  return u;
}

double piii_residual(const SampledFunction& u) {
  u.validate();
  const double h = u.step();
  const int margin = u.margin();
  double worst = 0.0;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < u.x.size(); ++i) {
    const double x = u.x[i];
    const Cx value = u.f[i];
    if (std::abs(value) < kSingularFloor) singular_at("u vanishes", x);
    const Cx d1 = derivative1(u, i, h);
    const Cx d2 = derivative2(u, i, h);
    const Cx residual = d2 - d1 * d1 / value + d1 / x - 4.0 / x -
                        4.0 * value * value * value + 4.0 / value;
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

double pv_residual(const SampledFunction& u, const PainleveParams& params,
                   bool plus_branch) {
  u.validate();
  if (!(params.zeta > 0.0) || !(params.zeta < 1.0))
    throw ValidationError("params.zeta must lie in (0, 1)");
  const double h = u.step();
  const int margin = u.margin();
  // The transcendent argument is s = 2 i zeta X; derivatives in X are
  // rescaled by the constant factor.
  const Cx scale = Cx(0.0, 2.0 * params.zeta);
  const double sign = plus_branch ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < u.x.size(); ++i) {
    const Cx s = scale * u.x[i];
    const Cx value = u.f[i];
    if (std::abs(value) < kSingularFloor) singular_at("u vanishes", u.x[i]);
    if (std::abs(value - 1.0) < kSingularFloor) singular_at("u hits 1", u.x[i]);
    const Cx us = derivative1(u, i, h) / scale;
    const Cx uss = derivative2(u, i, h) / (scale * scale);
    const Cx rhs = (0.5 / value + sign / (value - 1.0)) * us * us - us / s +
                   (value - 1.0) * (value - 1.0) *
                       (params.alpha * value + params.beta / value) / (s * s) +
                   params.gamma * value / s +
                   params.delta * value * (value + 1.0) / (value - 1.0);
    worst = std::max(worst, std::abs(uss - rhs));
  }
  return worst;
}

std::vector<std::pair<double, double>> unresolved_spans(const SampledFunction& u,
                                                        double threshold,
                                                        double radius) {
  u.validate();
  if (!(threshold > 0.0)) throw ValidationError("threshold must be positive");
  if (!(radius >= 0.0)) throw ValidationError("radius must be non-negative");
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < u.x.size(); ++i) {
    const double jump = std::abs(u.f[i + 1] - u.f[i]) /
                        (1.0 + std::max(std::abs(u.f[i]), std::abs(u.f[i + 1])));
    if (jump <= threshold) continue;
    const double mid = 0.5 * (u.x[i] + u.x[i + 1]);
    if (!spans.empty() && mid - radius <= spans.back().second)
      spans.back().second = mid + radius;
    else
      spans.emplace_back(mid - radius, mid + radius);
  }
  return spans;
}

std::vector<std::pair<double, double>> merge_spans(
    std::vector<std::pair<double, double>> a,
    const std::vector<std::pair<double, double>>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& span : a) {
    if (!merged.empty() && span.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, span.second);
    else
      merged.push_back(span);
  }
  return merged;
}

namespace {

bool excluded_at(double x, const std::vector<std::pair<double, double>>& exclude) {
  for (const auto& [lo, hi] : exclude)
    if (x >= lo && x <= hi) return true;
  return false;
}

}  // namespace

double piii_residual_normalized(const SampledFunction& u,
                                const std::vector<std::pair<double, double>>& exclude) {
  u.validate();
  const double h = u.step();
  const int margin = u.margin();
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < u.x.size(); ++i) {
    const double x = u.x[i];
    if (excluded_at(x, exclude)) continue;
    any = true;
    const Cx value = u.f[i];
    const Cx d1 = derivative1(u, i, h);
    const Cx d2 = derivative2(u, i, h);
    const Cx terms[] = {x * value * d2,
                        -x * d1 * d1,
                        value * d1,
                        -4.0 * value,
                        -4.0 * x * value * value * value * value,
                        Cx(4.0 * x, 0.0)};
    Cx total = 0.0;
    double magnitude = 0.0;
    for (const Cx& term : terms) {
      total += term;
      magnitude += std::abs(term);
    }
    if (magnitude == 0.0) continue;
    worst = std::max(worst, std::abs(total) / magnitude);
  }
  if (!any)
    throw NumericalError("every abscissa fell inside an excluded interval");
  return worst;
}

double pv_residual_normalized(const SampledFunction& u, const PainleveParams& params,
                              bool plus_branch,
                              const std::vector<std::pair<double, double>>& exclude) {
  u.validate();
  if (!(params.zeta > 0.0) || !(params.zeta < 1.0))
    throw ValidationError("params.zeta must lie in (0, 1)");
  const double h = u.step();
  const int margin = u.margin();
  const Cx scale = Cx(0.0, 2.0 * params.zeta);
  const double sign = plus_branch ? 1.0 : -1.0;
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = static_cast<std::size_t>(margin);
       i + static_cast<std::size_t>(margin) < u.x.size(); ++i) {
    if (excluded_at(u.x[i], exclude)) continue;
    any = true;
    const Cx s = scale * u.x[i];
    const Cx value = u.f[i];
    const Cx shifted = value - 1.0;
    const Cx us = derivative1(u, i, h) / scale;
    const Cx uss = derivative2(u, i, h) / (scale * scale);
    const Cx terms[] = {2.0 * s * s * value * shifted * uss,
                        -s * s * (shifted + 2.0 * sign * value) * us * us,
                        2.0 * s * value * shifted * us,
                        -2.0 * shifted * shifted * shifted *
                            (params.alpha * value * value + params.beta),
                        -2.0 * params.gamma * s * value * value * shifted,
                        -2.0 * params.delta * s * s * value * value * (value + 1.0)};
    Cx total = 0.0;
    double magnitude = 0.0;
    for (const Cx& term : terms) {
      total += term;
      magnitude += std::abs(term);
    }
    if (magnitude == 0.0) continue;
    worst = std::max(worst, std::abs(total) / magnitude);
  }
  if (!any)
    throw NumericalError("every abscissa fell inside an excluded interval");
  return worst;
}

double nls_residual(const WaveField& field) {
  field.validate();
  const std::size_t nx = field.x.size();
  const std::size_t nt = field.t.size();
  if (nx < 5 || nt < 5)
    throw ValidationError("need at least 5 points per axis for the stencils");
  const double hx = field.x[1] - field.x[0];
  const double ht = field.t[1] - field.t[0];
  for (std::size_t i = 1; i < nx; ++i)
    if (std::abs(field.x[i] - field.x[i - 1] - hx) > 1e-9 * std::abs(hx))
      throw ValidationError("x grid must be uniform");
  for (std::size_t i = 1; i < nt; ++i)
    if (std::abs(field.t[i] - field.t[i - 1] - ht) > 1e-9 * std::abs(ht))
      throw ValidationError("t grid must be uniform");

  const auto psi = [&](std::size_t it, std::size_t ix) {
    return field.psi[it * nx + ix];
  };
  double worst = 0.0;
  for (std::size_t it = 1; it + 1 < nt; ++it) {
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      const Cx center = psi(it, ix);
      const Cx time_derivative = (psi(it + 1, ix) - psi(it - 1, ix)) / (2.0 * ht);
      const Cx space_curvature =
          (psi(it, ix + 1) - 2.0 * center + psi(it, ix - 1)) / (hx * hx);
      const Cx residual = Cx(0.0, 1.0) * time_derivative + 0.5 * space_curvature +
                          std::norm(center) * center;
      worst = std::max(worst, std::abs(residual));
    }
  }
  return worst;
}

LaxProbe lax_residual_pv(const std::function<RhpSolution(double)>& solve_at, double X,
                         double step_x, double zeta, double mu_mean,
                         const std::vector<Cx>& Z_samples, double step_z) {
  if (!solve_at) throw ValidationError("solver callback is empty");
  if (!(step_x > 0.0) || !(step_z > 0.0))
    throw ValidationError("difference steps must be positive");
  if (!(zeta > 0.0) || !(zeta < 1.0)) throw ValidationError("zeta must lie in (0, 1)");
  if (!(mu_mean > 0.0)) throw ValidationError("mu_mean must be positive");
  if (Z_samples.empty()) throw ValidationError("need at least one Z sample");
  for (const Cx Z : Z_samples) {
    if (std::abs(std::abs(Z) - 1.0) < 1e-6 + step_z)
      throw NearContourError("Z sample too close to the contour: " + format_complex(Z));
    if (std::abs(Z) < 10.0 * step_z || std::abs(Z + zeta) < 10.0 * step_z)
      throw NearContourError("Z sample too close to a branch point: " + format_complex(Z));
  }

  const RhpSolution below = solve_at(X - step_x);
  const RhpSolution center = solve_at(X);
  const RhpSolution above = solve_at(X + step_x);

  const Mat2 r1 = center.r1;
  // The residue at -zeta is (d/dX)(X R1)/zeta - i (mu/zeta) sigma3; the one at
  // the origin follows from the residue sum i X [sigma3, R1].
  const Mat2 d_xr1 =
      (1.0 / (2.0 * step_x * zeta)) * ((X + step_x) * above.r1 - (X - step_x) * below.r1);
  const double ratio = mu_mean / zeta;

  const Mat2 sigma3{Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
  const Mat2 commutator{Cx(0, 0), 2.0 * r1.b, -2.0 * r1.c, Cx(0, 0)};
  const Mat2 ratio_sigma3 = Cx(0.0, ratio) * sigma3;

  const auto wave = [&](Cx Z) {
    const Cx phi = X * Z + ratio * std::log(1.0 + zeta / Z);
    const Mat2 phase{std::exp(Cx(0.0, -1.0) * phi), Cx(0, 0), Cx(0, 0),
                     std::exp(Cx(0.0, 1.0) * phi)};
    return evaluate_off_contour(center, Z) * phase;
  };

  LaxProbe probe;
  for (const Cx Z : Z_samples) {
    const Mat2 lambda = Cx(0.0, -X) * sigma3 +
                        (1.0 / Z) * (Cx(0.0, X) * commutator - d_xr1 + ratio_sigma3) +
                        (1.0 / (Z + zeta)) * (d_xr1 - ratio_sigma3);
    const Mat2 dw = (1.0 / (2.0 * step_z)) * (wave(Z + step_z) - wave(Z - step_z));
    probe.residual = std::max(probe.residual, (dw - lambda * wave(Z)).frob());
    probe.trace_defect = std::max(probe.trace_defect, std::abs(lambda.a + lambda.d));
  }
  return probe;
}

}  // namespace nlse
