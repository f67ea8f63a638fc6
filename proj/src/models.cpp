#include "nlse/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlse/errors.hpp"
#include "nlse/numstr.hpp"

namespace nlse {
namespace {

using Cx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPoleFloor = 1e-12;

/// Sandwich e^{-i phi sigma3} Q e^{i phi sigma3} with Q = [[1,1],[-1,1]]/sqrt2:
/// only the off-diagonal entries pick up the conjugating phases.
Mat2 phase_sandwich(Cx phi) {
  const Cx up = std::exp(Cx(0.0, -2.0) * phi);
  return {Cx(kInvSqrt2, 0.0), kInvSqrt2 * up, -kInvSqrt2 / up, Cx(kInvSqrt2, 0.0)};
}

}  // namespace

const char* model_name(ModelKind kind) {
  return kind == ModelKind::piii ? "piii" : "pv";
}

void ModelParams::validate() const {
  if (!std::isfinite(X) || !std::isfinite(T))
    throw ValidationError("model parameters X, T must be finite");
  if (kind == ModelKind::pv) {
    if (!(zeta > 0.0) || !(zeta < 1.0))
      throw ValidationError("zeta must lie in (0, 1), got " + format_double(zeta));
    if (!(mu_mean > 0.0))
      throw ValidationError("mu_mean must be positive, got " + format_double(mu_mean));
  }
}

std::complex<double> log_blaschke(const std::vector<Cx>& eigenvalues, Cx z) {
  Cx sum{};
  for (const Cx lambda : eigenvalues) {
    const Cx zero_gap = z - lambda;
    const Cx pole_gap = z - std::conj(lambda);
    if (std::abs(pole_gap) < kPoleFloor)
      throw ValidationError("evaluation point within 1e-12 of a pole at " +
                            format_complex(std::conj(lambda)));
    if (std::abs(zero_gap) < kPoleFloor)
      throw ValidationError("evaluation point within 1e-12 of a zero at " +
                            format_complex(lambda));
    sum += std::log(zero_gap) - std::log(pole_gap);
  }
  return sum;
}

std::complex<double> blaschke(const std::vector<Cx>& eigenvalues, Cx z) {
  return std::exp(log_blaschke(eigenvalues, z));
}

JumpMatrix piii_jump(const ModelParams& params) {
  if (params.kind != ModelKind::piii)
    throw ValidationError("piii_jump called with a non-matching model case");
  params.validate();
  const double X = params.X;
  const double T = params.T;
  JumpMatrix jump;
  jump.evaluator = [X, T](Cx Z) {
    return phase_sandwich(X * Z + T * Z * Z + 2.0 / Z);
  };
  jump.r_in = 7.0 / 8.0;
  jump.r_out = 9.0 / 8.0;
  jump.schwartz_symmetric = true;
  jump.label = "piii-model";
  return jump;
}

JumpMatrix pv_jump(const ModelParams& params) {
  if (params.kind != ModelKind::pv)
    throw ValidationError("pv_jump called with a non-matching model case");
  params.validate();
  const double X = params.X;
  const double T = params.T;
  const double zeta = params.zeta;
  const double ratio = params.mu_mean / zeta;
  JumpMatrix jump;
  jump.evaluator = [X, T, zeta, ratio](Cx Z) {
    return phase_sandwich(X * Z + T * Z * Z + ratio * std::log(1.0 + zeta / Z));
  };
  jump.r_in = 0.5 * (1.0 + zeta);
  jump.r_out = 0.5 * (3.0 - zeta);
  jump.schwartz_symmetric = true;
  jump.label = "pv-model";
  return jump;
}

JumpMatrix nsoliton_jump(const SpectralData& data, double x, double t, double radius) {
  data.validate();
  if (!(radius > 0.0)) throw ValidationError("contour radius must be positive");
  double extent = 0.0;
  for (const Cx lambda : data.lambda) extent = std::max(extent, std::abs(lambda));
  if (!(extent < radius))
    throw ValidationError("an eigenvalue of modulus " + format_double(extent) +
                          " lies on or outside the contour of radius " +
                          format_double(radius));
  const std::vector<Cx> eigenvalues = data.lambda;
  JumpMatrix jump;
  jump.evaluator = [eigenvalues, x, t, radius](Cx Z) {
    const Cx z = radius * Z;
    const Cx log_w = log_blaschke(eigenvalues, z) - Cx(0.0, 2.0) * (z * x + z * z * t);
    const Cx w = std::exp(log_w);
    return Mat2{Cx(kInvSqrt2, 0.0), kInvSqrt2 * w, -kInvSqrt2 / w, Cx(kInvSqrt2, 0.0)};
  };
  // Midpoint margin between the outermost eigenvalue pair and the contour.
  jump.r_in = 0.5 * (1.0 + extent / radius);
  jump.r_out = 2.0;
  jump.schwartz_symmetric = true;
  jump.label = "nsoliton-n" + std::to_string(data.n());
  return jump;
}

double ScalingMap::x_of(double X) const {
  return kind == ModelKind::piii ? 2.0 * X / (n * mu_mean) : X / n;
}

double ScalingMap::t_of(double T) const {
  return kind == ModelKind::piii ? 4.0 * T / (static_cast<double>(n) * n * mu_mean * mu_mean)
                                 : T / (static_cast<double>(n) * n);
}

double ScalingMap::X_of(double x) const {
  return kind == ModelKind::piii ? x * n * mu_mean / 2.0 : x * n;
}

double ScalingMap::T_of(double t) const {
  return kind == ModelKind::piii ? t * static_cast<double>(n) * n * mu_mean * mu_mean / 4.0
                                 : t * static_cast<double>(n) * n;
}

double ScalingMap::amplitude() const {
  return kind == ModelKind::piii ? 2.0 / (n * mu_mean) : 1.0 / n;
}

double ScalingMap::contour_radius() const {
  return kind == ModelKind::piii ? n * mu_mean / 2.0 : static_cast<double>(n);
}

WaveField ScalingMap::rescale(const WaveField& physical) const {
  WaveField out = physical;
  for (double& x : out.x) x = X_of(x);
  for (double& t : out.t) t = T_of(t);
  const double factor = amplitude();
  for (auto& value : out.psi) value *= factor;
  for (auto& value : out.mass) value *= factor;
  out.frame.kind = kind == ModelKind::piii ? FrameInfo::Kind::rescaled_piii
                                           : FrameInfo::Kind::rescaled_pv;
  out.frame.n = n;
  out.frame.mu_mean = mu_mean;
  return out;
}

ScalingMap scaling_map(ModelKind kind, int n, double mu_mean) {
  if (n < 1) throw ValidationError("soliton count must be at least 1");
  if (!(mu_mean > 0.0)) throw ValidationError("mu_mean must be positive");
  return ScalingMap{kind, n, mu_mean};
}

GoodSetFlags good_set_flags(const std::vector<double>& mu, const std::vector<double>& v,
                            double mu_mean, double delta, std::optional<double> zeta) {
  if (mu.empty() || mu.size() != v.size())
    throw ValidationError("amplitude and velocity samples must be non-empty and equal-sized");
  if (!(delta > 0.25) || !(delta < 0.5))
    throw ValidationError("delta must lie in (1/4, 1/2), got " + format_double(delta));
  const auto count = static_cast<double>(mu.size());
  const double single_bound = std::pow(count, delta);
  const double sum_bound = std::pow(count, 2.0 * delta);

  GoodSetFlags flags;
  flags.amplitudes_bounded = true;
  double total = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (!(std::abs(mu[j]) < single_bound) || !(std::abs(v[j]) < single_bound))
      flags.amplitudes_bounded = false;
    total += mu[j];
  }
  flags.sum_concentrated = std::abs(total - count * mu_mean) <= sum_bound;

  flags.resolvent_bounded = true;
  if (zeta) {
    const int net = 4 * static_cast<int>(mu.size());
    for (int p = 0; p < net && flags.resolvent_bounded; ++p) {
      const double angle = 2.0 * std::numbers::pi * p / net;
      const Cx Z(std::cos(angle), std::sin(angle));
      Cx sum{};
      for (std::size_t j = 0; j < mu.size(); ++j)
        sum += (mu[j] - mu_mean) / (Z + *zeta * static_cast<double>(j + 1) / count);
      if (!(std::abs(sum) <= sum_bound)) flags.resolvent_bounded = false;
    }
  }
  return flags;
}

}  // namespace nlse
