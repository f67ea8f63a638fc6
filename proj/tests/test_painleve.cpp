// Transcendent-equation verification layer: manufactured extractions with
// known closed forms, hand-substituted residuals, degeneracy detection, the
// field-equation residual, and the overdetermined consistency probe.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "nlse/darboux.hpp"
#include "nlse/errors.hpp"
#include "nlse/models.hpp"
#include "nlse/painleve.hpp"
#include "nlse/rhp.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

using Cx = std::complex<double>;

namespace {

nlse::SampledFunction sampled(const std::vector<double>& xs,
                              const std::function<Cx(double)>& f, int order = 2) {
  nlse::SampledFunction s;
  s.x = xs;
  s.f.reserve(xs.size());
  for (double x : xs) s.f.push_back(f(x));
  s.stencil_order = order;
  return s;
}

}  // namespace

TEST_CASE("sampled-function validation") {
  nlse::SampledFunction bad;
  bad.x = {0.0, 0.1, 0.3};  // non-uniform
  bad.f = {Cx(1, 0), Cx(1, 0), Cx(1, 0)};
  CHECK_THROWS_AS(bad.validate(), nlse::ValidationError);

  nlse::SampledFunction order;
  order.x = {0.0, 0.1, 0.2, 0.3};
  order.f.assign(4, Cx(1, 0));
  order.stencil_order = 3;
  CHECK_THROWS_AS(order.validate(), nlse::ValidationError);

  nlse::SampledFunction tiny;
  tiny.x = {0.0, 0.1};
  tiny.f.assign(2, Cx(1, 0));
  CHECK_THROWS_AS(tiny.validate(), nlse::ValidationError);
}

TEST_CASE("parameter set for the second transcendent: frozen values") {
  const auto params = nlse::pv_params(0.5, 2.0);
  CHECK(params.alpha == Cx(-32, 0));
  CHECK(params.beta == Cx(32, 0));
  CHECK(params.gamma == Cx(1, 0));
  CHECK(params.delta == Cx(-0.5, 0));
  CHECK(params.theta0 == Cx(0, 8));     // 2 i mu/zeta
  CHECK(params.theta1 == Cx(0, -8));
  CHECK(params.theta_inf == Cx(0, 0));
}

TEST_CASE("first extraction: psi = e^x / x^2 gives u identically 2") {
  // ln(x^2 psi) = x, so the logarithmic derivative is 1 and u = 2.
  const auto psi = sampled(nlse::linspace(1.0, 2.0, 201),
                           [](double x) { return std::exp(x) / (x * x); }, 4);
  const auto u = nlse::extract_u_piii(psi);
  REQUIRE(u.x.size() == psi.x.size() - 4);
  // Fourth-order stencils at h = 1/200 leave ~1e-8 truncation error.
  for (const auto& v : u.f) CHECK(std::abs(v - Cx(2, 0)) < 1e-7);
}

TEST_CASE("second extraction: psi = e^{cX}/X gives the constant Moebius image") {
  const Cx c(3.0, 0.0);
  const auto psi = sampled(nlse::linspace(0.5, 1.5, 201),
                           [&](double X) { return std::exp(c * X) / X; }, 4);
  const auto u = nlse::extract_u_pv(psi, 0.3);
  const Cx expected = c / (c - Cx(0, 0.6));  // L = c everywhere, shift 2 i zeta
  for (const auto& v : u.f) CHECK(std::abs(v - expected) < 1e-8);
}

TEST_CASE("first residual: hand value for u identically 1") {
  // With u = 1 every derivative vanishes and the residual is -4/x, whose
  // interior maximum sits at the first interior abscissa.
  const auto u = sampled(nlse::linspace(0.5, 3.0, 26), [](double) { return Cx(1, 0); });
  CHECK(nlse::piii_residual(u) == doctest::Approx(4.0 / 0.6).epsilon(1e-10));
}

TEST_CASE("second residual: hand value for u identically 2") {
  // u = 2, zeta = 1/2, mu = 1: residual(X) = |3 - 12/X^2 + 2i/X| on s = iX,
  // maximal at the first interior abscissa.
  const auto u = sampled(nlse::linspace(0.5, 3.0, 26), [](double) { return Cx(2, 0); });
  const auto params = nlse::pv_params(0.5, 1.0);
  const double X1 = 0.6;
  const double expected = std::abs(Cx(3.0 - 12.0 / (X1 * X1), 2.0 / X1));
  CHECK(nlse::pv_residual(u, params) == doctest::Approx(expected).epsilon(1e-10));
  // The branch sign only touches the (u')^2 term, absent for constant u.
  CHECK(nlse::pv_residual(u, params, false) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("cleared-denominator first gauge: hand value for u identically 1") {
  // All derivative terms vanish; the polynomial is -4u - 4xu^4 + 4x = -4 and
  // the term magnitudes sum to 4 + 8x, so the ratio 1/(1 + 2x) peaks at the
  // first interior abscissa.
  const auto u = sampled(nlse::linspace(0.5, 3.0, 26), [](double) { return Cx(1, 0); });
  CHECK(nlse::piii_residual_normalized(u) ==
        doctest::Approx(1.0 / (1.0 + 2.0 * 0.6)).epsilon(1e-12));
}

TEST_CASE("cleared-denominator second gauge: hand value for u identically 2") {
  // u = 2, zeta = 1/2, mu = 1 (alpha = -8, beta = 8, gamma = 1,
  // delta = -1/2): the polynomial reduces to 48 - 8s + 12s^2 on s = iX with
  // term magnitudes 48, 8X, 12X^2.
  const auto u = sampled(nlse::linspace(0.5, 3.0, 26), [](double) { return Cx(2, 0); });
  const auto params = nlse::pv_params(0.5, 1.0);
  double expected = 0.0;
  for (std::size_t i = 1; i + 1 < u.x.size(); ++i) {
    const double X = u.x[i];
    const Cx s(0.0, X);
    expected = std::max(expected, std::abs(48.0 - 8.0 * s + 12.0 * s * s) /
                                      (48.0 + 8.0 * X + 12.0 * X * X));
  }
  CHECK(nlse::pv_residual_normalized(u, params) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(nlse::pv_residual_normalized(u, params, false) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("unresolved spans flag pole passages and nothing else") {
  const auto smooth =
      sampled(nlse::linspace(0.0, 1.0, 51), [](double x) { return Cx(std::sin(x), 0); });
  CHECK(nlse::unresolved_spans(smooth).empty());

  // A simple pole between grid points: the samples flip from large negative
  // to large positive across one step, far beyond any resolvable increment.
  const auto pole = sampled(nlse::linspace(0.5, 1.5, 101),
                            [](double x) { return Cx(1.0 / (x - 1.005), 0); });
  const auto spans = nlse::unresolved_spans(pole);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].first < 1.005);
  CHECK(spans[0].second > 1.005);
  // Neighbouring flagged increments merge into the one interval.
  CHECK(spans[0].second - spans[0].first < 1.0);
}

TEST_CASE("span union sorts and merges overlaps") {
  const auto merged =
      nlse::merge_spans({{2.0, 3.0}, {0.0, 1.0}}, {{0.5, 1.5}, {5.0, 6.0}});
  REQUIRE(merged.size() == 3);
  CHECK(merged[0] == std::pair(0.0, 1.5));
  CHECK(merged[1] == std::pair(2.0, 3.0));
  CHECK(merged[2] == std::pair(5.0, 6.0));
  CHECK(nlse::merge_spans({}, {}).empty());
}

TEST_CASE("exclusion intervals restrict the gauge to the remaining abscissae") {
  const auto u = sampled(nlse::linspace(0.5, 3.0, 26), [](double) { return Cx(1, 0); });
  // Masking the left part moves the 1/(1 + 2x) peak to the first abscissa
  // past the interval.
  const double masked = nlse::piii_residual_normalized(u, {{0.0, 1.0}});
  CHECK(masked == doctest::Approx(1.0 / (1.0 + 2.0 * 1.1)).epsilon(1e-12));
  CHECK(masked < nlse::piii_residual_normalized(u));
  CHECK_THROWS_AS(nlse::piii_residual_normalized(u, {{0.0, 10.0}}),
                  nlse::NumericalError);
}

TEST_CASE("degeneracies are detected and named") {
  // A potential crossing zero on the grid.
  const auto crossing =
      sampled(nlse::linspace(1.0, 2.0, 21), [](double x) { return Cx(x - 1.5, 0); });
  CHECK_THROWS_AS(nlse::extract_u_piii(crossing), nlse::NumericalError);

  // Logarithmic derivative pinned at the pole condition L = 2 i zeta; the
  // grid must be fine enough that stencil error stays below the guard
  // threshold.
  const auto pole = sampled(nlse::linspace(0.5, 1.5, 201),
                            [](double X) { return std::exp(Cx(0, 0.6) * X) / X; }, 4);
  CHECK_THROWS_AS(nlse::extract_u_pv(pole, 0.3), nlse::NumericalError);

  // Residual evaluation refuses u near zero.
  const auto vanish = sampled(nlse::linspace(0.5, 1.5, 21), [](double) { return Cx(0, 0); });
  CHECK_THROWS_AS(nlse::piii_residual(vanish), nlse::NumericalError);
}

TEST_CASE("field-equation residual: zero field and closed-form soliton") {
  nlse::WaveField zero;
  zero.x = nlse::linspace(-1.0, 1.0, 9);
  zero.t = nlse::linspace(0.0, 0.4, 9);
  zero.psi.assign(81, Cx(0, 0));
  CHECK(nlse::nls_residual(zero) == 0.0);

  nlse::SpectralData one;
  one.lambda = {Cx(0.3, 1.0)};
  one.p = {Cx(1, 0)};
  double previous = 0.0;
  std::vector<double> residuals;
  for (int count : {17, 33}) {
    const auto xs = nlse::linspace(-1.0, 1.0, count);
    const auto field = nlse::evaluate_field_serial(one, xs, xs, {});
    residuals.push_back(nlse::nls_residual(field));
  }
  previous = residuals[0] / residuals[1];
  CHECK(previous > 3.0);  // second-order stencils: ratio approaches 4
  CHECK(previous < 5.0);
}

TEST_CASE("field-equation residual rejects malformed grids") {
  nlse::WaveField tiny;
  tiny.x = nlse::linspace(-1.0, 1.0, 3);
  tiny.t = nlse::linspace(0.0, 1.0, 5);
  tiny.psi.assign(15, Cx(0, 0));
  CHECK_THROWS_AS(nlse::nls_residual(tiny), nlse::ValidationError);
}

TEST_CASE("overdetermined consistency probe for the second model") {
  const double zeta = 0.3, mu = 2.0;
  const auto solve_at = [&](double X) {
    nlse::ModelParams params;
    params.kind = nlse::ModelKind::pv;
    params.X = X;
    params.T = 0.0;
    params.zeta = zeta;
    params.mu_mean = mu;
    return nlse::solve_collocation(nlse::pv_jump(params), 64);
  };
  const std::vector<Cx> samples{Cx(3, 0), Cx(0, 2)};
  const auto probe = nlse::lax_residual_pv(solve_at, 0.5, 1e-3, zeta, mu, samples, 1e-4);
  CHECK(probe.residual < 1e-3);
  CHECK(probe.trace_defect < 1e-10);

  // Sample points on the contour or at the coefficient poles are refused.
  CHECK_THROWS_AS(nlse::lax_residual_pv(solve_at, 0.5, 1e-3, zeta, mu,
                                        {Cx(1.0, 1e-8)}, 1e-4),
                  nlse::NearContourError);
  CHECK_THROWS_AS(nlse::lax_residual_pv(solve_at, 0.5, 1e-3, zeta, mu,
                                        {Cx(-zeta, 1e-9)}, 1e-4),
                  nlse::NearContourError);
}
