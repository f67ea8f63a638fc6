// Acceptance gate for the laboratory.  Each criterion prints exactly one
// PASS/FAIL line with its pinned tolerance and the measured quantity;
// `--only <name>` runs a single criterion (that is how ctest registers them).
// The process exits 0 only when every executed criterion passed.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nlse/darboux.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"
#include "nlse/laurent.hpp"
#include "nlse/models.hpp"
#include "nlse/painleve.hpp"
#include "nlse/residue_oracle.hpp"
#include "nlse/rhp.hpp"
#include "nlse/rng.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

namespace {

using Cx = std::complex<double>;
using nlse::Mat2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double mat_dist(const Mat2& a, const Mat2& b) {
  return (a + Cx(-1.0, 0.0) * b).frob();
}

Cx model_origin(nlse::ModelKind kind, double zeta, double mu_mean, int modes) {
  nlse::ModelParams params;
  params.kind = kind;
  params.X = 0.0;
  params.T = 0.0;
  params.zeta = zeta;
  params.mu_mean = mu_mean;
  const auto jump =
      kind == nlse::ModelKind::piii ? nlse::piii_jump(params) : nlse::pv_jump(params);
  return nlse::extract_potential(nlse::solve_collocation(jump, modes)).psi;
}

nlse::WaveField model_field(nlse::ModelKind kind, const std::vector<double>& X,
                            const std::vector<double>& T, double zeta, double mu_mean,
                            int modes) {
  nlse::WaveField field;
  field.x = X;
  field.t = T;
  field.psi.assign(X.size() * T.size(), Cx{});
  nlse::parallel_for(nlse::Exec::parallel, field.psi.size(), [&](std::size_t flat) {
    nlse::ModelParams params;
    params.kind = kind;
    params.X = X[flat % X.size()];
    params.T = T[flat / X.size()];
    params.zeta = zeta;
    params.mu_mean = mu_mean;
    const auto jump =
        kind == nlse::ModelKind::piii ? nlse::piii_jump(params) : nlse::pv_jump(params);
    field.psi[flat] = nlse::extract_potential(nlse::solve_collocation(jump, modes)).psi;
  });
  return field;
}

// ---------------------------------------------------------------- criteria

Outcome peak_piii() {
  const double tol = 1e-4;
  const double value = std::abs(model_origin(nlse::ModelKind::piii, 0.0, 2.0, 128));
  std::ostringstream s;
  s << "|Psi(0,0)| = " << value << ", target 4 within " << tol << " (modes 128)";
  return {std::abs(value - 4.0) < tol, s.str()};
}

Outcome peak_pv() {
  const double tol = 1e-4;
  const double value = std::abs(model_origin(nlse::ModelKind::pv, 0.3, 4.0, 128));
  std::ostringstream s;
  s << "|Psi(0,0)| = " << value << ", target 8 within " << tol
    << " (zeta 0.3, amplitude mean 4, modes 128)";
  return {std::abs(value - 8.0) < tol, s.str()};
}

Outcome extremal_peak() {
  const double tol = 1e-8;
  nlse::RandomEnsembleConfig config;
  config.amplitude = nlse::Distribution::parse("chi2:4");
  config.velocity = nlse::Distribution::parse("gauss:0:15");
  config.seed = 20240822;
  config.realizations = 10;
  double worst = 0.0;
  int worst_bits = 53;
  for (int n : {10, 50}) {
    config.n = n;
    for (int r = 0; r < config.realizations; ++r) {
      const auto data = nlse::sample_ensemble(config, r);
      const int bits = nlse::calibrate_bits(data, tol);
      const Cx peak = nlse::darboux_evaluate(data, 0.0, 0.0,
                                             nlse::PrecisionPolicy::fixed_bits(bits));
      const double target = nlse::extremal_peak(data);
      const double rel = std::abs(std::abs(peak) - target) / target;
      if (rel > worst) {
        worst = rel;
        worst_bits = bits;
      }
    }
  }
  std::ostringstream s;
  s << "max relative peak defect = " << worst << " over 2x10 realizations (N in {10,50}), "
    << "tolerance " << tol << ", deepest ladder rung used " << worst_bits << " bits";
  return {worst < tol, s.str()};
}

Outcome dressing_vs_oracle() {
  const double tol = 1e-10;
  const auto xs = nlse::linspace(-2.0, 2.0, 21);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    nlse::RandomEnsembleConfig config;
    config.n = 2 + (k % 7);
    // Rate 4 keeps the sampled amplitudes small enough that the oracle's pole
    // linear system (entries growing like e^{2 mu x} across the grid) stays
    // well inside its conditioning guard; both evaluation routes are unchanged.
    config.amplitude = nlse::Distribution::parse("exp:4");
    config.velocity = nlse::Distribution::parse("gauss:0:1");
    config.seed = 100 + static_cast<std::uint64_t>(k);
    config.realizations = 1;
    const auto data = nlse::sample_ensemble(config, 0);
    for (double t : {0.0, 0.1}) {
      for (double x : xs) {
        const Cx dressed = nlse::darboux_evaluate(data, x, t);  // binary64 chain
        const Cx oracle = nlse::residue_oracle_evaluate(data, x, t).psi;
        worst = std::max(worst, std::abs(dressed - oracle));
      }
    }
  }
  std::ostringstream s;
  s << "max |dressing - pole-system oracle| = " << worst
    << " over 20 datasets (N <= 8), 21-point grid, t in {0, 0.1}, tolerance " << tol;
  return {worst < tol, s.str()};
}

Outcome one_soliton_closed_form() {
  const double tol = 1e-12;
  double worst = 0.0;
  for (double eta : {0.5, 1.0, 2.0}) {
    nlse::SpectralData data;
    data.lambda = {Cx(0.0, eta)};
    data.p = {Cx(1, 0)};
    for (double x : nlse::linspace(-5.0, 5.0, 101)) {
      const double got = std::abs(nlse::darboux_evaluate(data, x, 0.0));
      const double want = 2.0 * eta / std::cosh(2.0 * eta * x);
      worst = std::max(worst, std::abs(got - want));
    }
  }
  std::ostringstream s;
  s << "max modulus defect vs 2 eta sech(2 eta x) = " << worst
    << " (eta in {0.5,1,2}, 101 points), tolerance " << tol;
  return {worst < tol, s.str()};
}

Outcome universality_convergence() {
  const std::vector<int> sizes{25, 50, 100};
  const auto X = nlse::linspace(-3.0, 3.0, 121);
  bool pass = true;
  std::ostringstream s;
  for (const auto kind : {nlse::ModelKind::piii, nlse::ModelKind::pv}) {
    nlse::RandomEnsembleConfig config;
    config.n = 1;
    config.amplitude = nlse::Distribution::parse("chi2:4");
    config.velocity = nlse::Distribution::parse("gauss:0:15");
    if (kind == nlse::ModelKind::pv) config.zeta = 0.3;
    config.seed = 424242;
    config.realizations = 10;
    const auto report = nlse::run_universality(config, kind, sizes, X, 0.0, 128);
    s << nlse::model_name(kind) << " mean L2:";
    double previous = 1e300;
    for (int n : sizes) {
      const double mean = report.mean_error(n);
      s << ' ' << mean;
      if (!(mean < previous)) pass = false;
      previous = mean;
    }
    if (!report.warnings.empty())
      s << " [" << report.warnings.size() << " realization(s) excluded]";
    s << ";  ";
  }
  s << "requirement: strictly decreasing over N in {25,50,100}";
  return {pass, s.str()};
}

Outcome nls_residual_order() {
  // The coarsest grid must already sit in the asymptotic regime of the
  // second-order stencils; h = 1/16 is pre-asymptotic for this field.
  const double lo = 3.5, hi = 4.5;
  std::vector<double> residuals;
  for (int count : {33, 65, 129}) {
    const auto X = nlse::linspace(-1.0, 1.0, count);
    residuals.push_back(
        nlse::nls_residual(model_field(nlse::ModelKind::piii, X, X, 0.0, 2.0, 64)));
  }
  const double r1 = residuals[0] / residuals[1];
  const double r2 = residuals[1] / residuals[2];
  std::ostringstream s;
  s << "halving ratios " << r1 << ", " << r2 << " (residuals " << residuals[0] << " -> "
    << residuals[1] << " -> " << residuals[2] << "), required band [" << lo << ", " << hi
    << "]";
  return {r1 > lo && r1 < hi && r2 > lo && r2 < hi, s.str()};
}

Outcome painleve_chains() {
  // Both transcendents cross their singular sets inside the window (a pole
  // passage and a right-edge pole for the first chain, two fast phase sweeps
  // for the second), so the residual is the denominator-cleared gauge
  // measured away from the passages the grid cannot resolve.
  const double tol = 1e-3;
  bool pass = true;
  std::ostringstream s;

  const auto piii_u = [&](int count) {
    const auto xs = nlse::linspace(0.5, 3.0, count);
    nlse::SampledFunction psi;
    psi.x = xs;
    psi.f.resize(xs.size());
    psi.stencil_order = 4;
    nlse::parallel_for(nlse::Exec::parallel, xs.size(), [&](std::size_t i) {
      nlse::ModelParams params;
      params.kind = nlse::ModelKind::piii;
      params.X = -xs[i] * xs[i] / 8.0;
      params.T = 0.0;
      psi.f[i] = nlse::extract_potential(nlse::solve_collocation(nlse::piii_jump(params), 256)).psi;
    });
    return nlse::extract_u_piii(psi);
  };
  {
    const auto coarse_u = piii_u(41);
    const auto fine_u = piii_u(81);
    const auto spans =
        nlse::merge_spans(nlse::unresolved_spans(coarse_u), nlse::unresolved_spans(fine_u));
    const double piii_coarse = nlse::piii_residual_normalized(coarse_u, spans);
    const double piii_fine = nlse::piii_residual_normalized(fine_u, spans);
    s << "piii residual " << piii_coarse << " -> " << piii_fine;
    if (!(piii_fine < tol && piii_fine < piii_coarse)) pass = false;
  }

  const auto pv_u = [&](int count) {
    const auto Xs = nlse::linspace(0.5, 3.0, count);
    nlse::SampledFunction psi;
    psi.x = Xs;
    psi.f.resize(Xs.size());
    psi.stencil_order = 4;
    nlse::parallel_for(nlse::Exec::parallel, Xs.size(), [&](std::size_t i) {
      nlse::ModelParams params;
      params.kind = nlse::ModelKind::pv;
      params.X = Xs[i];
      params.T = 0.0;
      params.zeta = 0.3;
      params.mu_mean = 2.0;
      psi.f[i] = nlse::extract_potential(nlse::solve_collocation(nlse::pv_jump(params), 256)).psi;
    });
    return nlse::extract_u_pv(psi, 0.3);
  };
  {
    const auto coarse_u = pv_u(41);
    const auto fine_u = pv_u(81);
    const auto spans =
        nlse::merge_spans(nlse::unresolved_spans(coarse_u), nlse::unresolved_spans(fine_u));
    const auto params = nlse::pv_params(0.3, 2.0);
    const double pv_coarse = nlse::pv_residual_normalized(coarse_u, params, true, spans);
    const double pv_fine = nlse::pv_residual_normalized(fine_u, params, true, spans);
    s << ";  pv residual " << pv_coarse << " -> " << pv_fine;
    if (!(pv_fine < tol && pv_fine < pv_coarse)) pass = false;
  }

  s << ";  requirement: fine residual < " << tol
    << " and decreasing under refinement, away from unresolved passages";
  return {pass, s.str()};
}

Outcome pv_to_piii_limit() {
  const double tol = 5e-2;
  const auto X = nlse::linspace(-1.0, 1.0, 41);
  const auto piii = model_field(nlse::ModelKind::piii, X, {0.0}, 0.0, 2.0, 128);
  const auto coarse = model_field(nlse::ModelKind::pv, X, {0.0}, 1e-2, 2.0, 128);
  const auto fine = model_field(nlse::ModelKind::pv, X, {0.0}, 1e-3, 2.0, 128);
  const double gap2 = nlse::l2_error(coarse, piii);
  const double gap3 = nlse::l2_error(fine, piii);
  std::ostringstream s;
  s << "L2 gap to the first model: " << gap2 << " at zeta 1e-2, " << gap3
    << " at zeta 1e-3 (amplitude mean 2); requirement: first < " << tol
    << " and second smaller";
  return {gap2 < tol && gap3 < gap2, s.str()};
}

Outcome projector_and_smallnorm() {
  bool pass = true;
  std::ostringstream s;

  // Projector identities, exact on coefficients.
  nlse::RandomStream rng(5);
  nlse::LaurentSeries h(8);
  for (int k = -8; k <= 8; ++k)
    h.at(k) = Mat2{Cx(rng.normal(), rng.normal()), Cx(rng.normal(), rng.normal()),
                   Cx(rng.normal(), rng.normal()), Cx(rng.normal(), rng.normal())};
  const auto plus = nlse::cauchy_plus(h);
  const auto minus = nlse::cauchy_minus(h);
  double projector_defect = 0.0;
  const auto pm = nlse::cauchy_plus(minus);
  for (int k = -8; k <= 8; ++k) {
    projector_defect = std::max(
        projector_defect, mat_dist(plus.at(k) + Cx(-1.0, 0.0) * minus.at(k), h.at(k)));
    projector_defect = std::max(projector_defect, pm.at(k).frob());
  }
  s << "projector identity defect " << projector_defect << " (required exactly 0)";
  if (projector_defect != 0.0) pass = false;

  // Constant rotation jump: interior solution is the jump, exterior identity.
  nlse::JumpMatrix rotation;
  rotation.evaluator = [](Cx) {
    const double a = 0.4;
    return Mat2{Cx(std::cos(a), 0), Cx(std::sin(a), 0), Cx(-std::sin(a), 0),
                Cx(std::cos(a), 0)};
  };
  rotation.r_in = 0.5;
  rotation.r_out = 2.0;
  rotation.label = "rotation";
  const auto rot = nlse::solve_collocation(rotation, 32);
  const double const_defect =
      std::max({rot.r1.frob(),
                mat_dist(nlse::evaluate_off_contour(rot, Cx(0.2, 0.1)),
                         rotation.evaluator(Cx(0.2, 0.1))),
                mat_dist(nlse::evaluate_off_contour(rot, Cx(3.0, 0.0)), Mat2::identity())});
  s << ";  constant-jump closed-form defect " << const_defect << " (tolerance 1e-12)";
  if (!(const_defect < 1e-12)) pass = false;

  // Small-norm jump: iterative route vs direct route.
  nlse::JumpMatrix small;
  small.evaluator = [](Cx Z) {
    const Cx w = 1.0 / Z;
    const Mat2 b{Cx(0.1, 0.0) * Z + Cx(0.05, 0.02) * w, Cx(0.2, -0.1) + Cx(0.1, 0.0) * Z,
                 Cx(0.3, 0.1) * w, Cx(-0.1, 0.0) * Z - Cx(0.05, 0.02) * w};
    const Mat2 scaled = 1e-3 * b;
    // exp of a traceless matrix keeps det = 1 exactly.
    const Cx sq = std::sqrt(-scaled.det());
    const Cx ch = std::cosh(sq);
    const Cx sh = std::abs(sq) < 1e-12 ? Cx(1, 0) : std::sinh(sq) / sq;
    return Mat2{ch + sh * scaled.a, sh * scaled.b, sh * scaled.c, ch + sh * scaled.d};
  };
  small.r_in = 0.5;
  small.r_out = 2.0;
  small.schwartz_symmetric = false;
  small.label = "small-norm";
  const auto direct = nlse::solve_collocation(small, 64);
  const auto iterated = nlse::solve_neumann(small, 64, 80, 1e-14);
  double route_gap = mat_dist(direct.r1, iterated.r1);
  for (int k = -8; k <= 0; ++k)
    route_gap = std::max(route_gap, mat_dist(direct.mu.at(k), iterated.mu.at(k)));
  s << ";  collocation-vs-iteration gap " << route_gap << " (tolerance 1e-10)";
  if (!(route_gap < 1e-10)) pass = false;

  return {pass, s.str()};
}

Outcome good_set_concentration() {
  const double delta = 0.3;
  const int trials = 2000;
  nlse::RandomEnsembleConfig config;
  config.amplitude = nlse::Distribution::parse("chi2:4");
  config.velocity = nlse::Distribution::parse("gauss:0:15");
  config.zeta = 0.3;
  config.seed = 90210;
  config.realizations = 1;

  std::vector<nlse::GoodSetStats> stats;
  for (int n : {50, 200, 800}) {
    config.n = n;
    stats.push_back(nlse::good_set_probe(config, delta, trials));
  }

  const auto two_sigma = [&](double p1, double p2) {
    return 2.0 * std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / trials);
  };
  bool pass = true;
  std::ostringstream s;
  s << "amplitude-window fail freq:";
  for (const auto& st : stats) s << ' ' << st.amplitudes_fail;
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const double slack = two_sigma(stats[i - 1].amplitudes_fail, stats[i].amplitudes_fail);
    if (stats[i].amplitudes_fail > stats[i - 1].amplitudes_fail + slack) pass = false;
  }
  s << ";  circle-uniform fail freq:";
  for (const auto& st : stats) s << ' ' << st.resolvent_fail;
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const double slack = two_sigma(stats[i - 1].resolvent_fail, stats[i].resolvent_fail);
    if (stats[i].resolvent_fail > stats[i - 1].resolvent_fail + slack) pass = false;
  }
  s << ";  requirement: non-increasing over N in {50,200,800} within binomial 2 sigma"
    << " (delta " << delta << ", " << trials << " trials)";
  return {pass, s.str()};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"01_model_peak_piii", peak_piii},
    {"02_model_peak_pv", peak_pv},
    {"03_extremal_peak", extremal_peak},
    {"04_dressing_vs_oracle", dressing_vs_oracle},
    {"05_one_soliton_closed_form", one_soliton_closed_form},
    {"06_universality_convergence", universality_convergence},
    {"07_nls_residual_order", nls_residual_order},
    {"08_painleve_chains", painleve_chains},
    {"09_pv_to_piii_limit", pv_to_piii_limit},
    {"10_projector_and_smallnorm", projector_and_smallnorm},
    {"11_good_set_concentration", good_set_concentration},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
  }

  bool matched = false;
  bool all_pass = true;
  for (const auto& criterion : kCriteria) {
    if (!only.empty() && only != criterion.name) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << criterion.name << "  ["
              << seconds << " s]  " << outcome.detail << '\n';
    if (!outcome.pass) all_pass = false;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
