// Experiment drivers: the weighted L2 metric, convergence-table arithmetic,
// reproducibility of whole runs, and the concentration-set probe.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "nlse/darboux.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

using Cx = std::complex<double>;

namespace {

nlse::WaveField constant_field(const std::vector<double>& xs, Cx value) {
  nlse::WaveField f;
  f.x = xs;
  f.t = {0.0};
  f.psi.assign(xs.size(), value);
  return f;
}

std::string read_first_line(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("l2 metric: coincident fields, unit offset, quadrature cross-check") {
  const auto xs = nlse::linspace(0.0, 1.0, 11);
  const auto f = constant_field(xs, Cx(0.3, -0.7));
  CHECK(nlse::l2_error(f, f) == 0.0);

  // |f - g| = 1 on [0, 1]: the weighted L2 distance is exactly 1.
  const auto g = constant_field(xs, Cx(1.3, -0.7));
  CHECK(nlse::l2_error(f, g) == doctest::Approx(1.0).epsilon(1e-12));

  // One-soliton mass: integral of 4 sech^2(2x) over the line is 4, so the
  // distance to the zero field approaches 2 on a wide grid.
  nlse::SpectralData one;
  one.lambda = {Cx(0, 1)};
  one.p = {Cx(1, 0)};
  const auto wide = nlse::linspace(-8.0, 8.0, 321);
  const auto field = nlse::evaluate_field_serial(one, wide, {0.0}, {});
  const auto zero = constant_field(wide, Cx(0, 0));
  CHECK(nlse::l2_error(field, zero) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("l2 metric rejects mismatched grids") {
  const auto f = constant_field(nlse::linspace(0.0, 1.0, 11), Cx(1, 0));
  const auto g = constant_field(nlse::linspace(0.0, 1.0, 12), Cx(1, 0));
  CHECK_THROWS_AS(nlse::l2_error(f, g), nlse::ValidationError);
}

TEST_CASE("convergence table: halving errors give unit rates") {
  nlse::ExperimentReport report;
  report.sizes = {10, 20, 40};
  report.realizations = 1;
  for (int i = 0; i < 3; ++i) {
    nlse::RealizationRecord rec;
    rec.n = report.sizes[i];
    rec.realization = 0;
    rec.l2_error = 1.0 / double(1 << i);
    rec.ok = true;
    report.records.push_back(rec);
  }
  const auto rows = nlse::convergence_table(report);
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].rate.has_value());
  CHECK(rows[1].rate.value() == doctest::Approx(1.0));
  CHECK(rows[2].rate.value() == doctest::Approx(1.0));
  CHECK(report.mean_error(20) == doctest::Approx(0.5));
  CHECK(report.std_error(20) == 0.0);  // single realization
}

TEST_CASE("universality runs are reproducible and honestly recorded") {
  nlse::RandomEnsembleConfig config;
  config.n = 1;  // overwritten per size by the driver
  config.amplitude = nlse::Distribution::parse("chi2:4");
  config.seed = 5150;
  config.realizations = 2;

  const auto X = nlse::linspace(-1.0, 1.0, 11);
  const std::vector<int> sizes{3, 5};
  const auto a =
      nlse::run_universality(config, nlse::ModelKind::piii, sizes, X, 0.0, 32,
                             nlse::Exec::parallel);
  const auto b =
      nlse::run_universality(config, nlse::ModelKind::piii, sizes, X, 0.0, 32,
                             nlse::Exec::serial);
  REQUIRE(a.records.size() == 4);
  REQUIRE(b.records.size() == 4);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].ok);
    CHECK(a.records[i].l2_error == b.records[i].l2_error);
    CHECK(a.records[i].seed == b.records[i].seed);
  }
  CHECK(a.model_profile == b.model_profile);
  REQUIRE(a.mean_abs_profile.size() == sizes.size());
  for (const auto& profile : a.mean_abs_profile) CHECK(profile.size() == X.size());

  // The model profile peaks at the origin with modulus 4.
  const std::size_t mid = X.size() / 2;
  CHECK(std::abs(a.model_profile[mid]) == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("universality configuration cross-checks") {
  nlse::RandomEnsembleConfig config;
  config.n = 1;
  config.amplitude = nlse::Distribution::parse("chi2:4");
  config.seed = 1;
  config.realizations = 1;
  const auto X = nlse::linspace(-1.0, 1.0, 5);
  // Second-model run without a drift parameter is rejected.
  CHECK_THROWS_AS(
      nlse::run_universality(config, nlse::ModelKind::pv, {3}, X, 0.0, 32),
      nlse::ValidationError);
  // First-model run with a drift parameter is rejected.
  config.zeta = 0.3;
  CHECK_THROWS_AS(
      nlse::run_universality(config, nlse::ModelKind::piii, {3}, X, 0.0, 32),
      nlse::ValidationError);
}

TEST_CASE("csv emitters write the documented schemas") {
  nlse::RandomEnsembleConfig config;
  config.n = 1;
  config.amplitude = nlse::Distribution::parse("chi2:4");
  config.seed = 99;
  config.realizations = 1;
  const auto X = nlse::linspace(-1.0, 1.0, 5);
  const auto report =
      nlse::run_universality(config, nlse::ModelKind::piii, {3}, X, 0.0, 32);

  nlse::write_report_csv(report, "tmp_report.csv");
  nlse::write_summary_csv(report, "tmp_summary.csv");
  nlse::write_profile_csv(report, 3, "tmp_profile.csv");
  CHECK(read_first_line("tmp_report.csv") == "case,N,realization,seed,l2_error");
  CHECK(read_first_line("tmp_summary.csv") == "case,N,mean_error,std_error");
  CHECK(read_first_line("tmp_profile.csv") == "X,abs_psi_model,abs_psi_N_mean");
  CHECK_THROWS_AS(nlse::write_profile_csv(report, 7, "tmp_profile.csv"),
                  nlse::ValidationError);
  for (const char* p : {"tmp_report.csv", "tmp_summary.csv", "tmp_profile.csv"})
    std::remove(p);
}

TEST_CASE("good-set probe: concentrated law never fails, frequencies are sane") {
  nlse::RandomEnsembleConfig config;
  config.n = 50;
  config.amplitude = nlse::Distribution::parse("const:0.5");
  config.zeta = 0.3;
  config.seed = 7;
  config.realizations = 1;
  const auto stats = nlse::good_set_probe(config, 0.49, 100, nlse::Exec::serial);
  CHECK(stats.amplitudes_fail == 0.0);
  CHECK(stats.sum_fail == 0.0);
  CHECK(stats.resolvent_fail == 0.0);

  nlse::RandomEnsembleConfig random_config;
  random_config.n = 50;
  random_config.amplitude = nlse::Distribution::parse("chi2:4");
  random_config.velocity = nlse::Distribution::parse("gauss:0:15");
  random_config.seed = 7;
  random_config.realizations = 1;
  const auto serial = nlse::good_set_probe(random_config, 0.3, 400, nlse::Exec::serial);
  const auto parallel =
      nlse::good_set_probe(random_config, 0.3, 400, nlse::Exec::parallel);
  CHECK(serial.amplitudes_fail == parallel.amplitudes_fail);
  CHECK(serial.sum_fail == parallel.sum_fail);
  CHECK(serial.resolvent_fail == parallel.resolvent_fail);
  for (double f : {serial.amplitudes_fail, serial.sum_fail, serial.resolvent_fail}) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  CHECK_THROWS_AS(nlse::good_set_probe(random_config, 0.5, 10, nlse::Exec::serial),
                  nlse::ValidationError);
}
