// Wall-clock comparison of the serial reference drivers against the
// OpenMP-parallel ones on three representative workloads:
//   1. dressed-field evaluation of a 40-soliton dataset on a space-time grid,
//   2. a batch of circle model solves across model-frame positions,
//   3. a Monte-Carlo concentration-set probe.
// The kernels are bit-identical by construction; the benchmark reports the
// observed speedup for the worker count in use.

#include <chrono>
#include <complex>
#include <iostream>
#include <vector>

#include "nlse/darboux.hpp"
#include "nlse/experiments.hpp"
#include "nlse/models.hpp"
#include "nlse/numstr.hpp"
#include "nlse/parallel.hpp"
#include "nlse/rhp.hpp"
#include "nlse/spectral_data.hpp"
#include "nlse/wavefield.hpp"

namespace {

using nlse::Exec;
using Cx = std::complex<double>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const std::string& name, double serial_s, double parallel_s) {
  std::cout << name << ": serial " << nlse::format_double(serial_s) << " s, parallel "
            << nlse::format_double(parallel_s) << " s, speedup "
            << nlse::format_double(serial_s / parallel_s) << "x\n";
}

void bench_dressing() {
  nlse::RandomEnsembleConfig config;
  config.n = 40;
  config.amplitude = nlse::Distribution::make_chi_squared(4);
  config.seed = 7;
  config.realizations = 1;
  const nlse::SpectralData data = nlse::sample_ensemble(config, 0);
  const auto xs = nlse::linspace(-4.0, 4.0, 61);
  const auto ts = nlse::linspace(0.0, 0.02, 5);
  const auto policy = nlse::PrecisionPolicy::fixed_bits(nlse::calibrate_bits(data, 1e-8));

  const auto t0 = Clock::now();
  const auto serial = nlse::evaluate_field(data, xs, ts, policy, Exec::serial);
  const double serial_s = seconds_since(t0);

  const auto t1 = Clock::now();
  const auto parallel = nlse::evaluate_field(data, xs, ts, policy, Exec::parallel);
  const double parallel_s = seconds_since(t1);

  double gap = 0.0;
  for (std::size_t i = 0; i < serial.psi.size(); ++i)
    gap = std::max(gap, std::abs(serial.psi[i] - parallel.psi[i]));
  std::cout << "dressed field (n=40, " << xs.size() << "x" << ts.size()
            << " grid, " << policy.bits << " bits), serial-vs-parallel gap "
            << nlse::format_double(gap) << '\n';
  report("  dressing", serial_s, parallel_s);
}

void bench_model_batch() {
  const auto Xs = nlse::linspace(-2.0, 2.0, 24);
  const int modes = 64;
  std::vector<Cx> out(Xs.size());
  const auto run = [&](Exec exec) {
    nlse::parallel_for(exec, Xs.size(), [&](std::size_t i) {
      nlse::ModelParams params;
      params.kind = nlse::ModelKind::piii;
      params.X = Xs[i];
      params.T = 0.0;
      const auto jump = nlse::piii_jump(params);
      out[i] = nlse::extract_potential(nlse::solve_collocation(jump, modes)).psi;
    });
  };

  const auto t0 = Clock::now();
  run(Exec::serial);
  const double serial_s = seconds_since(t0);
  const auto t1 = Clock::now();
  run(Exec::parallel);
  const double parallel_s = seconds_since(t1);

  std::cout << "model batch (" << Xs.size() << " solves, M=" << modes << ")\n";
  report("  model", serial_s, parallel_s);
}

void bench_goodset() {
  nlse::RandomEnsembleConfig config;
  config.n = 400;
  config.amplitude = nlse::Distribution::make_chi_squared(4);
  config.velocity = nlse::Distribution::make_gaussian(0.0, 15.0);
  config.seed = 11;
  config.realizations = 1;
  const int trials = 2000;

  const auto t0 = Clock::now();
  const auto serial = nlse::good_set_probe(config, 0.3, trials, Exec::serial);
  const double serial_s = seconds_since(t0);
  const auto t1 = Clock::now();
  const auto parallel = nlse::good_set_probe(config, 0.3, trials, Exec::parallel);
  const double parallel_s = seconds_since(t1);

  std::cout << "good-set probe (n=400, " << trials << " trials), frequency gap "
            << nlse::format_double(std::abs(serial.amplitudes_fail -
                                            parallel.amplitudes_fail) +
                                   std::abs(serial.sum_fail - parallel.sum_fail))
            << '\n';
  report("  goodset", serial_s, parallel_s);
}

}  // namespace

int main() {
  std::cout << "workers: " << nlse::worker_count() << '\n';
  bench_dressing();
  bench_model_batch();
  bench_goodset();
  return 0;
}
