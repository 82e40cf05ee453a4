#include <benchmark/benchmark.h>

#include "hopfduet/analysis.hpp"
#include "hopfduet/extraction.hpp"
#include "hopfduet/normal_form.hpp"
#include "hopfduet/ode.hpp"
#include "hopfduet/systems.hpp"

namespace {

using namespace hopfduet;

NormalFormCoefficients bench_coefficients() {
  return NormalFormCoefficients::create(
      1.073, {-21.94, -20.94},
      {Complex{0, 0}, Complex{0, 0}, Complex{8.72, 6.57}, Complex{-23.2, -45.46}},
      {Complex{0.0, 0.246}, Complex{-13.05, 18.06}, Complex{6.52, -5.52},
       Complex{13.81, 10.16}});
}

void BM_eval_cartesian(benchmark::State& state) {
  const auto c = bench_coefficients();
  const UnfoldingParams p{0.02, 0.05};
  CartesianState z{{0.03, 0.01}, {-0.02, 0.04}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(nf::eval_cartesian(z, p, c));
  }
}

void BM_eval_reduced(benchmark::State& state) {
  const auto c = bench_coefficients();
  const UnfoldingParams p{0.02, 0.05};
  const ReducedState s{0.06, 0.01, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(nf::eval_reduced(s, p, c));
  }
}

void BM_tr_det_disc(benchmark::State& state) {
  const auto c = bench_coefficients();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::tr_det_disc({0.02, 0.05}, analysis::Branch::minus, c));
  }
}

void BM_integrate_nf_period(benchmark::State& state) {
  const auto c = bench_coefficients();
  const dyn::NfCartesianSystem sys({0.02, 0.05}, c);
  ode::IntegratorConfig cfg;
  ode::Vec x0(4);
  x0 << 0.03, 0.0, 0.028, 0.004;
  const double period = 2.0 * 3.14159265358979 / c.omega;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ode::integrate_to(sys, x0, 0.0, period, cfg));
  }
}

void BM_extraction(benchmark::State& state) {
  auto p = wc::preset_p();
  p.b_sp = -0.03;
  p.lambda_slope = wc::hopf_slope(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract::extract_coefficients(p));
  }
}

}  // namespace

BENCHMARK(BM_eval_cartesian);
BENCHMARK(BM_eval_reduced);
BENCHMARK(BM_tr_det_disc);
BENCHMARK(BM_integrate_nf_period)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extraction)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
