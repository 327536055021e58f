#include <numbers>

#include <benchmark/benchmark.h>

#include "arcmarkov/composition.hpp"
#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/fastdecay.hpp"
#include "arcmarkov/ineqlab.hpp"
#include "arcmarkov/sup_norm.hpp"
#include "arcmarkov/tset.hpp"

using namespace arcmarkov;

static void BM_SolveTau(benchmark::State& st) {
  std::vector<double> ends;
  const int m = static_cast<int>(st.range(0));
  for (int j = 0; j < 2 * m; ++j) ends.push_back(-3.0 + 6.0 * (j + 0.5) / (2 * m));
  const equilibrium::ArcSystem arcs(ends);
  for (auto _ : st) benchmark::DoNotOptimize(equilibrium::solve_tau(arcs));
}
BENCHMARK(BM_SolveTau)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SupNorm(benchmark::State& st) {
  const auto p = ineqlab::random_trig_poly(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(sup_norm(p, -2.0, 2.0));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_SupNorm)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_FaaDiBruno(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  std::vector<double> outer(k, 1.25), inner(k, -0.5);
  for (auto _ : st) benchmark::DoNotOptimize(composition::faa_di_bruno(outer, inner, k));
}
BENCHMARK(BM_FaaDiBruno)->DenseRange(2, 12, 2);

static void BM_SharpnessScan(benchmark::State& st) {
  const auto d = tset::analyze_admissible(tset::two_interval_U());
  const auto eq = ineqlab::solve_for(d.e_set);
  const double a = d.e_set.intervals()[0].hi;
  std::vector<int> ls;
  for (int l = 2; l <= st.range(0); l *= 2) ls.push_back(l);
  for (auto _ : st) benchmark::DoNotOptimize(ineqlab::markov_sharpness_scan(d, a, 2, ls, eq));
}
BENCHMARK(BM_SharpnessScan)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_FastDecayTrig(benchmark::State& st) {
  fastdecay::TrigSpec s;
  s.t0 = 0.0;
  s.alpha = -0.3;
  s.beta = 0.3;
  s.alpha_prime = -0.7;
  s.beta_prime = 0.7;
  s.zeros = {{-2.0, 2}, {2.8, 3}};
  s.m = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fastdecay::build_fd_trig(s, false));
}
BENCHMARK(BM_FastDecayTrig)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
