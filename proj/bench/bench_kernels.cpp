#include <benchmark/benchmark.h>

#include <random>

#include "twistperiod/chambers.hpp"
#include "twistperiod/oracles.hpp"
#include "twistperiod/parallel.hpp"
#include "twistperiod/quadrature.hpp"
#include "twistperiod/regularization.hpp"

using namespace twistperiod;

namespace {

Arrangement random_plane_arrangement(int N) {
  std::mt19937_64 rng(42);
  return make_arrangement(2, oracle::random_rows(rng, 2, N, true, 6));
}

void BM_Chambers(benchmark::State& state, Execution exec) {
  const Arrangement A = random_plane_arrangement(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_chambers(A, exec));
  state.counters["chambers"] = static_cast<double>(enumerate_chambers(A, exec).n_total);
}

void BM_Triangle(benchmark::State& state, Execution exec) {
  const Arrangement A = make_arrangement(2, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(-1), Rat(-1)}});
  const auto E = ExponentData::scalar({ComplexRat(Rat(-1, 2)), ComplexRat(Rat(1, 3)), ComplexRat(Rat(1, 4))});
  const TwistedIntegrand I(A, E, {}, {{1.0, {-1, -1, -1}}});
  const TwistedChain chain = regularize_bounded(bounded_chambers(A).at(0), A, E);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_chain(I, chain, tol, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Chambers, serial, Execution::serial)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Chambers, parallel, Execution::parallel)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Triangle, serial, Execution::serial)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Triangle, parallel, Execution::parallel)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
