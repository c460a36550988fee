#include "superlie/enveloping.hpp"
#include "superlie/realform.hpp"
#include "superlie/superalgebra.hpp"
#include "superlie/supergroup.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace superlie;

namespace {

Grassmann dense(int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Grassmann::Term> terms;
  for (Monomial m = 0; m < (Monomial{1} << q); ++m) terms.emplace_back(m, Gauss(Rational(d(rng)), Rational(d(rng))));
  return Grassmann::from_terms(q, std::move(terms));
}

void BM_GrassmannMultiply(benchmark::State& state) {
  const int q = int(state.range(0));
  Grassmann a = dense(q, 1), b = dense(q, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(q);
}
BENCHMARK(BM_GrassmannMultiply)->DenseRange(2, 10, 2);

void BM_SuperJacobi(benchmark::State& state) {
  auto g = LieSuperalgebra::build("sl(2|2)");
  for (auto _ : state) benchmark::DoNotOptimize(super_jacobi_check(g.table()).pass);
}
BENCHMARK(BM_SuperJacobi)->Unit(benchmark::kMillisecond);

void BM_CompactForm(benchmark::State& state) {
  auto g = LieSuperalgebra::build("sl(2|1)");
  for (auto _ : state) benchmark::DoNotOptimize(realform_report(g, Convention::graded, false).built);
}
BENCHMARK(BM_CompactForm)->Unit(benchmark::kMillisecond);

void BM_FixedPointSampler(benchmark::State& state) {
  auto g = LieSuperalgebra::build("sl(2|1)");
  const auto c = state.range(0) ? Convention::literal : Convention::graded;
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_fixed_point(g, c, 4, rng).has_value());
}
BENCHMARK(BM_FixedPointSampler)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExampleSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_example_conditions("SL(2|1)", 10, 4).pass());
}
BENCHMARK(BM_ExampleSuite)->Unit(benchmark::kMillisecond);

void BM_UeaInvariants(benchmark::State& state) {
  auto g = LieSuperalgebra::build("sl(2|1)");
  const int d = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invariants_dim_compare(g, Convention::graded, d).equal);
}
BENCHMARK(BM_UeaInvariants)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
