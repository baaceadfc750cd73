#include <benchmark/benchmark.h>

#include <heyde/cyclotomic.hpp>
#include <heyde/distribution.hpp>
#include <heyde/dual_models.hpp>
#include <heyde/group.hpp>
#include <heyde/heyde.hpp>

namespace {

using namespace heyde;

void BM_CyclotomicMultiply(benchmark::State& state) {
  const auto n = state.range(0);
  auto a = CyclotomicValue::root_of_unity(n, 1) + CyclotomicValue::from_rational(n, Rational(1, 3));
  const auto b = CyclotomicValue::root_of_unity(n, 2) + CyclotomicValue::one(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(9)->Arg(15)->Arg(45);

void BM_CharFunction(benchmark::State& state) {
  const auto g = parse_group_spec(state.range(0) == 0 ? "Z9" : "Z3xZ5");
  const auto mu = sample_distribution(g, 7, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_function(mu));
  }
}
BENCHMARK(BM_CharFunction)->Arg(0)->Arg(1);

void BM_Equation2a(benchmark::State& state) {
  const auto g = parse_group_spec("Z3xZ5");
  const auto alphas = enumerate_automorphisms(g);
  const auto alpha_tilde = adjoint(alphas.back());
  const auto f1 = char_function(haar(whole_group(g)));
  const auto f2 = char_function(haar(whole_group(g)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(equation_2a_holds(f1, f2, alpha_tilde));
  }
}
BENCHMARK(BM_Equation2a);

void BM_VerifySequenceModel(benchmark::State& state) {
  const auto model = lemma5_model(3, {1, 2, 3, 4}, Rational(1, 2));
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_lemma5(model, level, 1));
  }
}
BENCHMARK(BM_VerifySequenceModel)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
