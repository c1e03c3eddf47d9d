#include "nichols/braided.hpp"
#include "nichols/hv1.hpp"
#include "nichols/liftings.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace nichols;

void BM_ScalarProduct(benchmark::State& state) {
  const Scalar a = Scalar::monomial(QOmega(2, 3), 2) + Scalar::monomial(QOmega(-1, 1), -1);
  const Scalar b = Scalar::monomial(QOmega(1, -4), 1) + Scalar(5);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarProduct);

void BM_CoproductOfWord(benchmark::State& state) {
  const auto V = hv1_space();
  Word w;
  for (int k = 0; k < state.range(0); ++k) w.push_back(static_cast<char>(k % 4));
  for (auto _ : state) benchmark::DoNotOptimize(coproduct_word(V, w));
}
BENCHMARK(BM_CoproductOfWord)->DenseRange(2, 8, 2);

void BM_NicholsMembership(benchmark::State& state) {
  const auto rel = hv1::u(1, 2) * hv1::u(1, 3) + hv1::u(1, 3) * hv1::u(1, 2);
  for (auto _ : state) {
    NicholsOracle<Scalar> oracle(hv1_space());
    benchmark::DoNotOptimize(oracle.member(rel));
  }
}
BENCHMARK(BM_NicholsMembership)->Unit(benchmark::kMillisecond);

void BM_CompleteFominKirillov(benchmark::State& state) {
  const auto p = hv1::v1_presentation();
  for (auto _ : state) benchmark::DoNotOptimize(complete(p, 12).normal_word_count());
}
BENCHMARK(BM_CompleteFominKirillov)->Unit(benchmark::kMillisecond);

void BM_CompletePreNicholsTruncated(benchmark::State& state) {
  const auto p = hv1::presentation(hv1::relations().distinguished);
  CompletionOptions o;
  o.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(complete(p, static_cast<int>(state.range(0)), o).normal_word_count());
}
BENCHMARK(BM_CompletePreNicholsTruncated)->Args({10, 1})->Args({14, 1})->Args({14, 4})->Unit(benchmark::kMillisecond);

void BM_CompleteNichols(benchmark::State& state) {
  const auto p = hv1::presentation(hv1::relations().minimal);
  CompletionOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(complete(p, 40, o).normal_word_count());
}
BENCHMARK(BM_CompleteNichols)->Arg(1)->Arg(4)->Iterations(1)->Unit(benchmark::kSecond);

void BM_Fk3Lifting(benchmark::State& state) {
  auto r = std::make_shared<const FiniteRealization>(fk3_realization_s3());
  using liftings::C;
  for (auto _ : state) {
    const auto sp = liftings::fk3_lifting({C::zero(), C::one()}, r);
    benchmark::DoNotOptimize(complete(sp.presentation, sp.cap_for_a_degree(4)).normal_word_count());
  }
}
BENCHMARK(BM_Fk3Lifting)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
