#include <benchmark/benchmark.h>

#include "dlchow/dlclass.hpp"
#include "dlchow/hecke.hpp"
#include "dlchow/schubert.hpp"

using namespace dlchow;

namespace {

// Uncached Schubert products u*v over all pairs of S_n.
void BM_SchubertProductUncached(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& els = all_elements(n);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& u = els[k % els.size()];
    const auto& v = els[(k * 7 + 3) % els.size()];
    benchmark::DoNotOptimize(compute_schubert_product(u, v));
    ++k;
  }
}
BENCHMARK(BM_SchubertProductUncached)->Arg(4)->Arg(5)->Arg(6);

void BM_ExpandSchubertPoly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Permutation w = all_elements(n)[all_elements(n).size() / 2];
  const MultiPoly& f = schubert_poly(w);
  for (auto _ : state) benchmark::DoNotOptimize(expand_in_schubert_basis(f, n, Bank::X, ExpandCheck::None));
}
BENCHMARK(BM_ExpandSchubertPoly)->Arg(4)->Arg(5)->Arg(6);

void BM_ClassXPairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& els = all_elements(n);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(class_X(els[k++ % els.size()], Twist::Trivial));
}
BENCHMARK(BM_ClassXPairs)->Arg(3)->Arg(4)->Arg(5);

void BM_ClassXDividedDifference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& els = all_elements(n);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(class_via_divided_diff(els[k++ % els.size()], Twist::Trivial));
}
BENCHMARK(BM_ClassXDividedDifference)->Arg(3)->Arg(4)->Arg(5);

void BM_HeckeProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HeckeElement w0 = HeckeElement::basis(Permutation::longest(n));
  for (auto _ : state) benchmark::DoNotOptimize(w0 * w0);
}
BENCHMARK(BM_HeckeProduct)->Arg(3)->Arg(4)->Arg(5);

void BM_RPolynomial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Permutation w0 = Permutation::longest(n);
  for (auto _ : state) benchmark::DoNotOptimize(r_polynomial(w0));
}
BENCHMARK(BM_RPolynomial)->Arg(4)->Arg(5)->Arg(6);

void BM_TransitionMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transition_matrix(n, Twist::Trivial));
}
BENCHMARK(BM_TransitionMatrix)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EqualityClasses(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equality_classes(n));
}
BENCHMARK(BM_EqualityClasses)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
