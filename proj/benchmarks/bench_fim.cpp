#include <benchmark/benchmark.h>

#include <random>

#include "fimeq/scheiblich.hpp"

using namespace fimeq;

namespace {

  InvAlphabet const AB = InvAlphabet::from_base({"a", "b"});

  Word random_word(std::mt19937_64& rng, std::size_t n) {
    Word w(n);
    for (auto& a : w) {
      a = static_cast<Letter>(rng() % AB.size());
    }
    return w;
  }

  void BM_psi(benchmark::State& state) {
    std::mt19937_64 rng(3);
    Word const      w = random_word(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(psi(AB, w));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_psi)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

  void BM_fim_multiply(benchmark::State& state) {
    std::mt19937_64 rng(4);
    auto const n = static_cast<std::size_t>(state.range(0));
    auto const x = psi(AB, random_word(rng, n));
    auto const y = psi(AB, random_word(rng, n));
    for (auto _ : state) {
      benchmark::DoNotOptimize(fim_multiply(AB, x, y));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_fim_multiply)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

  void BM_word_problem(benchmark::State& state) {
    std::mt19937_64 rng(5);
    auto const n = static_cast<std::size_t>(state.range(0));
    Word const u = random_word(rng, n);
    Word       v = u;
    v.insert(v.end(), {0, 1, 0});
    for (auto _ : state) {
      benchmark::DoNotOptimize(word_problem(AB, u, v));
    }
  }
  BENCHMARK(BM_word_problem)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
