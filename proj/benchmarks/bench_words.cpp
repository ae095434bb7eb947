#include <benchmark/benchmark.h>

#include <random>

#include "fimeq/words.hpp"

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

  void BM_reduce(benchmark::State& state) {
    std::mt19937_64 rng(1);
    Word const      w = random_word(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(reduce(AB, w));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_reduce)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

  void BM_delta(benchmark::State& state) {
    std::mt19937_64 rng(2);
    Word const      w = random_word(rng, static_cast<std::size_t>(state.range(0)));
    Word const      p = AB.parse_word("ab~a");
    for (auto _ : state) {
      benchmark::DoNotOptimize(delta(AB, w, p));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_delta)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

}  // namespace

BENCHMARK_MAIN();
