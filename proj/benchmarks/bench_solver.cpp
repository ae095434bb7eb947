#include <benchmark/benchmark.h>

#include "fimeq/idempotent.hpp"
#include "fimeq/langeq_solver.hpp"
#include "fimeq/text_io.hpp"

using namespace fimeq;

namespace {

  SolverBudget at(int L) {
    SolverBudget b;
    b.max_len = L;
    return b;
  }

  void BM_brute_force_monoid(benchmark::State& state) {
    auto S = parse_lang_system(
        "letters: a b\ncoeffs-over: a b\n"
        "{eps} + a.X + b.Y = {eps} + a.Y + b.X\nY <= {eps,a} + a.X\n");
    auto const L = static_cast<int>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(brute_force(S, at(L)));
    }
  }
  BENCHMARK(BM_brute_force_monoid)->DenseRange(2, 6, 2);

  void BM_solve_over_group(benchmark::State& state) {
    auto S = parse_lang_system(
        "letters: a b\ninterp: group\n"
        "{eps,a} + a.X = {eps,b} + b.Y\n{eps} + eps.X = {eps} + eps.Y\n");
    auto const L = static_cast<int>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(solve_over_group(S, at(L)));
    }
  }
  BENCHMARK(BM_solve_over_group)->DenseRange(1, 3);

  void BM_decide_idempotent(benchmark::State& state) {
    auto S = parse_typed_system(
        "letters: a b\nvars: Z:idem W:idem\na Z ~a W = b W ~b Z\n");
    auto const strategy = state.range(0) == 0 ? IdemStrategy::marking
                                              : IdemStrategy::direct;
    for (auto _ : state) {
      benchmark::DoNotOptimize(decide_idempotent_system(S, at(2), strategy));
    }
  }
  BENCHMARK(BM_decide_idempotent)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
