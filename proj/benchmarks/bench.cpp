#include <benchmark/benchmark.h>

#include "wqa/closure.hpp"
#include "wqa/cutpoint.hpp"
#include "wqa/eval.hpp"
#include "wqa/robustness.hpp"
#include "wqa/suite.hpp"

namespace {

wqa::WeightedAutomaton sample(wqa::ValTag tag, int states, bool det, std::uint64_t seed) {
  wqa::Rng rng(seed);
  wqa::AutomatonSpec spec;
  spec.num_states = states;
  spec.num_symbols = 2;
  spec.deterministic = det;
  spec.weights = {wqa::Rational(0), wqa::Rational(1, 3), wqa::Rational(1, 2),
                  wqa::Rational(1)};
  spec.valuefn = tag == wqa::ValTag::Disc ? wqa::ValueFunction::disc(wqa::Rational(2, 3))
                                          : wqa::ValueFunction{tag, {}};
  return random_automaton(rng, spec);
}

wqa::LassoWord sample_word(std::uint64_t seed) {
  wqa::Rng rng(seed);
  return wqa::random_lasso(rng, {"a", "b"}, 8);
}

void bm_eval_limavg(benchmark::State& state) {
  auto aut = sample(wqa::ValTag::LimAvg, static_cast<int>(state.range(0)), false, 7);
  auto word = sample_word(11);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::eval_lasso(aut, word).value);
}
BENCHMARK(bm_eval_limavg)->Arg(4)->Arg(8)->Arg(16);

void bm_eval_disc(benchmark::State& state) {
  auto aut = sample(wqa::ValTag::Disc, static_cast<int>(state.range(0)), false, 13);
  auto word = sample_word(17);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::eval_lasso(aut, word).value);
}
BENCHMARK(bm_eval_disc)->Arg(4)->Arg(8)->Arg(16);

void bm_oracle(benchmark::State& state) {
  auto aut = sample(wqa::ValTag::LimAvg, 4, false, 19);
  auto word = sample_word(23);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::oracle_eval(aut, word));
}
BENCHMARK(bm_oracle);

void bm_dlsup_sum(benchmark::State& state) {
  wqa::Rng rng(29);
  wqa::AutomatonSpec spec;
  spec.num_states = static_cast<int>(state.range(0));
  spec.num_symbols = 2;
  spec.deterministic = true;
  spec.weights = {wqa::Rational(0), wqa::Rational(1)};
  spec.valuefn = wqa::ValueFunction::limsup();
  auto a1 = random_automaton(rng, spec);
  auto a2 = random_automaton(rng, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::op_sum(a1, a2).num_states);
}
BENCHMARK(bm_dlsup_sum)->Arg(2)->Arg(3)->Arg(4);

void bm_booleanize(benchmark::State& state) {
  wqa::Rng rng(31);
  wqa::AutomatonSpec spec;
  spec.num_states = static_cast<int>(state.range(0));
  spec.num_symbols = 2;
  spec.deterministic = true;
  spec.weights = {wqa::Rational(0), wqa::Rational(1, 4), wqa::Rational(1, 3),
                  wqa::Rational(1)};
  spec.valuefn = wqa::ValueFunction::limavg();
  auto aut = random_automaton(rng, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::booleanize_limavg(aut).automaton.num_states);
}
BENCHMARK(bm_booleanize)->Arg(2)->Arg(4)->Arg(8);

void bm_cutpoint_dbw(benchmark::State& state) {
  auto aut = sample(wqa::ValTag::LimAvg, 6, true, 37);
  auto intervals = wqa::limavg_scc_intervals(aut);
  wqa::Rational top(-1);
  for (const auto& iv : intervals)
    if (iv.reachable) top = wqa::max(top, iv.max_mean);
  wqa::Rational eta = top + wqa::Rational(1, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(wqa::extract_dbw_limavg(aut, eta).aut.num_states);
}
BENCHMARK(bm_cutpoint_dbw);

} // namespace

BENCHMARK_MAIN();
