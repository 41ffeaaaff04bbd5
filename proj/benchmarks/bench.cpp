// Microbenchmarks for the hot paths: the brute-force oracle, the nested
// fixpoint, derived-proof checking, and one exhaustive case-study instance.
#include <benchmark/benchmark.h>

#include <random>

#include "rbisim/casestudy.hpp"
#include "rbisim/checker.hpp"
#include "rbisim/random_system.hpp"

using namespace rbisim;

namespace {

RandomInstance make_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomSystemOptions opts;
  opts.min_states = 6;
  opts.max_states = 8;
  return random_instance(rng, opts);
}

void bench_rel_trace_eq(benchmark::State& state) {
  RandomInstance inst = make_instance(1);
  for (auto _ : state)
    for (const Quad& q : inst.universe->quads)
      benchmark::DoNotOptimize(rel_trace_eq(inst.C, inst.H, q));
}
BENCHMARK(bench_rel_trace_eq);

void bench_compute_rbisim(benchmark::State& state) {
  RandomInstance inst = make_instance(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_rbisim(inst.C, inst.H, *inst.universe));
}
BENCHMARK(bench_compute_rbisim);

void bench_derived_proof_check(benchmark::State& state) {
  RandomInstance inst = make_instance(3);
  DerivedProver prover(inst.C, inst.H, inst.universe);
  Registry registry;
  registry.add(prover.relation());
  std::vector<Quad> positives;
  for (const Quad& q : inst.universe->quads)
    if (prover.provable(q)) positives.push_back(q);
  for (auto _ : state) {
    CheckSession session;
    for (const Quad& q : positives)
      benchmark::DoNotOptimize(check_script(inst.C, inst.H, Goal{q, {}, true},
                                            prover.script_for(q), registry, {},
                                            &session));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(
      positives.size() * static_cast<std::size_t>(state.iterations())));
}
BENCHMARK(bench_derived_proof_check);

void bench_am_case_study(benchmark::State& state) {
  Program p = parse_program("load r1 r2\nbeqz r1 0\nadd r2 r2 1\n");
  EnumBounds bounds;  // default full bounds
  AmInstance inst = build_am_instance(p, Predictor::constant_next(3), 2,
                                      machine_config(bounds));
  CaseStudyOptions opts;
  opts.bounds = bounds;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_am_case_study(inst, opts));
}
BENCHMARK(bench_am_case_study);

}  // namespace

BENCHMARK_MAIN();
