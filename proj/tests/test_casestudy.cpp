// Case-study machinery: program enumeration, the cache-delta view, and
// cross-checks of the collapsed exhaustive runner against the naive
// quad-by-quad oracle and the generic bounded closure checker.
#include "doctest.h"
#include "rbisim/casestudy.hpp"
#include "rbisim/checker.hpp"

using namespace rbisim;

namespace {

const EnumBounds kSmall{2, 2};

}  // namespace

TEST_CASE("program enumeration matches the counting argument") {
  // Per slot at length L: 4 loads, 4*(values) adds, 2*(L+1) branch targets.
  auto len1 = enumerate_programs(1, kSmall);
  CHECK(len1.size() == 4 + 8 + 4);
  auto len3 = enumerate_programs(3, EnumBounds{4, 3});
  CHECK(len3.size() == 20u + 22u * 22u + 24u * 24u * 24u);
  // Spot check: all distinct after printing.
  std::vector<std::string> texts;
  for (const Program& p : len1) texts.push_back(print_program(p));
  std::sort(texts.begin(), texts.end());
  CHECK(std::adjacent_find(texts.begin(), texts.end()) == texts.end());
}

TEST_CASE("cache-delta view preserves hardware trace equality") {
  Program p = parse_program("load r1 r2\nbeqz r1 0\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  AmInstance inst = build_am_instance(p, Predictor::constant_jump(3), 1, cfg);

  TypedSystem<Terminated<CacheDelta<SpecHwModel>>> delta(
      Terminated<CacheDelta<SpecHwModel>>{
          CacheDelta<SpecHwModel>{SpecHwModel{p, inst.pred, 1, cfg}}});

  auto states = enumerate_arch_states(kSmall, 0);
  std::vector<StateId> real_ids, delta_ids;
  for (const ArchState& a : states) {
    real_ids.push_back(inst.hardware_init(a));
    SpecHwState s;
    s.hw.arch = a;
    delta_ids.push_back(delta.intern(s));
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) {
      bool real = traces_equal(inst.H, real_ids[i], real_ids[j]).equal;
      bool fast = traces_equal(delta, delta_ids[i], delta_ids[j]).equal;
      CHECK(real == fast);
    }
}

TEST_CASE("collapsed runner agrees with the naive oracle (speculation)") {
  Program p = parse_program("load r1 r2\nbeqz r1 0\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  for (std::uint32_t w : {1u, 2u}) {
    AmInstance inst = build_am_instance(p, Predictor::constant_next(3), w, cfg);
    CaseStudyOptions opts;
    opts.bounds = kSmall;
    Report r = run_am_case_study(inst, opts);

    bool all = true;
    auto states = enumerate_arch_states(kSmall, 0);
    for (const ArchState& a : states)
      for (const ArchState& b : states) {
        Quad q{inst.contract_init(a), inst.contract_init(b),
               inst.hardware_init(a), inst.hardware_init(b)};
        all = all && rel_trace_eq(inst.C, inst.H, q);
      }
    CHECK(all);  // the contract really does over-approximate here
    CHECK(r.ok == all);
    CHECK(r.refuted == 0);
    CHECK(r.checked >= states.size() * states.size());
  }
}

TEST_CASE("collapsed runner agrees with the naive oracle (out-of-order)") {
  Program p = parse_program("load r1 r1\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  for (const Scheduler& sched : enumerate_valid_schedulers(p)) {
    OooInstance inst = build_ooo_instance(p, sched, cfg);
    CaseStudyOptions opts;
    opts.bounds = kSmall;
    Report r = run_ooo_case_study(inst, opts);
    CHECK(r.ok);
    CHECK(r.refuted == 0);
  }
}

TEST_CASE("collapsed runner refutes the invalid-scheduler negative control") {
  Program p = parse_program("load r1 r1\nload r1 r2\n");
  MachineConfig cfg = machine_config(kSmall);
  Scheduler bad{std::vector<std::uint8_t>{1, 0}, "bad"};
  OooInstance inst = build_ooo_instance(p, bad, cfg, /*skip_validity=*/true);
  CaseStudyOptions opts;
  opts.bounds = kSmall;
  Report r = run_ooo_case_study(inst, opts);
  CHECK(!r.ok);
  CHECK(r.refuted > 0);
  REQUIRE(r.counterexample.has_value());
  // The recorded counterexample matches the naive oracle's shape: equal
  // contract prefixes, diverging hardware prefixes.
  const Counterexample& cx = *r.counterexample;
  CHECK(cx.hardware_trace_1 != cx.hardware_trace_2);
}

TEST_CASE("generic closure checker accepts the proof invariant (speculation)") {
  Program p = parse_program("load r1 r2\nadd r2 r1 1\n");  // straight-line
  MachineConfig cfg = machine_config(kSmall);
  AmInstance inst = build_am_instance(p, Predictor::constant_next(2), 2, cfg);
  auto universe = am_initial_universe(inst, kSmall);
  QuadRelPtr invariant = inst.invariant(universe);
  CHECK(!invariant->members().empty());
  Verdict v = check_invariant_closure(inst.C, inst.H, invariant, 2 + 2);
  CHECK(v.accepted);

  // The collapsed runner reaches the same verdict on the same instance.
  CaseStudyOptions opts;
  opts.bounds = kSmall;
  CHECK(run_am_case_study(inst, opts).ok);
}

TEST_CASE("generic closure checker accepts the proof invariant (out-of-order)") {
  Program p = parse_program("load r1 r1\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  Scheduler delay0{std::vector<std::uint8_t>{1, 0}, "delay0"};
  OooInstance inst = build_ooo_instance(p, delay0, cfg);
  auto universe = ooo_initial_universe(inst, kSmall);
  QuadRelPtr invariant = inst.invariant(universe);
  CHECK(!invariant->members().empty());
  CHECK(check_invariant_closure(inst.C, inst.H, invariant, 3).accepted);
}

TEST_CASE("case-study options must match the instance bounds") {
  Program p = parse_program("add r1 r1 1\n");
  AmInstance inst = build_am_instance(p, Predictor::constant_next(1), 1,
                                      machine_config(kSmall));
  CaseStudyOptions opts;
  opts.bounds = EnumBounds{4, 3};  // disagrees with the instance's config
  CHECK_THROWS_AS(run_am_case_study(inst, opts), ConfigError);
}

TEST_CASE("tiny sweeps verify and deduplicate as expected") {
  SweepOptions opts;
  opts.max_len = 1;
  opts.bounds = kSmall;
  opts.windows = {1};

  Report am = sweep_am_case_studies(opts);
  CHECK(am.ok);
  // 12 branchless programs collapse to one instance each; the 4 one-branch
  // programs see two distinct predictor decisions at the branch.
  CHECK(am.checked == 12 + 4 * 2);

  Report ooo = sweep_ooo_case_studies(opts);
  CHECK(ooo.ok);
  CHECK(ooo.checked == 16);  // no delayable slots at length 1
}
