// The two model families: always-mispredict contract vs speculating hardware,
// and sequential contract vs out-of-order hardware. Includes the
// negative control showing why the delayability condition is necessary.
#include "doctest.h"
#include "rbisim/instances.hpp"
#include "rbisim/oracle.hpp"

using namespace rbisim;

namespace {

const EnumBounds kSmall{2, 2};

ArchState arch(std::vector<std::int64_t> mem, std::int64_t r1,
               std::int64_t r2) {
  ArchState s;
  s.mem = std::move(mem);
  s.regs = {r1, r2};
  return s;
}

// Runs the total (termination-encoded) system until its halting self-loop and
// returns the final state id.
StateId run_to_halt(const System& t, StateId s) {
  for (int i = 0; i < 10000; ++i) {
    StateId n = t.next(s);
    if (n == s) return s;
    s = n;
  }
  FAIL("system did not halt");
  return s;
}

}  // namespace

TEST_CASE("sequential contract leaks addresses and branch outcomes") {
  Program p = parse_program("load r1 r2\nbeqz r1 2\n");
  SeqModel m{p, machine_config(kSmall)};
  ArchState s = arch({1, 0}, 0, 0);

  auto [s1, o1] = *m.step(s);
  CHECK(o1 == Obs::address(0));  // the raw register value is the leak
  CHECK(s1.reg(Reg::R1) == 1);

  auto [s2, o2] = *m.step(s1);
  CHECK(o2 == Obs::branch(false));
  CHECK(s2.pc == 2);
  CHECK(!m.step(s2).has_value());  // out of range: halt
  CHECK(m.halt_leak(s2) == Obs::halt());
}

TEST_CASE("out-of-order hardware with no delays behaves like vanilla execution") {
  Program p = parse_program("load r1 r2\nadd r2 r2 1\nload r2 r1\n");
  MachineConfig cfg = machine_config(kSmall);
  OooInstance inst =
      build_ooo_instance(p, Scheduler::all_execute(p.size()), cfg);

  for (const ArchState& a : enumerate_arch_states(kSmall, 0)) {
    StateId s = inst.hardware_init(a);
    // Fold the vanilla hardware step by hand alongside the model.
    VanillaHwState v{a, {}};
    for (std::uint32_t pc = 0; pc < p.size(); ++pc) {
      Obs leak = inst.H.leak(s);
      auto [v2, vleak] = hw_step(v, p.at(v.arch.pc), cfg);
      CHECK(leak == vleak);
      v = std::move(v2);
      s = inst.H.next(s);
    }
    CHECK(inst.H.state(s).hw == v);  // same final cache and architecture
  }
}

TEST_CASE("valid delays preserve the final architectural state") {
  Program p = parse_program("load r1 r1\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  Scheduler delay0{std::vector<std::uint8_t>{1, 0}, "delay0"};
  REQUIRE(scheduler_violation(p, delay0).empty());
  OooInstance swapped = build_ooo_instance(p, delay0, cfg);

  for (const ArchState& a : enumerate_arch_states(kSmall, 0)) {
    StateId hs = run_to_halt(swapped.H, swapped.hardware_init(a));
    ArchState ref = a;
    while (p.in_range(ref.pc)) ref = arch_step(ref, p.at(ref.pc), cfg);
    const OooState& end = swapped.H.state(hs);
    CHECK(end.hw.arch == ref);
    CHECK(!end.has_buf);
  }
}

TEST_CASE("contract satisfaction holds for valid out-of-order schedules") {
  Program p = parse_program("load r1 r1\nadd r2 r2 1\nload r2 r2\n");
  MachineConfig cfg = machine_config(kSmall);
  for (const Scheduler& sched : enumerate_valid_schedulers(p)) {
    OooInstance inst = build_ooo_instance(p, sched, cfg);
    auto states = enumerate_arch_states(kSmall, 0);
    for (const ArchState& a : states)
      for (const ArchState& b : states) {
        Quad q{inst.contract_init(a), inst.contract_init(b),
               inst.hardware_init(a), inst.hardware_init(b)};
        CHECK(rel_trace_eq(inst.C, inst.H, q));
      }
  }
}

TEST_CASE("negative control: a non-delayable swap leaks through the cache") {
  // Delaying the first load past the second makes the second load's address
  // depend on memory, which the sequential contract never leaks.
  Program p = parse_program("load r1 r1\nload r1 r2\n");
  MachineConfig cfg = machine_config(kSmall);
  Scheduler bad{std::vector<std::uint8_t>{1, 0}, "bad"};
  CHECK(!scheduler_violation(p, bad).empty());
  CHECK_THROWS_AS(build_ooo_instance(p, bad, cfg), ConfigError);

  OooInstance inst = build_ooo_instance(p, bad, cfg, /*skip_validity=*/true);
  ArchState a = arch({0, 0}, 0, 0);
  ArchState b = arch({1, 0}, 0, 0);
  Quad q{inst.contract_init(a), inst.contract_init(b), inst.hardware_init(a),
         inst.hardware_init(b)};
  CHECK(traces_equal(inst.C, q.s1, q.s2).equal);   // contract cannot tell
  CHECK(!traces_equal(inst.H, q.h1, q.h2).equal);  // the cache can
  CHECK(!rel_trace_eq(inst.C, inst.H, q));
}

TEST_CASE("speculating hardware rolls back to the architectural path") {
  Program p = parse_program("load r1 r2\nbeqz r1 0\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  for (std::uint32_t w : {1u, 2u}) {
    AmInstance inst =
        build_am_instance(p, Predictor::constant_jump(p.size()), w, cfg);
    for (const ArchState& a : enumerate_arch_states(kSmall, 0)) {
      ArchState ref = a;
      std::size_t fuel = 100;
      while (p.in_range(ref.pc) && fuel--) ref = arch_step(ref, p.at(ref.pc), cfg);
      if (p.in_range(ref.pc)) continue;  // diverging input: nothing to compare
      const SpecHwState& end = inst.H.state(run_to_halt(inst.H, inst.hardware_init(a)));
      CHECK(end.hw.arch == ref);  // misspeculation left no architectural trace
      CHECK(!end.has_cp);
    }
  }
}

TEST_CASE("the always-mispredict contract over-approximates speculation") {
  Program p = parse_program("load r1 r2\nbeqz r1 0\nadd r2 r2 1\n");
  MachineConfig cfg = machine_config(kSmall);
  for (const Predictor& pred :
       {Predictor::constant_next(p.size()), Predictor::constant_jump(p.size()),
        Predictor::alternating(p.size())}) {
    AmInstance inst = build_am_instance(p, pred, 2, cfg);
    auto states = enumerate_arch_states(kSmall, 0);
    for (const ArchState& a : states)
      for (const ArchState& b : states) {
        Quad q{inst.contract_init(a), inst.contract_init(b),
               inst.hardware_init(a), inst.hardware_init(b)};
        CHECK(rel_trace_eq(inst.C, inst.H, q));
      }
  }
}

TEST_CASE("initial-quad shape recognizers") {
  Program p = parse_program("load r1 r2\n");
  MachineConfig cfg = machine_config(kSmall);
  AmInstance am = build_am_instance(p, Predictor::constant_next(1), 2, cfg);
  ArchState a = arch({0, 0}, 0, 0);
  ArchState b = arch({1, 0}, 0, 1);
  Quad good{am.contract_init(a), am.contract_init(b), am.hardware_init(a),
            am.hardware_init(b)};
  CHECK(am.invariant_shape(good));
  // Hardware component that does not match its contract side breaks the shape.
  Quad bad{good.s1, good.s2, good.h2, good.h1};
  CHECK(!am.invariant_shape(bad));

  OooInstance ooo = build_ooo_instance(p, Scheduler::all_execute(1), cfg);
  Quad ogood{ooo.contract_init(a), ooo.contract_init(b), ooo.hardware_init(a),
             ooo.hardware_init(b)};
  CHECK(ooo.invariant_shape(ogood));
  Quad obad{ogood.s1, ogood.s2, ogood.h2, ogood.h1};
  CHECK(!ooo.invariant_shape(obad));
}
