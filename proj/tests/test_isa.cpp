// The three-instruction ISA: parsing, architectural semantics, the vanilla
// cache-tracking hardware step, predictors, schedulers and delayability.
#include "doctest.h"
#include "rbisim/errors.hpp"
#include "rbisim/isa.hpp"
#include "rbisim/ooo.hpp"
#include "rbisim/speculation.hpp"

using namespace rbisim;

namespace {

ArchState arch(std::vector<std::int64_t> mem, std::int64_t r1, std::int64_t r2,
               std::uint32_t pc = 0) {
  ArchState s;
  s.mem = std::move(mem);
  s.regs = {r1, r2};
  s.pc = pc;
  return s;
}

}  // namespace

TEST_CASE("program parse/print round-trips") {
  const char* text = "load r1 r2\nadd r2 r1 2\nbeqz r1 0\n";
  Program p = parse_program(text);
  REQUIRE(p.size() == 3);
  CHECK(p.at(0).op == Instruction::Op::Load);
  CHECK(p.at(1).k == 2);
  CHECK(p.at(2).target == 0);
  CHECK(p.has_branch());
  CHECK(print_program(p) == text);
  CHECK(print_program(parse_program(print_program(p))) == print_program(p));

  CHECK(!parse_program("add r1 r1 0").has_branch());
  CHECK_THROWS_AS(parse_program(""), ParseError);
  CHECK_THROWS_AS(parse_program("load r1\n"), ParseError);
  CHECK_THROWS_AS(parse_program("mov r1 r2\n"), ParseError);
  CHECK_THROWS_AS(parse_program("add r1 r2 banana\n"), ParseError);
  CHECK_THROWS_AS(parse_program("load r1 r2 r1\n"), ParseError);
  CHECK_THROWS_AS(parse_program("load r3 r2\n"), ParseError);
}

TEST_CASE("effective addresses clamp negatives and wrap") {
  MachineConfig cfg{4, 0};
  CHECK(effective_address(-5, cfg) == 0);
  CHECK(effective_address(0, cfg) == 0);
  CHECK(effective_address(3, cfg) == 3);
  CHECK(effective_address(4, cfg) == 0);
  CHECK(effective_address(11, cfg) == 3);
}

TEST_CASE("architectural step semantics") {
  MachineConfig cfg{4, 0};
  ArchState s = arch({10, 20, 30, 40}, 0, 6);

  // load r1 r2: r1 := mem[6 mod 4] = 30, pc advances.
  ArchState l = arch_step(s, Instruction::load(Reg::R1, Reg::R2), cfg);
  CHECK(l.reg(Reg::R1) == 30);
  CHECK(l.pc == 1);
  CHECK(l.mem == s.mem);

  // add r2 r1 5: r2 := r1 + 5.
  ArchState a = arch_step(s, Instruction::add(Reg::R2, Reg::R1, 5), cfg);
  CHECK(a.reg(Reg::R2) == 5);
  CHECK(a.reg(Reg::R1) == 0);

  // Modular arithmetic keeps the value domain bounded.
  MachineConfig modcfg{4, 3};
  ArchState w = arch_step(arch({0, 0, 0, 0}, 2, 0),
                          Instruction::add(Reg::R1, Reg::R1, 2), modcfg);
  CHECK(w.reg(Reg::R1) == 1);  // (2 + 2) mod 3

  // beqz taken exactly when the condition register is zero.
  ArchState t = arch_step(s, Instruction::beqz(Reg::R1, 3), cfg);
  CHECK(t.pc == 3);
  ArchState nt = arch_step(s, Instruction::beqz(Reg::R2, 3), cfg);
  CHECK(nt.pc == 1);
}

TEST_CASE("hardware step leaks the pre-state cache; loads prepend") {
  MachineConfig cfg{4, 0};
  VanillaHwState h;
  h.arch = arch({7, 8, 9, 1}, 0, 2);
  h.cache = {3};

  auto [h2, obs] = hw_step(h, Instruction::load(Reg::R1, Reg::R2), cfg);
  CHECK(obs == Obs::cache_snapshot({3}));  // the address is not in this leak
  CHECK(h2.cache == std::vector<std::uint32_t>{2, 3});
  CHECK(h2.arch.reg(Reg::R1) == 9);

  // Non-loads leave the cache alone.
  auto [h3, obs3] = hw_step(h, Instruction::add(Reg::R1, Reg::R1, 1), cfg);
  CHECK(obs3 == Obs::cache_snapshot({3}));
  CHECK(h3.cache == h.cache);
}

TEST_CASE("predictors: built-ins and file parsing") {
  Predictor n = Predictor::constant_next(3);
  Predictor j = Predictor::constant_jump(3);
  Predictor a = Predictor::alternating(4);
  for (std::uint32_t pc = 0; pc < 3; ++pc) {
    CHECK(!n.predicts_jump(pc));
    CHECK(j.predicts_jump(pc));
  }
  CHECK(a.predicts_jump(0));
  CHECK(!a.predicts_jump(1));
  CHECK(a.predicts_jump(2));

  Predictor f = parse_predictor("# comment\n0 jump\n2 next\n", 3);
  CHECK(f.predicts_jump(0));
  CHECK(!f.predicts_jump(1));
  CHECK(!f.predicts_jump(2));
  CHECK_THROWS_AS(parse_predictor("0 sideways\n", 3), ParseError);
  // Print/parse round-trip preserves the decision table.
  Predictor g = parse_predictor(print_predictor(f), 3);
  CHECK(g.jump == f.jump);
}

TEST_CASE("delayability is register disjointness, never across branches") {
  Instruction load11 = Instruction::load(Reg::R1, Reg::R1);
  Instruction load12 = Instruction::load(Reg::R1, Reg::R2);
  Instruction add22 = Instruction::add(Reg::R2, Reg::R2, 1);
  Instruction add21 = Instruction::add(Reg::R2, Reg::R1, 0);
  Instruction br1 = Instruction::beqz(Reg::R1, 0);
  Instruction br2 = Instruction::beqz(Reg::R2, 0);

  CHECK(delayable(load11, add22));   // {r1} vs {r2}: disjoint
  CHECK(!delayable(load12, add22));  // add writes r2, load reads r2
  CHECK(!delayable(load11, add21));  // add reads r1, load writes r1
  CHECK(!delayable(br1, add22));     // branches are never delayed
  CHECK(!delayable(load11, br1));    // branch reads what the load writes
  CHECK(delayable(load11, br2));     // branch on the untouched register
}

TEST_CASE("scheduler validity and enumeration") {
  Program p = parse_program("load r1 r1\nadd r2 r2 1\nbeqz r2 0\n");
  CHECK(scheduler_violation(p, Scheduler::all_execute(3)).empty());

  Scheduler d0{std::vector<std::uint8_t>{1, 0, 0}, "d0"};
  CHECK(scheduler_violation(p, d0).empty());  // load/add are delayable

  Scheduler d1{std::vector<std::uint8_t>{0, 1, 0}, "d1"};
  CHECK(!scheduler_violation(p, d1).empty());  // add writes the branch input

  Scheduler dend{std::vector<std::uint8_t>{0, 0, 1}, "dend"};
  CHECK(!scheduler_violation(p, dend).empty());  // nothing to delay past

  auto all = enumerate_valid_schedulers(p);
  CHECK(all.size() == 2);  // one delayable slot: include it or not
  for (const auto& s : all) CHECK(scheduler_violation(p, s).empty());

  Scheduler parsed = parse_scheduler("0 delay\n1 execute\n2 execute\n", 3);
  CHECK(parsed.delays(0));
  CHECK(!parsed.delays(1));
  CHECK_THROWS_AS(parse_scheduler("0 maybe\n", 3), ParseError);
}
