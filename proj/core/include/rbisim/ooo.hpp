#pragma once

#include <optional>
#include <utility>

#include "rbisim/isa.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

// Register-disjointness condition under which the one-instruction buffer may
// swap two adjacent instructions. des(beqz) is a sentinel distinct from both
// registers so the register comparisons fail as intended.
bool delayable(const Instruction& i1, const Instruction& i2);

struct Scheduler {
  std::vector<std::uint8_t> delay;  // indexed by pc; 1 = delay
  std::string name;

  bool delays(std::uint32_t pc) const {
    return pc < delay.size() && delay[pc] != 0;
  }

  static Scheduler all_execute(std::size_t len) {
    return Scheduler{std::vector<std::uint8_t>(len, 0), "all-execute"};
  }
};

// Empty string = valid; otherwise a description of the first violation.
std::string scheduler_violation(const Program& p, const Scheduler& s);

// File format: lines "pc execute|delay", '#' comments.
Scheduler parse_scheduler(const std::string& text, std::size_t len);
std::string print_scheduler(const Scheduler& s);

// All valid schedulers for the program (subsets of eligible delay slots).
std::vector<Scheduler> enumerate_valid_schedulers(const Program& p);

struct OooState {
  VanillaHwState hw;
  bool has_buf = false;
  Instruction buf;  // never a branch

  bool operator==(const OooState& o) const {
    return has_buf == o.has_buf && hw == o.hw &&
           (!has_buf || buf == o.buf);
  }
};

struct OooStateHash {
  std::size_t operator()(const OooState& s) const {
    std::size_t h = VanillaHwStateHash{}(s.hw);
    if (s.has_buf) {
      h = hash_combine(h, static_cast<std::size_t>(s.buf.op));
      h = hash_combine(h, (static_cast<std::size_t>(s.buf.x1) << 8) |
                              static_cast<std::size_t>(s.buf.x2));
      h = hash_combine(h, static_cast<std::size_t>(s.buf.k));
      h = hash_combine(h, s.buf.target);
    }
    return h;
  }
};

struct OooModel {
  Program prog;
  Scheduler sched;
  MachineConfig cfg;
  // Test-only escape hatch: lets the negative-control experiment run an
  // invalid scheduler to demonstrate why delayable is necessary.
  bool skip_validity_check = false;

  using State = OooState;
  using StateHash = OooStateHash;

  std::optional<std::pair<State, Obs>> step(const State& s) const;
  Obs halt_leak(const State& s) const { return Obs::cache_snapshot(s.hw.cache); }
  std::string label(const State& s) const;
  std::string core_label(const State& s) const;
};

std::pair<OooState, Obs> ooo_next_leak(const OooModel& m, const OooState& s);

// Sequential contract: plain architectural execution leaking the address on
// load and the condition outcome on branch.
struct SeqModel {
  Program prog;
  MachineConfig cfg;

  using State = ArchState;
  using StateHash = ArchStateHash;

  std::optional<std::pair<State, Obs>> step(const State& s) const;
  Obs halt_leak(const State&) const { return Obs::halt(); }
  std::string label(const State& s) const { return "seq{" + arch_label(s) + "}"; }
};

std::pair<ArchState, Obs> seq_next_leak(const SeqModel& m, const ArchState& s);

}  // namespace rbisim
