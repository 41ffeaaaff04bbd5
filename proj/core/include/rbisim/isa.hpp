#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rbisim/hash.hpp"
#include "rbisim/obs.hpp"

namespace rbisim {

enum class Reg : std::uint8_t { R1 = 0, R2 = 1 };

inline const char* reg_name(Reg r) { return r == Reg::R1 ? "r1" : "r2"; }

struct Instruction {
  enum class Op : std::uint8_t { Load, Add, Beqz };
  Op op = Op::Add;
  Reg x1 = Reg::R1;  // destination (load/add); condition register (beqz)
  Reg x2 = Reg::R1;  // source (load/add)
  std::int64_t k = 0;       // add immediate
  std::uint32_t target = 0;  // beqz target location

  static Instruction load(Reg dst, Reg adr) {
    return Instruction{Op::Load, dst, adr, 0, 0};
  }
  static Instruction add(Reg dst, Reg src, std::int64_t k) {
    return Instruction{Op::Add, dst, src, k, 0};
  }
  static Instruction beqz(Reg cond, std::uint32_t target) {
    return Instruction{Op::Beqz, cond, cond, 0, target};
  }

  bool operator==(const Instruction& o) const {
    return op == o.op && x1 == o.x1 && x2 == o.x2 && k == o.k &&
           target == o.target;
  }
};

struct Program {
  std::vector<Instruction> code;

  std::size_t size() const { return code.size(); }
  bool in_range(std::uint32_t pc) const { return pc < code.size(); }
  const Instruction& at(std::uint32_t pc) const { return code[pc]; }
  bool has_branch() const {
    for (const auto& i : code)
      if (i.op == Instruction::Op::Beqz) return true;
    return false;
  }
};

// `#` starts a comment; one instruction per line.
Program parse_program(const std::string& text);
std::string print_program(const Program& p);

struct MachineConfig {
  std::uint32_t mem_size = 4;  // memory bounded to [0, mem_size)
  // 0 = plain integer arithmetic; otherwise register values reduce modulo
  // this after add, which keeps enumeration state spaces finite.
  std::int64_t value_modulus = 0;
};

struct ArchState {
  std::vector<std::int64_t> mem;
  std::array<std::int64_t, 2> regs{0, 0};
  std::uint32_t pc = 0;

  std::int64_t reg(Reg r) const { return regs[static_cast<std::size_t>(r)]; }
  void set_reg(Reg r, std::int64_t v) { regs[static_cast<std::size_t>(r)] = v; }
  bool operator==(const ArchState& o) const {
    return pc == o.pc && regs == o.regs && mem == o.mem;
  }
};

struct ArchStateHash {
  std::size_t operator()(const ArchState& s) const {
    std::size_t h = hash_combine(s.pc, static_cast<std::size_t>(s.regs[0]));
    h = hash_combine(h, static_cast<std::size_t>(s.regs[1]));
    return hash_range(s.mem.begin(), s.mem.end(), h);
  }
};

std::string arch_label(const ArchState& s);

// Negative addresses clamp to 0, then reduce modulo mem_size.
std::uint32_t effective_address(std::int64_t v, const MachineConfig& cfg);

ArchState arch_step(const ArchState& s, const Instruction& i,
                    const MachineConfig& cfg);

struct VanillaHwState {
  ArchState arch;
  std::vector<std::uint32_t> cache;  // most-recent first, unbounded

  bool operator==(const VanillaHwState& o) const {
    return arch == o.arch && cache == o.cache;
  }
};

struct VanillaHwStateHash {
  std::size_t operator()(const VanillaHwState& s) const {
    return hash_range(s.cache.begin(), s.cache.end(), ArchStateHash{}(s.arch));
  }
};

std::string cache_label(const std::vector<std::uint32_t>& cache);

// Leaks the pre-state cache on every step; load prepends its effective
// address to the cache.
std::pair<VanillaHwState, Obs> hw_step(const VanillaHwState& h,
                                       const Instruction& i,
                                       const MachineConfig& cfg);

}  // namespace rbisim
