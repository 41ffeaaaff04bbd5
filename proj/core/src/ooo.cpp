#include "rbisim/ooo.hpp"

#include <sstream>

#include "rbisim/errors.hpp"

namespace rbisim {

namespace {

constexpr int kPcSentinel = 2;  // distinct from both registers

int src_of(const Instruction& i) { return static_cast<int>(i.x2); }
int des_of(const Instruction& i) {
  return i.op == Instruction::Op::Beqz ? kPcSentinel : static_cast<int>(i.x1);
}

std::string instr_token(const Instruction& i) {
  switch (i.op) {
    case Instruction::Op::Load:
      return std::string("load.") + reg_name(i.x1) + '.' + reg_name(i.x2);
    case Instruction::Op::Add:
      return std::string("add.") + reg_name(i.x1) + '.' + reg_name(i.x2) +
             '.' + std::to_string(i.k);
    case Instruction::Op::Beqz:
      return std::string("beqz.") + reg_name(i.x1) + '.' +
             std::to_string(i.target);
  }
  return "?";
}

}  // namespace

bool delayable(const Instruction& i1, const Instruction& i2) {
  if (i1.op == Instruction::Op::Beqz) return false;
  return des_of(i1) != des_of(i2) && des_of(i1) != src_of(i2) &&
         src_of(i1) != des_of(i2);
}

std::string scheduler_violation(const Program& p, const Scheduler& s) {
  for (std::uint32_t pc = 0; pc < p.size(); ++pc) {
    if (!s.delays(pc)) continue;
    if (pc + 1 >= p.size())
      return "delay at pc " + std::to_string(pc) + " has no next instruction";
    if (!delayable(p.at(pc), p.at(pc + 1)))
      return "instructions at pc " + std::to_string(pc) + " and " +
             std::to_string(pc + 1) + " are not delayable";
  }
  return "";
}

Scheduler parse_scheduler(const std::string& text, std::size_t len) {
  Scheduler s{std::vector<std::uint8_t>(len, 0), "file"};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::uint64_t pc;
    std::string what;
    if (!(line >> pc)) continue;
    if (!(line >> what) || (what != "execute" && what != "delay"))
      throw ParseError("expected 'pc execute|delay'", lineno, 1);
    if (pc < len) s.delay[pc] = what == "delay" ? 1 : 0;
  }
  return s;
}

std::string print_scheduler(const Scheduler& s) {
  std::string out;
  for (std::size_t pc = 0; pc < s.delay.size(); ++pc)
    out += std::to_string(pc) + (s.delay[pc] ? " delay" : " execute") + "\n";
  return out;
}

std::vector<Scheduler> enumerate_valid_schedulers(const Program& p) {
  std::vector<std::uint32_t> slots;
  for (std::uint32_t pc = 0; pc + 1 < p.size(); ++pc)
    if (delayable(p.at(pc), p.at(pc + 1))) slots.push_back(pc);
  std::vector<Scheduler> out;
  for (std::uint64_t bits = 0; bits < (1ull << slots.size()); ++bits) {
    Scheduler s{std::vector<std::uint8_t>(p.size(), 0),
                "subset-" + std::to_string(bits)};
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (bits & (1ull << j)) s.delay[slots[j]] = 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::pair<OooState, Obs>> OooModel::step(const State& s) const {
  if (s.has_buf) {
    // Execute Heap: run the buffered instruction, then restore pc.
    auto [hw2, obs] = hw_step(s.hw, s.buf, cfg);
    hw2.arch.pc = s.hw.arch.pc;
    State n;
    n.hw = std::move(hw2);
    return std::make_pair(std::move(n), std::move(obs));
  }
  std::uint32_t pc = s.hw.arch.pc;
  if (!prog.in_range(pc)) return std::nullopt;  // halt
  if (sched.delays(pc)) {
    if (pc + 1 >= prog.size() ||
        (!skip_validity_check && !delayable(prog.at(pc), prog.at(pc + 1))))
      throw ConfigError("invalid scheduler: delay at pc " + std::to_string(pc));
    VanillaHwState shifted = s.hw;
    shifted.arch.pc = pc + 1;
    auto [hw2, obs] = hw_step(shifted, prog.at(pc + 1), cfg);
    State n;
    n.hw = std::move(hw2);
    n.has_buf = true;
    n.buf = prog.at(pc);
    return std::make_pair(std::move(n), std::move(obs));
  }
  auto [hw2, obs] = hw_step(s.hw, prog.at(pc), cfg);
  State n;
  n.hw = std::move(hw2);
  return std::make_pair(std::move(n), std::move(obs));
}

std::string OooModel::core_label(const State& s) const {
  return "ooo{" + arch_label(s.hw.arch) + "|buf=" +
         (s.has_buf ? instr_token(s.buf) : "none") + "}";
}

std::string OooModel::label(const State& s) const {
  std::string out = core_label(s);
  out.back() = '|';
  out += cache_label(s.hw.cache) + "}";
  return out;
}

std::pair<OooState, Obs> ooo_next_leak(const OooModel& m, const OooState& s) {
  auto n = m.step(s);
  if (n) return *n;
  return {s, m.halt_leak(s)};
}

std::optional<std::pair<ArchState, Obs>> SeqModel::step(const State& s) const {
  if (!prog.in_range(s.pc)) return std::nullopt;
  const Instruction& i = prog.at(s.pc);
  Obs obs = Obs::unit();
  if (i.op == Instruction::Op::Load)
    obs = Obs::address(s.reg(i.x2));
  else if (i.op == Instruction::Op::Beqz)
    obs = Obs::branch(s.reg(i.x1) == 0);
  return std::make_pair(arch_step(s, i, cfg), std::move(obs));
}

std::pair<ArchState, Obs> seq_next_leak(const SeqModel& m, const ArchState& s) {
  auto n = m.step(s);
  if (n) return *n;
  return {s, m.halt_leak(s)};
}

}  // namespace rbisim
