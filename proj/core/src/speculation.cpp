#include "rbisim/speculation.hpp"

#include <sstream>

#include "rbisim/errors.hpp"

namespace rbisim {

Predictor Predictor::constant_next(std::size_t len) {
  return Predictor{std::vector<std::uint8_t>(len, 0), "const-next"};
}

Predictor Predictor::constant_jump(std::size_t len) {
  return Predictor{std::vector<std::uint8_t>(len, 1), "const-jump"};
}

Predictor Predictor::alternating(std::size_t len) {
  Predictor p{std::vector<std::uint8_t>(len, 0), "alternating"};
  for (std::size_t pc = 0; pc < len; pc += 2) p.jump[pc] = 1;
  return p;
}

Predictor parse_predictor(const std::string& text, std::size_t len) {
  Predictor p{std::vector<std::uint8_t>(len, 0), "file"};
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
    if (!(line >> what) || (what != "jump" && what != "next"))
      throw ParseError("expected 'pc jump|next'", lineno, 1);
    if (pc < len) p.jump[pc] = what == "jump" ? 1 : 0;
  }
  return p;
}

std::string print_predictor(const Predictor& p) {
  std::string out;
  for (std::size_t pc = 0; pc < p.jump.size(); ++pc)
    out += std::to_string(pc) + (p.jump[pc] ? " jump" : " next") + "\n";
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::pair<SpecHwState, Obs>> SpecHwModel::step(
    const State& s) const {
  Obs cache_obs = Obs::cache_snapshot(s.hw.cache);

  if (s.window == 0) {
    // Commit keeps the state; Rollback restores the checkpointed
    // architectural state but keeps the cache (microarchitectural effects
    // cannot be rolled back).
    State n;
    n.hw = s.cp_ok ? s.hw : VanillaHwState{s.cp_arch, s.hw.cache};
    n.window = kInfWindow;
    return std::make_pair(std::move(n), std::move(cache_obs));
  }

  std::uint32_t pc = s.hw.arch.pc;

  if (s.window == kInfWindow) {  // not speculating
    if (!prog.in_range(pc)) return std::nullopt;  // halt
    const Instruction& i = prog.at(pc);
    if (i.op == Instruction::Op::Beqz) {
      ArchState resolved = arch_step(s.hw.arch, i, cfg);
      std::uint32_t predicted = pred.predicts_jump(pc) ? i.target : pc + 1;
      State n;
      n.hw = s.hw;
      n.hw.arch.pc = predicted;
      n.window = w;
      n.has_cp = true;
      n.cp_ok = resolved.pc == predicted;
      n.cp_arch = std::move(resolved);
      return std::make_pair(std::move(n), std::move(cache_obs));
    }
    auto [hw2, obs] = hw_step(s.hw, i, cfg);
    State n;
    n.hw = std::move(hw2);
    n.window = kInfWindow;
    return std::make_pair(std::move(n), std::move(obs));
  }

  // Speculating with window >= 1: execute architecturally, no nested
  // speculation (a branch just jumps). Out-of-range pc idles, still
  // consuming the window.
  State n = s;
  n.window = s.window - 1;
  Obs obs = std::move(cache_obs);
  if (prog.in_range(pc)) {
    auto [hw2, o] = hw_step(s.hw, prog.at(pc), cfg);
    n.hw = std::move(hw2);
    obs = std::move(o);
  }
  return std::make_pair(std::move(n), std::move(obs));
}

std::string SpecHwModel::core_label(const State& s) const {
  std::string out = "hw{" + arch_label(s.hw.arch) + "|w=" +
                    window_label(s.window) + "|cp=";
  if (s.has_cp)
    out += std::string(s.cp_ok ? "T:" : "F:") + arch_label(s.cp_arch);
  else
    out += "none";
  out += "}";
  return out;
}

std::string SpecHwModel::label(const State& s) const {
  std::string out = core_label(s);
  out.back() = '|';
  out += cache_label(s.hw.cache) + "}";
  return out;
}

std::pair<SpecHwState, Obs> spec_hw_next_leak(const SpecHwModel& m,
                                              const SpecHwState& s) {
  auto n = m.step(s);
  if (n) return *n;
  return {s, m.halt_leak(s)};  // termination self-loop
}

// ---------------------------------------------------------------------------

std::optional<std::pair<AmState, Obs>> AmModel::step(const State& s) const {
  if (s.window == 0) {
    State n;
    n.arch = s.rollback;
    n.window = kInfWindow;
    return std::make_pair(std::move(n), Obs::unit());  // Rollback leaks nothing
  }

  std::uint32_t pc = s.arch.pc;

  if (s.window == kInfWindow) {  // not speculating
    if (!prog.in_range(pc)) return std::nullopt;  // halt
    const Instruction& i = prog.at(pc);
    if (i.op == Instruction::Op::Beqz) {
      bool zero = s.arch.reg(i.x1) == 0;
      ArchState correct = arch_step(s.arch, i, cfg);
      std::uint32_t pc_wrong = zero ? pc + 1 : i.target;
      State n;
      n.arch = s.arch;
      n.arch.pc = pc_wrong;  // always execute the INCORRECT branch
      n.window = w;
      n.has_rb = true;
      n.rollback = std::move(correct);
      return std::make_pair(std::move(n), Obs::branch(zero));
    }
    State n;
    n.arch = arch_step(s.arch, i, cfg);
    n.window = kInfWindow;
    Obs obs = i.op == Instruction::Op::Load ? Obs::address(s.arch.reg(i.x2))
                                            : Obs::unit();
    return std::make_pair(std::move(n), std::move(obs));
  }

  // Speculating: execute architecturally (branches included), leak per
  // instruction kind, decrement the window; out-of-range pc idles.
  State n = s;
  n.window = s.window - 1;
  Obs obs = Obs::unit();
  if (prog.in_range(pc)) {
    const Instruction& i = prog.at(pc);
    n.arch = arch_step(s.arch, i, cfg);
    if (i.op == Instruction::Op::Load)
      obs = Obs::address(s.arch.reg(i.x2));
    else if (i.op == Instruction::Op::Beqz)
      obs = Obs::branch(s.arch.reg(i.x1) == 0);
  }
  return std::make_pair(std::move(n), std::move(obs));
}

std::string AmModel::label(const State& s) const {
  std::string out = "am{" + arch_label(s.arch) + "|w=" +
                    window_label(s.window) + "|rb=";
  out += s.has_rb ? arch_label(s.rollback) : "none";
  out += "}";
  return out;
}

std::pair<AmState, Obs> am_next_leak(const AmModel& m, const AmState& s) {
  auto n = m.step(s);
  if (n) return *n;
  return {s, m.halt_leak(s)};
}

}  // namespace rbisim
