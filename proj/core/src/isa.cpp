#include "rbisim/isa.hpp"

#include <sstream>

#include "rbisim/errors.hpp"

namespace rbisim {

namespace {

Reg parse_reg(const std::string& tok, int line, int col) {
  if (tok == "r1") return Reg::R1;
  if (tok == "r2") return Reg::R2;
  throw ParseError("expected register r1 or r2, got '" + tok + "'", line, col);
}

}  // namespace

Program parse_program(const std::string& text) {
  Program p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string op;
    if (!(line >> op)) continue;
    std::string a, b, c;
    if (op == "load") {
      if (!(line >> a >> b))
        throw ParseError("load needs two registers", lineno, 1);
      p.code.push_back(Instruction::load(parse_reg(a, lineno, 1),
                                         parse_reg(b, lineno, 1)));
    } else if (op == "add") {
      if (!(line >> a >> b >> c))
        throw ParseError("add needs two registers and an immediate", lineno, 1);
      try {
        p.code.push_back(Instruction::add(parse_reg(a, lineno, 1),
                                          parse_reg(b, lineno, 1),
                                          std::stoll(c)));
      } catch (const std::logic_error&) {
        throw ParseError("bad immediate '" + c + "'", lineno, 1);
      }
    } else if (op == "beqz") {
      if (!(line >> a >> b))
        throw ParseError("beqz needs a register and a location", lineno, 1);
      try {
        p.code.push_back(Instruction::beqz(
            parse_reg(a, lineno, 1),
            static_cast<std::uint32_t>(std::stoul(b))));
      } catch (const std::logic_error&) {
        throw ParseError("bad location '" + b + "'", lineno, 1);
      }
    } else {
      throw ParseError("unknown instruction '" + op + "'", lineno, 1);
    }
    std::string extra;
    if (line >> extra)
      throw ParseError("trailing token '" + extra + "'", lineno, 1);
  }
  if (p.code.empty()) throw ParseError("empty program", lineno, 1);
  return p;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const auto& i : p.code) {
    switch (i.op) {
      case Instruction::Op::Load:
        out += std::string("load ") + reg_name(i.x1) + ' ' + reg_name(i.x2);
        break;
      case Instruction::Op::Add:
        out += std::string("add ") + reg_name(i.x1) + ' ' + reg_name(i.x2) +
               ' ' + std::to_string(i.k);
        break;
      case Instruction::Op::Beqz:
        out += std::string("beqz ") + reg_name(i.x1) + ' ' +
               std::to_string(i.target);
        break;
    }
    out += '\n';
  }
  return out;
}

std::string arch_label(const ArchState& s) {
  std::string out = "m=";
  for (std::size_t i = 0; i < s.mem.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.mem[i]);
  }
  out += ";a=" + std::to_string(s.regs[0]) + ',' + std::to_string(s.regs[1]);
  out += ";pc=" + std::to_string(s.pc);
  return out;
}

std::uint32_t effective_address(std::int64_t v, const MachineConfig& cfg) {
  if (v < 0) v = 0;  // negatives truncate to 0
  return static_cast<std::uint32_t>(v % cfg.mem_size);
}

ArchState arch_step(const ArchState& s, const Instruction& i,
                    const MachineConfig& cfg) {
  ArchState n = s;
  switch (i.op) {
    case Instruction::Op::Load:
      n.set_reg(i.x1, s.mem[effective_address(s.reg(i.x2), cfg)]);
      n.pc = s.pc + 1;
      break;
    case Instruction::Op::Add: {
      std::int64_t v = s.reg(i.x2) + i.k;
      if (cfg.value_modulus > 0)
        v = ((v % cfg.value_modulus) + cfg.value_modulus) % cfg.value_modulus;
      n.set_reg(i.x1, v);
      n.pc = s.pc + 1;
      break;
    }
    case Instruction::Op::Beqz:
      n.pc = s.reg(i.x1) == 0 ? i.target : s.pc + 1;
      break;
  }
  return n;
}

std::string cache_label(const std::vector<std::uint32_t>& cache) {
  std::string out = "c=[";
  for (std::size_t i = 0; i < cache.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cache[i]);
  }
  out += ']';
  return out;
}

std::pair<VanillaHwState, Obs> hw_step(const VanillaHwState& h,
                                       const Instruction& i,
                                       const MachineConfig& cfg) {
  Obs obs = Obs::cache_snapshot(h.cache);
  VanillaHwState n;
  n.arch = arch_step(h.arch, i, cfg);
  if (i.op == Instruction::Op::Load) {
    n.cache.reserve(h.cache.size() + 1);
    n.cache.push_back(effective_address(h.arch.reg(i.x2), cfg));
    n.cache.insert(n.cache.end(), h.cache.begin(), h.cache.end());
  } else {
    n.cache = h.cache;
  }
  return {std::move(n), std::move(obs)};
}

}  // namespace rbisim
