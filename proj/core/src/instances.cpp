#include "rbisim/instances.hpp"

#include "rbisim/errors.hpp"

namespace rbisim {

std::vector<ArchState> enumerate_arch_states(const EnumBounds& b,
                                             std::uint32_t pc) {
  std::vector<ArchState> out;
  std::vector<std::int64_t> mem(b.mem_size, 0);
  // Odometer over memory cells, then both registers.
  for (;;) {
    for (std::int64_t r1 = 0; r1 < b.num_values; ++r1) {
      for (std::int64_t r2 = 0; r2 < b.num_values; ++r2) {
        ArchState s;
        s.mem = mem;
        s.regs = {r1, r2};
        s.pc = pc;
        out.push_back(std::move(s));
      }
    }
    std::size_t i = 0;
    while (i < mem.size() && ++mem[i] == b.num_values) mem[i++] = 0;
    if (i == mem.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

StateId AmInstance::contract_init(const ArchState& arch) {
  AmState s;
  s.arch = arch;
  return C.intern(s);
}

StateId AmInstance::hardware_init(const ArchState& arch,
                                  std::vector<std::uint32_t> cache) {
  SpecHwState s;
  s.hw = VanillaHwState{arch, std::move(cache)};
  return H.intern(s);
}

bool AmInstance::invariant_shape(const Quad& q) const {
  const AmState& c1 = C.state(q.s1);
  const AmState& c2 = C.state(q.s2);
  const SpecHwState& h1 = H.state(q.h1);
  const SpecHwState& h2 = H.state(q.h2);
  return c1.window == kInfWindow && !c1.has_rb && c2.window == kInfWindow &&
         !c2.has_rb && h1.window == kInfWindow && !h1.has_cp &&
         h2.window == kInfWindow && !h2.has_cp && c1.arch.pc == c2.arch.pc &&
         h1.hw.arch == c1.arch && h2.hw.arch == c2.arch &&
         h1.hw.cache == h2.hw.cache;
}

QuadRelPtr AmInstance::invariant(
    std::shared_ptr<const QuadUniverse> universe) const {
  // Capture the (cheaply shared) system handles, not `this`: the instance
  // struct may move after this call.
  auto c = C;
  auto h = H;
  return make_intensional("I-am", std::move(universe), [c, h](const Quad& q) {
    const AmState& c1 = c.state(q.s1);
    const AmState& c2 = c.state(q.s2);
    const SpecHwState& h1 = h.state(q.h1);
    const SpecHwState& h2 = h.state(q.h2);
    return c1.window == kInfWindow && !c1.has_rb && c2.window == kInfWindow &&
           !c2.has_rb && h1.window == kInfWindow && !h1.has_cp &&
           h2.window == kInfWindow && !h2.has_cp && c1.arch.pc == c2.arch.pc &&
           h1.hw.arch == c1.arch && h2.hw.arch == c2.arch &&
           h1.hw.cache == h2.hw.cache;
  });
}

AmInstance build_am_instance(Program prog, Predictor pred, std::uint32_t w,
                             MachineConfig cfg) {
  if (w == 0 || w == kInfWindow) throw ConfigError("window must be finite >= 1");
  AmInstance inst;
  inst.prog = prog;
  inst.pred = pred;
  inst.w = w;
  inst.cfg = cfg;
  inst.C = TypedSystem<Terminated<AmModel>>(
      encode_termination(AmModel{prog, w, cfg}));
  inst.H = TypedSystem<Terminated<SpecHwModel>>(
      encode_termination(SpecHwModel{std::move(prog), std::move(pred), w, cfg}));
  return inst;
}

// ---------------------------------------------------------------------------

StateId OooInstance::contract_init(const ArchState& arch) {
  return C.intern(arch);
}

StateId OooInstance::hardware_init(const ArchState& arch,
                                   std::vector<std::uint32_t> cache) {
  OooState s;
  s.hw = VanillaHwState{arch, std::move(cache)};
  return H.intern(s);
}

bool OooInstance::invariant_shape(const Quad& q) const {
  const ArchState& c1 = C.state(q.s1);
  const ArchState& c2 = C.state(q.s2);
  const OooState& h1 = H.state(q.h1);
  const OooState& h2 = H.state(q.h2);
  return !h1.has_buf && !h2.has_buf && c1.pc == c2.pc && h1.hw.arch == c1 &&
         h2.hw.arch == c2 && h1.hw.cache == h2.hw.cache;
}

QuadRelPtr OooInstance::invariant(
    std::shared_ptr<const QuadUniverse> universe) const {
  auto c = C;
  auto h = H;
  return make_intensional("I-ooo", std::move(universe), [c, h](const Quad& q) {
    const ArchState& c1 = c.state(q.s1);
    const ArchState& c2 = c.state(q.s2);
    const OooState& h1 = h.state(q.h1);
    const OooState& h2 = h.state(q.h2);
    return !h1.has_buf && !h2.has_buf && c1.pc == c2.pc && h1.hw.arch == c1 &&
           h2.hw.arch == c2 && h1.hw.cache == h2.hw.cache;
  });
}

OooInstance build_ooo_instance(Program prog, Scheduler sched,
                               MachineConfig cfg, bool skip_validity) {
  if (!skip_validity) {
    std::string err = scheduler_violation(prog, sched);
    if (!err.empty()) throw ConfigError("invalid scheduler: " + err);
  }
  OooInstance inst;
  inst.prog = prog;
  inst.sched = sched;
  inst.cfg = cfg;
  inst.C = TypedSystem<Terminated<SeqModel>>(
      encode_termination(SeqModel{prog, cfg}));
  OooModel model{std::move(prog), std::move(sched), cfg, skip_validity};
  inst.H = TypedSystem<Terminated<OooModel>>(
      encode_termination(std::move(model)));
  return inst;
}

}  // namespace rbisim
