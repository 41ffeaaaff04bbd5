#pragma once

#include <memory>

#include "rbisim/ooo.hpp"
#include "rbisim/relation.hpp"
#include "rbisim/speculation.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

struct EnumBounds {
  std::uint32_t mem_size = 4;
  std::int64_t num_values = 3;  // value domain {0, ..., num_values-1}
};

inline MachineConfig machine_config(const EnumBounds& b) {
  return MachineConfig{b.mem_size, b.num_values};
}

// All (m, a) combinations over the bounded domain at a fixed pc.
std::vector<ArchState> enumerate_arch_states(const EnumBounds& b,
                                             std::uint32_t pc);

// Always-mispredict contract vs speculating hardware for one program,
// predictor and window.
struct AmInstance {
  Program prog;
  Predictor pred;
  std::uint32_t w = 2;
  MachineConfig cfg;
  TypedSystem<Terminated<AmModel>> C;
  TypedSystem<Terminated<SpecHwModel>> H;

  StateId contract_init(const ArchState& arch);
  StateId hardware_init(const ArchState& arch,
                        std::vector<std::uint32_t> cache = {});

  // The proof-obligation shape: all four states non-speculating, hardware
  // architecture matching the contract side, shared pc and shared cache.
  bool invariant_shape(const Quad& q) const;
  QuadRelPtr invariant(std::shared_ptr<const QuadUniverse> universe) const;
};

AmInstance build_am_instance(Program prog, Predictor pred, std::uint32_t w,
                             MachineConfig cfg);

// Sequential contract vs out-of-order hardware for one program and scheduler.
struct OooInstance {
  Program prog;
  Scheduler sched;
  MachineConfig cfg;
  TypedSystem<Terminated<SeqModel>> C;
  TypedSystem<Terminated<OooModel>> H;

  StateId contract_init(const ArchState& arch);
  StateId hardware_init(const ArchState& arch,
                        std::vector<std::uint32_t> cache = {});

  // Empty buffers, matching architectures, shared pc and shared cache.
  bool invariant_shape(const Quad& q) const;
  QuadRelPtr invariant(std::shared_ptr<const QuadUniverse> universe) const;
};

// Throws ConfigError on an invalid scheduler unless skip_validity is set
// (test-only negative control).
OooInstance build_ooo_instance(Program prog, Scheduler sched, MachineConfig cfg,
                               bool skip_validity = false);

}  // namespace rbisim
