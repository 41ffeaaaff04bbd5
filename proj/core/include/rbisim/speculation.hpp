#pragma once

#include <optional>
#include <utility>

#include "rbisim/isa.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

inline constexpr std::uint32_t kInfWindow = 0xffffffffu;  // inf - 1 = inf

inline std::string window_label(std::uint32_t w) {
  return w == kInfWindow ? "inf" : std::to_string(w);
}

// Pure pc-indexed branch predictor; no training state.
struct Predictor {
  std::vector<std::uint8_t> jump;  // indexed by pc; 1 = predict jump
  std::string name;

  bool predicts_jump(std::uint32_t pc) const {
    return pc < jump.size() && jump[pc] != 0;
  }

  static Predictor constant_next(std::size_t len);
  static Predictor constant_jump(std::size_t len);
  static Predictor alternating(std::size_t len);  // jump at even pcs
};

// File format: lines "pc jump|next", '#' comments.
Predictor parse_predictor(const std::string& text, std::size_t len);
std::string print_predictor(const Predictor& p);

// Speculating hardware state: vanilla state + remaining window + checkpoint
// (prediction-correct flag and architectural rollback state).
struct SpecHwState {
  VanillaHwState hw;
  std::uint32_t window = kInfWindow;
  bool has_cp = false;
  bool cp_ok = false;
  ArchState cp_arch;  // canonical empty when has_cp is false

  bool operator==(const SpecHwState& o) const {
    return window == o.window && has_cp == o.has_cp && cp_ok == o.cp_ok &&
           hw == o.hw && cp_arch == o.cp_arch;
  }
};

struct SpecHwStateHash {
  std::size_t operator()(const SpecHwState& s) const {
    std::size_t h = VanillaHwStateHash{}(s.hw);
    h = hash_combine(h, s.window);
    h = hash_combine(h, (s.has_cp ? 2u : 0u) | (s.cp_ok ? 1u : 0u));
    if (s.has_cp) h = hash_combine(h, ArchStateHash{}(s.cp_arch));
    return h;
  }
};

// Always-mispredict contract state.
struct AmState {
  ArchState arch;
  std::uint32_t window = kInfWindow;
  bool has_rb = false;
  ArchState rollback;  // canonical empty when has_rb is false

  bool operator==(const AmState& o) const {
    return window == o.window && has_rb == o.has_rb && arch == o.arch &&
           rollback == o.rollback;
  }
};

struct AmStateHash {
  std::size_t operator()(const AmState& s) const {
    std::size_t h = ArchStateHash{}(s.arch);
    h = hash_combine(h, s.window);
    if (s.has_rb) h = hash_combine(h, ArchStateHash{}(s.rollback));
    return h;
  }
};

// Partial models (halting at out-of-range pc outside speculation); wrap with
// encode_termination to obtain total systems.

struct SpecHwModel {
  Program prog;
  Predictor pred;
  std::uint32_t w = 2;
  MachineConfig cfg;

  using State = SpecHwState;
  using StateHash = SpecHwStateHash;

  std::optional<std::pair<State, Obs>> step(const State& s) const;
  // Halted hardware keeps leaking its final cache.
  Obs halt_leak(const State& s) const { return Obs::cache_snapshot(s.hw.cache); }
  std::string label(const State& s) const;
  std::string core_label(const State& s) const;  // label minus the cache
};

struct AmModel {
  Program prog;
  std::uint32_t w = 2;
  MachineConfig cfg;

  using State = AmState;
  using StateHash = AmStateHash;

  std::optional<std::pair<State, Obs>> step(const State& s) const;
  Obs halt_leak(const State&) const { return Obs::halt(); }
  std::string label(const State& s) const;
};

std::pair<SpecHwState, Obs> spec_hw_next_leak(const SpecHwModel& m,
                                              const SpecHwState& s);
std::pair<AmState, Obs> am_next_leak(const AmModel& m, const AmState& s);

}  // namespace rbisim
