#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rbisim/quad.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

// Hard cap on pair/quad set sizes; exceeding it throws, never approximates.
inline constexpr std::size_t kDefaultBudget = 100000;

struct PairGraphVerdict {
  bool equal = false;
  std::optional<std::size_t> witness_index;  // first divergent position
};

// Decides infinite-trace equality by walking the pair graph until a leak
// mismatch or a revisited pair.
PairGraphVerdict traces_equal(const System& t, StateId s1, StateId s2,
                              std::size_t budget = kDefaultBudget);

// The contract-satisfaction implication at one quad:
// contract traces equal => hardware traces equal.
bool rel_trace_eq(const System& c, const System& h, const Quad& q,
                  std::size_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------

struct StatePair {
  StateId a = kNoState;
  StateId b = kNoState;
  bool operator==(const StatePair& o) const { return a == o.a && b == o.b; }
};
struct StatePairHash {
  std::size_t operator()(const StatePair& p) const {
    return hash_combine(p.a, p.b);
  }
};

struct PairUniverse {
  std::vector<StatePair> items;
  std::unordered_map<StatePair, std::uint32_t, StatePairHash> index;

  bool contains(const StatePair& p) const { return index.count(p) != 0; }
  std::uint32_t at(const StatePair& p) const { return index.find(p)->second; }
  std::size_t size() const { return items.size(); }
  void add(const StatePair& p);

  // Close seed pairs under the paired successor map.
  static PairUniverse close(const System& t, std::span<const StatePair> seeds,
                            std::size_t budget = kDefaultBudget);
  // All pairs over the currently interned states.
  static PairUniverse full(const System& t);
};

// Greatest fixpoint of the bisimulation functor over a next-closed universe.
// Returns a membership mask parallel to universe.items.
std::vector<char> compute_bisim(const System& t, const PairUniverse& universe);

// ---------------------------------------------------------------------------

struct QuadUniverse {
  std::vector<Quad> quads;
  std::unordered_map<Quad, std::uint32_t, QuadHash> index;

  bool contains(const Quad& q) const { return index.count(q) != 0; }
  std::uint32_t at(const Quad& q) const { return index.find(q)->second; }
  std::size_t size() const { return quads.size(); }
  void add(const Quad& q);

  // Close seeds under both componentwise successor maps.
  static QuadUniverse close(const System& c, const System& h,
                            std::span<const Quad> seeds,
                            std::size_t budget = kDefaultBudget);
  // All quads over the currently interned states of both systems.
  static QuadUniverse full(const System& c, const System& h);
};

// gfp of the lockstep functor: contract-leak mismatch discharges, otherwise
// equal hardware leaks and all four components stepped together.
std::vector<char> compute_rbisim_lockstep(const System& c, const System& h,
                                          const QuadUniverse& universe);

// gfp of the relaxed functor (contract steps coinductive, decoupled).
// Exists to demonstrate vacuity: the result is always the full universe.
std::vector<char> compute_rbisim_relaxed(const System& c, const System& h,
                                         const QuadUniverse& universe);

struct RbisimResult {
  // Which inner-fixpoint disjunct first admitted the quad (final outer pass).
  enum class Why : std::uint8_t { None, CLeak, CStep, HStep };
  std::vector<char> in;        // membership mask over universe.quads
  std::vector<std::uint32_t> rank;  // inner iteration of first admission
  std::vector<Why> why;
};

// The nested fixpoint nu R1. mu R2. (C-Leak | C-Step | H-Step): outer
// downward iteration from the full set, inner upward iteration from empty,
// inner recomputed from scratch each outer pass.
RbisimResult compute_rbisim(const System& c, const System& h,
                            const QuadUniverse& universe);

}  // namespace rbisim
