#pragma once

#include <functional>

#include "rbisim/instances.hpp"
#include "rbisim/report.hpp"

namespace rbisim {

// Cache-delta view of a cache-carrying hardware model. States keep an empty
// cache; the per-step observation is the address the step appends (or unit
// for steps that touch nothing). Because the real models only ever leak the
// current cache, two runs started from equal caches have equal real traces
// exactly when their delta traces are equal, and the bounded closure search
// below tracks "caches still equal" as a single boolean. This keeps the
// interned state space finite even for looping programs.
template <class M>
struct CacheDelta {
  M base;
  using State = typename M::State;
  using StateHash = typename detail::StateHashOf<M>::type;

  std::optional<std::pair<State, Obs>> step(const State& s) const {
    auto n = base.step(s);
    if (!n) return std::nullopt;
    auto& cache = n->first.hw.cache;
    n->second = cache.empty() ? Obs::unit() : Obs::address(cache.front());
    cache.clear();
    return n;
  }
  Obs halt_leak(const State&) const { return Obs::unit(); }
  std::string label(const State& s) const { return base.label(s); }
  std::string core_label(const State& s) const
    requires detail::HasCoreLabel<M>
  {
    return base.core_label(s);
  }
};

struct CaseStudyOptions {
  EnumBounds bounds;
  std::size_t c_step_budget = 0;  // 0 = model default (w+2 for am, 3 for ooo)
  std::size_t h_step_budget = 0;  // 0 = same as c_step_budget
  std::size_t run_budget = kDefaultBudget;
  std::size_t max_listed = 10;
};

// Checks one instance exhaustively over all initial quads of the invariant
// shape (equal pc, equal empty caches, non-speculating / empty-buffer):
// brute-force relative trace equality on every quad, plus the bounded closure
// of the proof invariant. The per-quad work is collapsed through trace
// classes; results are identical to the naive quad-by-quad loop.
Report run_am_case_study(const AmInstance& inst,
                         const CaseStudyOptions& opts = {});
Report run_ooo_case_study(const OooInstance& inst,
                          const CaseStudyOptions& opts = {});

// All programs of length 1..max_len: loads over both register pairs, adds
// with immediates in [0, num_values), branches to any target in [0, len].
std::vector<Program> enumerate_programs(std::size_t max_len,
                                        const EnumBounds& bounds);

struct SweepOptions {
  std::size_t max_len = 3;
  EnumBounds bounds;
  std::vector<std::uint32_t> windows{1, 2};
  std::vector<Predictor> predictors;  // empty = constant-next, constant-jump,
                                      // alternating
  std::size_t max_listed = 10;
};

// Exhaustive sweeps behind the acceptance gate. Instances whose behavior
// cannot differ are deduplicated (branchless programs ignore predictor and
// window; predictors are keyed by their decisions at branch locations only).
Report sweep_am_case_studies(const SweepOptions& opts = {});
Report sweep_ooo_case_studies(const SweepOptions& opts = {});

// Test support: the real (cache-carrying) systems' step-closed universe
// seeded with every initial quad of the invariant shape. Only terminates for
// programs whose runs do not grow the cache forever; cross-check tests use it
// on small bounds.
std::shared_ptr<const QuadUniverse> am_initial_universe(
    AmInstance& inst, const EnumBounds& bounds,
    std::size_t budget = kDefaultBudget);
std::shared_ptr<const QuadUniverse> ooo_initial_universe(
    OooInstance& inst, const EnumBounds& bounds,
    std::size_t budget = kDefaultBudget);

}  // namespace rbisim
