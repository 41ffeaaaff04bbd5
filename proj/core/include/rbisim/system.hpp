#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rbisim/errors.hpp"
#include "rbisim/obs.hpp"

namespace rbisim {

// States are interned on first use; all algorithms work on dense ids.
using StateId = std::uint32_t;
using ObsId = std::uint32_t;
using CoreId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();
inline constexpr ObsId kNoObs = std::numeric_limits<ObsId>::max();
inline constexpr CoreId kNoCore = std::numeric_limits<CoreId>::max();

// A model supplies the raw deterministic semantics:
//   using State = ...;                 hashable (std::hash or nested StateHash)
//   State next(const State&) const;    total
//   Obs leak(const State&) const;      total
//   std::string label(const State&) const;   canonical, whitespace-free
// Optionally:
//   std::string core_label(const State&) const;
// core_label identifies the state modulo monotonically growing attacker-visible
// baggage (the cache). Pair-walk revisit detection keys on it; models without
// unbounded components just inherit label.

namespace detail {

template <class M, class = void>
struct StateHashOf {
  using type = std::hash<typename M::State>;
};
template <class M>
struct StateHashOf<M, std::void_t<typename M::StateHash>> {
  using type = typename M::StateHash;
};

template <class M>
concept HasCoreLabel = requires(const M& m, const typename M::State& s) {
  { m.core_label(s) } -> std::convertible_to<std::string>;
};

class SystemImplBase {
 public:
  virtual ~SystemImplBase() = default;
  virtual StateId next(StateId s) = 0;
  virtual ObsId leak_id(StateId s) = 0;
  virtual const Obs& obs(ObsId o) const = 0;
  virtual std::size_t obs_count() const = 0;
  virtual const std::string& label(StateId s) = 0;
  virtual std::optional<StateId> find(const std::string& label) = 0;
  virtual CoreId core(StateId s) = 0;
  virtual std::size_t size() const = 0;
};

template <class M>
class ModelImpl final : public SystemImplBase {
 public:
  using State = typename M::State;
  using Hash = typename StateHashOf<M>::type;

  explicit ModelImpl(M model) : model_(std::move(model)) {}

  StateId intern(const State& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    StateId id = static_cast<StateId>(states_.size());
    states_.push_back(s);
    index_.emplace(states_.back(), id);
    next_.push_back(kNoState);
    leak_.push_back(kNoObs);
    core_.push_back(kNoCore);
    labels_.emplace_back();
    return id;
  }

  StateId next(StateId s) override {
    StateId n = next_[s];
    if (n == kNoState) {
      n = intern(model_.next(states_[s]));
      next_[s] = n;
    }
    return n;
  }

  ObsId leak_id(StateId s) override {
    ObsId o = leak_[s];
    if (o == kNoObs) {
      o = intern_obs(model_.leak(states_[s]));
      leak_[s] = o;
    }
    return o;
  }

  const Obs& obs(ObsId o) const override { return obs_pool_[o]; }
  std::size_t obs_count() const override { return obs_pool_.size(); }

  const std::string& label(StateId s) override {
    if (labels_[s].empty()) labels_[s] = model_.label(states_[s]);
    return labels_[s];
  }

  std::optional<StateId> find(const std::string& lbl) override {
    while (label_built_ < states_.size()) {
      StateId id = static_cast<StateId>(label_built_++);
      label_index_.emplace(label(id), id);
    }
    auto it = label_index_.find(lbl);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }

  CoreId core(StateId s) override {
    CoreId c = core_[s];
    if (c == kNoCore) {
      std::string key;
      if constexpr (HasCoreLabel<M>) {
        key = model_.core_label(states_[s]);
      } else {
        key = label(s);
      }
      auto [it, fresh] =
          core_index_.emplace(std::move(key), static_cast<CoreId>(core_index_.size()));
      (void)fresh;
      c = it->second;
      core_[s] = c;
    }
    return c;
  }

  std::size_t size() const override { return states_.size(); }

  const State& state(StateId s) const { return states_[s]; }
  const M& model() const { return model_; }

 private:
  ObsId intern_obs(const Obs& o) {
    auto it = obs_index_.find(o);
    if (it != obs_index_.end()) return it->second;
    ObsId id = static_cast<ObsId>(obs_pool_.size());
    obs_pool_.push_back(o);
    obs_index_.emplace(obs_pool_.back(), id);
    return id;
  }

  M model_;
  std::vector<State> states_;
  std::unordered_map<State, StateId, Hash> index_;
  std::vector<StateId> next_;
  std::vector<ObsId> leak_;
  std::vector<CoreId> core_;
  std::vector<std::string> labels_;
  std::vector<Obs> obs_pool_;
  std::unordered_map<Obs, ObsId, ObsHash> obs_index_;
  std::unordered_map<std::string, CoreId> core_index_;
  std::unordered_map<std::string, StateId> label_index_;
  std::size_t label_built_ = 0;
};

}  // namespace detail

// Cheap shared handle over an interned deterministic transition system.
// Memoization mutates internal caches; handles are not thread-safe.
class System {
 public:
  System() = default;

  template <class M>
  static System make(M model) {
    System sys;
    sys.impl_ = std::make_shared<detail::ModelImpl<M>>(std::move(model));
    return sys;
  }

  bool valid() const { return impl_ != nullptr; }
  StateId next(StateId s) const { return impl_->next(s); }
  ObsId leak_id(StateId s) const { return impl_->leak_id(s); }
  const Obs& leak(StateId s) const { return impl_->obs(impl_->leak_id(s)); }
  const Obs& obs(ObsId o) const { return impl_->obs(o); }
  std::size_t obs_count() const { return impl_->obs_count(); }
  const std::string& label(StateId s) const { return impl_->label(s); }
  std::optional<StateId> find(const std::string& lbl) const { return impl_->find(lbl); }
  CoreId core(StateId s) const { return impl_->core(s); }
  std::size_t size() const { return impl_->size(); }

  // Revisit-detection key for componentwise pair walks.
  std::uint64_t pair_key(StateId a, StateId b) const {
    return (static_cast<std::uint64_t>(impl_->core(a)) << 32) | impl_->core(b);
  }

  bool same(const System& other) const { return impl_ == other.impl_; }

 protected:
  std::shared_ptr<detail::SystemImplBase> impl_;
};

// Typed view: keeps the concrete model type so callers can intern root states
// and inspect interned states structurally.
template <class M>
class TypedSystem : public System {
 public:
  TypedSystem() = default;
  explicit TypedSystem(M model) {
    impl_ = std::make_shared<detail::ModelImpl<M>>(std::move(model));
  }
  StateId intern(const typename M::State& s) { return typed().intern(s); }
  const typename M::State& state(StateId s) const { return typed().state(s); }
  const M& model() const { return typed().model(); }

 private:
  detail::ModelImpl<M>& typed() const {
    return static_cast<detail::ModelImpl<M>&>(*impl_);
  }
};

// ---------------------------------------------------------------------------
// Termination encoding: a partial model becomes total by turning every
// halting state into a self-loop that leaks halt_leak(state) forever.

// Partial models supply:
//   std::optional<std::pair<State, Obs>> step(const State&) const;
//   Obs halt_leak(const State&) const;
// plus label / optional core_label / optional StateHash.
template <class M>
struct Terminated {
  M base;
  using State = typename M::State;
  using StateHash = typename detail::StateHashOf<M>::type;

  State next(const State& s) const {
    auto n = base.step(s);
    return n ? n->first : s;
  }
  Obs leak(const State& s) const {
    auto n = base.step(s);
    return n ? n->second : base.halt_leak(s);
  }
  std::string label(const State& s) const { return base.label(s); }
  std::string core_label(const State& s) const
    requires detail::HasCoreLabel<M>
  {
    return base.core_label(s);
  }
};

template <class M>
Terminated<M> encode_termination(M base) {
  return Terminated<M>{std::move(base)};
}

// ---------------------------------------------------------------------------
// Explicit finite graphs, for hand-built gallery systems and fuzzing.

struct ExplicitModel {
  struct Node {
    std::uint32_t succ = 0;
    Obs obs;
    std::string name;
  };
  std::vector<Node> nodes;

  using State = std::uint32_t;
  State next(State s) const { return nodes[s].succ; }
  Obs leak(State s) const { return nodes[s].obs; }
  std::string label(State s) const {
    return nodes[s].name.empty() ? "s" + std::to_string(s) : nodes[s].name;
  }
};

struct PartialExplicitModel {
  struct Node {
    std::optional<std::uint32_t> succ;
    Obs obs;
    Obs halt_obs = Obs::halt();
    std::string name;
  };
  std::vector<Node> nodes;

  using State = std::uint32_t;
  std::optional<std::pair<State, Obs>> step(State s) const {
    if (!nodes[s].succ) return std::nullopt;
    return std::make_pair(*nodes[s].succ, nodes[s].obs);
  }
  Obs halt_leak(State s) const { return nodes[s].halt_obs; }
  std::string label(State s) const {
    return nodes[s].name.empty() ? "s" + std::to_string(s) : nodes[s].name;
  }
};

// ---------------------------------------------------------------------------

struct TracePrefix {
  StateId origin = kNoState;
  std::vector<ObsId> observations;
};

inline TracePrefix trace_prefix(const System& t, StateId s, std::size_t n) {
  TracePrefix p;
  p.origin = s;
  p.observations.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.observations.push_back(t.leak_id(s));
    s = t.next(s);
  }
  return p;
}

inline std::vector<Obs> trace_prefix_obs(const System& t, StateId s, std::size_t n) {
  std::vector<Obs> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(t.leak(s));
    s = t.next(s);
  }
  return out;
}

// Path from s until the first revisited state. Deterministic systems only ever
// trace a lasso, so this is the full forward-reachable set.
inline std::vector<StateId> reachable_states(const System& t, StateId s,
                                             std::size_t bound) {
  std::vector<StateId> order;
  std::unordered_set<StateId> seen;
  while (order.size() < bound) {
    if (!seen.insert(s).second) return order;
    order.push_back(s);
    s = t.next(s);
  }
  if (seen.count(s)) return order;
  throw BudgetExceeded("reachable_states: no revisit within bound " +
                       std::to_string(bound));
}

}  // namespace rbisim
