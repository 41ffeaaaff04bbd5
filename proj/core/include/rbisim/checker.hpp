#pragma once

#include <memory>
#include <unordered_map>

#include "rbisim/kernel.hpp"
#include "rbisim/script.hpp"
#include "rbisim/upto.hpp"

namespace rbisim {

struct CheckOptions {
  std::size_t oracle_budget = kDefaultBudget;  // for up-to side checks
  std::size_t rule_budget = 50'000'000;        // total rule applications
};

// Memoizes invariant-obligation verdicts across scripts that share relation
// objects and subtree nodes (e.g. many derived proofs over one instance).
// Purely an accelerator: a hit returns exactly what a fresh check would.
class CheckSession {
 public:
  struct Key {
    const void* node;
    const void* rel;
    std::size_t hyp_sig;
    bool operator==(const Key& o) const {
      return node == o.node && rel == o.rel && hyp_sig == o.hyp_sig;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return hash_combine(hash_combine(reinterpret_cast<std::size_t>(k.node),
                                       reinterpret_cast<std::size_t>(k.rel)),
                          k.hyp_sig);
    }
  };
  std::unordered_map<Key, Verdict, KeyHash> obligations;
};

// Replays a serialized derivation against the kernel rules. Invariant nodes
// enumerate the relation and require every member to be discharged by some
// supplied case subtree.
Verdict check_script(const System& c, const System& h, const Goal& root,
                     const ScriptNodePtr& script, const Registry& registry,
                     const CheckOptions& opts = {},
                     CheckSession* session = nullptr);

// Same, but the root is interpreted as a lockstep quintuple over h (the
// script body uses the lk-* rules, optionally wrapped in (lockstep ...)).
Verdict check_lockstep_script(const System& h, const Goal& root,
                              const ScriptNodePtr& script,
                              const Registry& registry,
                              const CheckOptions& opts = {},
                              CheckSession* session = nullptr);

// Checks R subseteq rbisimF(R) by exhaustive bounded derivation search per
// member: rounds of at most c_step_budget C-Steps, each round ended by C-Leak
// or by an H-Step (equal hardware leaks) whose landing quad either lies in R
// (cycle) or starts the next round; at most h_step_budget H-Steps total.
// h_step_budget = 0 means "same as c_step_budget".
Verdict check_invariant_closure(const System& c, const System& h,
                                const QuadRelPtr& r, std::size_t c_step_budget,
                                std::size_t h_step_budget = 0);

// Reduce-Contract-Leakage: replace the contract components of g by
// (s1p, s2p), justified by an accepted empty-hypothesis derivation of the
// quintuple (s1, s2, s1p, s2p) over the contract system on both sides.
Goal apply_reduce_contract_leakage(const System& c, const System& h,
                                   const Goal& g, StateId s1p, StateId s2p,
                                   const ScriptNodePtr& side_proof,
                                   const Registry& registry = {},
                                   const CheckOptions& opts = {});

// Augment-Hardware-Leakage: replace the hardware components of g by
// (h1p, h2p), justified by an accepted LOCKSTEP derivation of the lockstep
// quintuple (h1p, h2p, h1, h2). Non-lockstep side proofs are rejected.
Goal apply_augment_hardware_leakage(const System& c, const System& h,
                                    const Goal& g, StateId h1p, StateId h2p,
                                    const ScriptNodePtr& side_proof,
                                    const Registry& registry = {},
                                    const CheckOptions& opts = {});

struct NotProvable : std::runtime_error {
  explicit NotProvable(const std::string& what) : std::runtime_error(what) {}
};

// Completeness witness generator for one instance: computes the relative
// bisimulation over a closed universe once, then emits per-quad scripts whose
// root invariant and case subtrees are shared across quads.
class DerivedProver {
 public:
  DerivedProver(const System& c, const System& h,
                std::shared_ptr<const QuadUniverse> universe);

  const QuadRelPtr& relation() const { return relation_; }
  bool provable(const Quad& q) const;
  ScriptNodePtr script_for(const Quad& q) const;  // throws NotProvable

 private:
  std::shared_ptr<const QuadUniverse> universe_;
  RbisimResult result_;
  QuadRelPtr relation_;
  std::vector<std::string> case_labels_;
  std::vector<ScriptNodePtr> case_trees_;
  ScriptNodePtr root_;  // shared by every emitted script
};

// Convenience one-shot form. If rel_out is non-null it receives the invariant
// relation the script refers to (register it before checking the script).
ScriptNodePtr derive_proof(const System& c, const System& h, const Quad& q,
                           std::shared_ptr<const QuadUniverse> universe,
                           QuadRelPtr* rel_out = nullptr);

}  // namespace rbisim
