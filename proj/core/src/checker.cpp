#include "rbisim/checker.hpp"

#include <unordered_map>
#include <unordered_set>

namespace rbisim {

namespace {

std::size_t hyp_signature(const std::vector<QuadRelPtr>& hyp) {
  std::size_t h = 0xabc;
  for (const auto& r : hyp)
    h = hash_combine(h, reinterpret_cast<std::size_t>(r.get()));
  return h;
}

struct Ctx {
  const System& c;
  const System& h;
  const Registry& registry;
  const CheckOptions& opts;
  CheckSession* session;
  std::size_t ops = 0;

  void tick() {
    if (++ops > opts.rule_budget)
      throw BudgetExceeded("check_script: rule application budget exceeded");
  }
};

Verdict check_node(Ctx& ctx, const Goal& g, const ScriptNodePtr& n, bool lk);

Verdict check_invariant(Ctx& ctx, const Goal& g, const ScriptNodePtr& n,
                        bool lk) {
  QuadRelPtr rel = ctx.registry.find(n->name);
  if (!rel)
    return Verdict::fail(g.quad, "invariant", "unknown relation " + n->name);
  if (!g.guarded)
    return Verdict::fail(g.quad, "invariant", "goal must be guarded");
  if (!rel->contains(g.quad))
    return Verdict::fail(g.quad, "invariant",
                         "quad not in invariant relation " + rel->name);
  std::vector<QuadRelPtr> hyp = g.hypothesis;
  bool present = false;
  for (const auto& r : hyp) present = present || r == rel;
  if (!present) hyp.push_back(rel);

  CheckSession::Key key{n.get(), rel.get(), hyp_signature(hyp)};
  if (ctx.session) {
    auto it = ctx.session->obligations.find(key);
    if (it != ctx.session->obligations.end()) return it->second;
  }

  Verdict verdict = Verdict::ok();
  for (const Quad& m : rel->members()) {
    Goal obligation{m, hyp, true};
    bool discharged = false;
    for (const auto& child : n->children) {
      if (check_node(ctx, obligation, child, lk).accepted) {
        discharged = true;
        break;
      }
    }
    if (!discharged) {
      verdict = Verdict::fail(m, "invariant",
                              "unmatched obligation: no case subtree "
                              "discharges this member of " + rel->name);
      break;
    }
  }
  if (ctx.session) ctx.session->obligations.emplace(key, verdict);
  return verdict;
}

Verdict check_node(Ctx& ctx, const Goal& g, const ScriptNodePtr& n, bool lk) {
  using K = ScriptNode::Kind;
  ctx.tick();

  auto apply = [&](Rule::Tag tag) {
    return lk ? apply_lockstep_rule(ctx.h, g, Rule::simple(tag))
              : apply_rule(ctx.c, ctx.h, g, Rule::simple(tag));
  };
  auto step_into = [&](Rule::Tag tag, const char* name) {
    try {
      auto subgoals = apply(tag);
      if (subgoals.empty()) return Verdict::ok();  // discharged outright
      return check_node(ctx, subgoals[0], n->children.at(0), lk);
    } catch (const SideConditionViolated& e) {
      return Verdict::fail(g.quad, name, e.condition);
    }
  };

  if (lk) {
    switch (n->kind) {
      case K::LkLeak:
        try {
          apply(Rule::Tag::CLeak);
          return Verdict::ok();
        } catch (const SideConditionViolated& e) {
          return Verdict::fail(g.quad, "lk-leak", e.condition);
        }
      case K::LkStep:
        return step_into(Rule::Tag::HStep, "lk-step");
      case K::LkCycle:
        try {
          apply(Rule::Tag::Cycle);
          return Verdict::ok();
        } catch (const SideConditionViolated& e) {
          return Verdict::fail(g.quad, "lk-cycle", e.condition);
        }
      case K::LkGuard:
        return step_into(Rule::Tag::Guard, "lk-guard");
      case K::LkInvariant:
        return check_invariant(ctx, g, n, true);
      case K::Lockstep:
        return check_node(ctx, g, n->children.at(0), true);
      default:
        return Verdict::fail(g.quad, "lockstep",
                             "non-lockstep rule inside a lockstep derivation");
    }
  }

  switch (n->kind) {
    case K::CLeak:
      try {
        apply(Rule::Tag::CLeak);
        return Verdict::ok();
      } catch (const SideConditionViolated& e) {
        return Verdict::fail(g.quad, "cleak", e.condition);
      }
    case K::CStep:
      return step_into(Rule::Tag::CStep, "cstep");
    case K::CStepPrime:
      return step_into(Rule::Tag::CStepPrime, "cstep'");
    case K::HStep:
      return step_into(Rule::Tag::HStep, "hstep");
    case K::Guard:
      return step_into(Rule::Tag::Guard, "guard");
    case K::Cycle:
      try {
        apply(Rule::Tag::Cycle);
        return Verdict::ok();
      } catch (const SideConditionViolated& e) {
        return Verdict::fail(g.quad, "cycle", e.condition);
      }
    case K::Invariant:
      return check_invariant(ctx, g, n, false);
    case K::UpTo: {
      const UpToFunction* f = find_upto(n->name);
      if (!f)
        return Verdict::fail(g.quad, "upto", "unknown function " + n->name);
      Quad w;
      auto s1 = ctx.c.find(n->witness.at(0));
      auto s2 = ctx.c.find(n->witness.at(1));
      auto h1 = ctx.h.find(n->witness.at(2));
      auto h2 = ctx.h.find(n->witness.at(3));
      if (!s1 || !s2 || !h1 || !h2)
        return Verdict::fail(g.quad, "upto", "unknown state label in witness");
      w = Quad{*s1, *s2, *h1, *h2};
      try {
        Goal next = apply_upto(ctx.c, ctx.h, g, *f, w, ctx.opts.oracle_budget);
        return check_node(ctx, next, n->children.at(0), false);
      } catch (const UpToError& e) {
        return Verdict::fail(g.quad, "upto", e.what());
      }
    }
    case K::ReduceCLeak: {
      auto s1p = ctx.c.find(n->witness.at(0));
      auto s2p = ctx.c.find(n->witness.at(1));
      if (!s1p || !s2p)
        return Verdict::fail(g.quad, "reduce-c-leak", "unknown state label");
      // Side quintuple over the contract system on both sides.
      Ctx side_ctx{ctx.c, ctx.c, ctx.registry, ctx.opts, ctx.session,
                   ctx.ops};
      Goal side_root{Quad{g.quad.s1, g.quad.s2, *s1p, *s2p}, {}, true};
      Verdict side = check_node(side_ctx, side_root, n->side, false);
      ctx.ops = side_ctx.ops;
      if (!side.accepted)
        return Verdict::fail(g.quad, "reduce-c-leak",
                             "side proof rejected: " + side.failure->reason);
      Goal next = g;
      next.quad.s1 = *s1p;
      next.quad.s2 = *s2p;
      return check_node(ctx, next, n->children.at(0), false);
    }
    case K::AugmentHLeak: {
      auto h1p = ctx.h.find(n->witness.at(0));
      auto h2p = ctx.h.find(n->witness.at(1));
      if (!h1p || !h2p)
        return Verdict::fail(g.quad, "augment-h-leak", "unknown state label");
      if (n->side->kind != K::Lockstep)
        return Verdict::fail(g.quad, "augment-h-leak",
                             "non-lockstep side proof rejected");
      Goal side_root{Quad{*h1p, *h2p, g.quad.h1, g.quad.h2}, {}, true};
      Verdict side = check_node(ctx, side_root, n->side, true);
      if (!side.accepted)
        return Verdict::fail(g.quad, "augment-h-leak",
                             "side proof rejected: " + side.failure->reason);
      Goal next = g;
      next.quad.h1 = *h1p;
      next.quad.h2 = *h2p;
      return check_node(ctx, next, n->children.at(0), false);
    }
    case K::Lockstep:
      return Verdict::fail(g.quad, "lockstep",
                           "lockstep wrapper is only valid as an "
                           "augment-h-leak side proof or lockstep root");
    default:
      return Verdict::fail(g.quad, "script",
                           "lockstep rule outside a lockstep derivation");
  }
}

}  // namespace

Verdict check_script(const System& c, const System& h, const Goal& root,
                     const ScriptNodePtr& script, const Registry& registry,
                     const CheckOptions& opts, CheckSession* session) {
  Ctx ctx{c, h, registry, opts, session, 0};
  return check_node(ctx, root, script, false);
}

Verdict check_lockstep_script(const System& h, const Goal& root,
                              const ScriptNodePtr& script,
                              const Registry& registry,
                              const CheckOptions& opts,
                              CheckSession* session) {
  Ctx ctx{h, h, registry, opts, session, 0};
  return check_node(ctx, root, script, true);
}

// ---------------------------------------------------------------------------

namespace {

struct ClosureKey {
  Quad q;
  std::uint32_t h_left;
  bool after_h;
  bool operator==(const ClosureKey& o) const {
    return q == o.q && h_left == o.h_left && after_h == o.after_h;
  }
};
struct ClosureKeyHash {
  std::size_t operator()(const ClosureKey& k) const {
    return hash_combine(QuadHash{}(k.q),
                        hash_combine(k.h_left, k.after_h ? 1u : 0u));
  }
};

struct ClosureSearch {
  const System& c;
  const System& h;
  const QuadRel& rel;
  std::uint32_t c_budget;
  // Remembers the largest c_left that already failed for a configuration:
  // fewer remaining C-Steps can only fail again.
  std::unordered_map<ClosureKey, std::uint32_t, ClosureKeyHash> failed;

  bool run(const Quad& q, std::uint32_t c_left, std::uint32_t h_left,
           bool after_h) {
    ClosureKey key{q, h_left, after_h};
    auto it = failed.find(key);
    if (it != failed.end() && it->second >= c_left) return false;
    // Rule order: cycle-at-landing, C-Leak, H-Step, C-Step.
    if (after_h && rel.contains(q)) return true;
    if (c.leak_id(q.s1) != c.leak_id(q.s2)) return true;
    bool ok = false;
    if (h_left > 0 && h.leak_id(q.h1) == h.leak_id(q.h2))
      ok = run(h_step(h, q), c_budget, h_left - 1, true);
    if (!ok && c_left > 0) ok = run(c_step(c, q), c_left - 1, h_left, false);
    if (!ok) {
      auto [pos, fresh] = failed.emplace(key, c_left);
      if (!fresh && pos->second < c_left) pos->second = c_left;
    }
    return ok;
  }
};

}  // namespace

Verdict check_invariant_closure(const System& c, const System& h,
                                const QuadRelPtr& r, std::size_t c_step_budget,
                                std::size_t h_step_budget) {
  if (c_step_budget < 1) throw ConfigError("c_step_budget must be >= 1");
  if (h_step_budget == 0) h_step_budget = c_step_budget;
  ClosureSearch search{c, h, *r, static_cast<std::uint32_t>(c_step_budget), {}};
  for (const Quad& q : r->members()) {
    if (!search.run(q, static_cast<std::uint32_t>(c_step_budget),
                    static_cast<std::uint32_t>(h_step_budget), false)) {
      return Verdict::fail(
          q, "closure",
          "no bounded derivation for this member (c_step_budget=" +
              std::to_string(c_step_budget) + ", h_step_budget=" +
              std::to_string(h_step_budget) +
              "); failure may be budget-induced");
    }
  }
  return Verdict::ok();
}

// ---------------------------------------------------------------------------

Goal apply_reduce_contract_leakage(const System& c, const System& h,
                                   const Goal& g, StateId s1p, StateId s2p,
                                   const ScriptNodePtr& side_proof,
                                   const Registry& registry,
                                   const CheckOptions& opts) {
  Goal side_root{Quad{g.quad.s1, g.quad.s2, s1p, s2p}, {}, true};
  Verdict v = check_script(c, c, side_root, side_proof, registry, opts);
  if (!v.accepted)
    throw UpToError("reduce-contract-leakage: side proof rejected: " +
                    v.failure->reason);
  Goal out = g;
  out.quad.s1 = s1p;
  out.quad.s2 = s2p;
  return out;
}

Goal apply_augment_hardware_leakage(const System& c, const System& h,
                                    const Goal& g, StateId h1p, StateId h2p,
                                    const ScriptNodePtr& side_proof,
                                    const Registry& registry,
                                    const CheckOptions& opts) {
  (void)c;
  if (side_proof->kind != ScriptNode::Kind::Lockstep)
    throw UpToError(
        "augment-hardware-leakage: non-lockstep side proof rejected");
  Goal side_root{Quad{h1p, h2p, g.quad.h1, g.quad.h2}, {}, true};
  Verdict v = check_lockstep_script(h, side_root, side_proof, registry, opts);
  if (!v.accepted)
    throw UpToError("augment-hardware-leakage: side proof rejected: " +
                    v.failure->reason);
  Goal out = g;
  out.quad.h1 = h1p;
  out.quad.h2 = h2p;
  return out;
}

// ---------------------------------------------------------------------------

DerivedProver::DerivedProver(const System& c, const System& h,
                             std::shared_ptr<const QuadUniverse> universe)
    : universe_(std::move(universe)) {
  result_ = compute_rbisim(c, h, *universe_);
  relation_ = make_mask_relation("rbisim", universe_, result_.in);

  const std::size_t n = universe_->size();
  std::vector<ScriptNodePtr> chain(n);
  // Build each member's inner-fixpoint derivation chain; admission order is
  // well-founded along C-Step links, so plain recursion terminates.
  std::function<ScriptNodePtr(std::size_t)> build = [&](std::size_t i) {
    if (chain[i]) return chain[i];
    ScriptNodePtr node;
    switch (result_.why[i]) {
      case RbisimResult::Why::CLeak:
        node = leaf(ScriptNode::Kind::CLeak);
        break;
      case RbisimResult::Why::CStep: {
        Quad qc = c_step(c, universe_->quads[i]);
        node = unary(ScriptNode::Kind::CStep, build(universe_->at(qc)));
        break;
      }
      case RbisimResult::Why::HStep:
        node = unary(ScriptNode::Kind::HStep, leaf(ScriptNode::Kind::Cycle));
        break;
      case RbisimResult::Why::None:
        throw NotProvable("derive_proof: member without derivation record");
    }
    chain[i] = node;
    return node;
  };

  std::unordered_map<std::string, std::size_t> dedup;
  for (std::size_t i = 0; i < n; ++i) {
    if (!result_.in[i]) continue;
    ScriptNodePtr t = build(i);
    std::string printed = print_script(t);
    if (dedup.emplace(printed, case_trees_.size()).second) {
      case_labels_.push_back("t" + std::to_string(case_trees_.size()));
      case_trees_.push_back(t);
    }
  }
  root_ = invariant_node(relation_->name, case_labels_, case_trees_);
}

bool DerivedProver::provable(const Quad& q) const {
  return relation_->contains(q);
}

ScriptNodePtr DerivedProver::script_for(const Quad& q) const {
  if (!provable(q))
    throw NotProvable(
        "derive_proof: quad is not relatively trace equal (not provable)");
  // The script body is independent of the root quad; sharing one node tree
  // lets a CheckSession reuse the obligation verdict across quads.
  return root_;
}

ScriptNodePtr derive_proof(const System& c, const System& h, const Quad& q,
                           std::shared_ptr<const QuadUniverse> universe,
                           QuadRelPtr* rel_out) {
  DerivedProver prover(c, h, std::move(universe));
  if (rel_out) *rel_out = prover.relation();
  return prover.script_for(q);
}

}  // namespace rbisim
