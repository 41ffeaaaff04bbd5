// The script checker, the derived completeness witnesses, the bounded
// invariant-closure search, and the composition rules with side derivations.
#include <random>

#include "doctest.h"
#include "rbisim/checker.hpp"
#include "rbisim/random_system.hpp"
#include "test_util.hpp"

using namespace rbisim;

namespace {

using K = ScriptNode::Kind;

System self_loop(const char* obs_a, const char* obs_b) {
  ExplicitModel m;
  m.nodes = {{0, Obs::named(obs_a), "p"}, {1, Obs::named(obs_b), "q"}};
  return testutil::make_explicit(std::move(m));
}

}  // namespace

TEST_CASE("a contract-leak script proves a leak-mismatch quad") {
  System c = self_loop("x", "y"), h = self_loop("a", "b");
  Goal root{Quad{0, 1, 0, 1}, {}, true};
  Verdict v = check_script(c, h, root, leaf(K::CLeak), {});
  CHECK(v.accepted);

  // And fails loudly, with the violated rule, when the leaks agree.
  Goal bad{Quad{0, 0, 0, 1}, {}, true};
  Verdict w = check_script(c, h, bad, leaf(K::CLeak), {});
  CHECK(!w.accepted);
  REQUIRE(w.failure.has_value());
  CHECK(w.failure->rule == "cleak");
}

TEST_CASE("invariant scripts discharge every obligation through their cases") {
  System c = self_loop("x", "x"), h = self_loop("a", "a");
  // All quads over {p,q} x {p,q} are relative-bisimilar (everything loops with
  // equal leaks); the coinductive invariant closes each member by a hardware
  // step back into itself.
  std::vector<Quad> all;
  for (StateId s1 : {0u, 1u})
    for (StateId s2 : {0u, 1u})
      for (StateId h1 : {0u, 1u})
        for (StateId h2 : {0u, 1u}) all.push_back(Quad{s1, s2, h1, h2});
  QuadRelPtr rel = make_extensional("all", all);
  Registry registry;
  registry.add(rel);
  ScriptNodePtr script = invariant_node(
      "all", {"any"}, {unary(K::HStep, leaf(K::Cycle))});
  Goal root{Quad{0, 1, 0, 1}, {}, true};
  CHECK(check_script(c, h, root, script, registry).accepted);

  // Scripts referring to relations the registry does not know are rejected.
  ScriptNodePtr unknown = invariant_node(
      "missing", {"any"}, {unary(K::HStep, leaf(K::Cycle))});
  CHECK(!check_script(c, h, root, unknown, registry).accepted);
}

TEST_CASE("derived proofs are accepted for every oracle-true quad") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    RandomInstance inst = random_instance(rng);
    DerivedProver prover(inst.C, inst.H, inst.universe);
    Registry registry;
    registry.add(prover.relation());
    CheckSession session;
    for (const Quad& q : inst.universe->quads) {
      bool oracle = rel_trace_eq(inst.C, inst.H, q);
      CHECK(prover.provable(q) == oracle);
      if (oracle) {
        Verdict v = check_script(inst.C, inst.H, Goal{q, {}, true},
                                 prover.script_for(q), registry, {}, &session);
        CHECK(v.accepted);
      } else {
        CHECK_THROWS_AS(prover.script_for(q), NotProvable);
      }
    }
  }
}

TEST_CASE("derived scripts survive a serialization round-trip") {
  std::mt19937_64 rng(405);
  RandomInstance inst = random_instance(rng);
  for (const Quad& q : inst.universe->quads) {
    if (!rel_trace_eq(inst.C, inst.H, q)) continue;
    QuadRelPtr rel;
    ScriptNodePtr script = derive_proof(inst.C, inst.H, q, inst.universe, &rel);
    Registry registry;
    registry.add(rel);
    ScriptNodePtr reparsed = parse_script(print_script(script));
    CHECK(check_script(inst.C, inst.H, Goal{q, {}, true}, reparsed, registry)
              .accepted);
    break;  // one quad suffices; full coverage is the previous test
  }
}

TEST_CASE("the computed fixpoint is closed; adding a false quad breaks it") {
  std::mt19937_64 rng(406);
  for (int trial = 0; trial < 10; ++trial) {
    RandomInstance inst = random_instance(rng);
    RbisimResult res = compute_rbisim(inst.C, inst.H, *inst.universe);
    QuadRelPtr rel = make_mask_relation("rb", inst.universe, res.in);
    std::size_t budget = inst.C.size() * inst.C.size() + 1;
    CHECK(check_invariant_closure(inst.C, inst.H, rel, budget).accepted);

    // Extend with an oracle-false quad: the closure check must refute.
    std::vector<Quad> extended = rel->members();
    bool found = false;
    for (std::size_t i = 0; i < inst.universe->size() && !found; ++i) {
      if (!res.in[i]) {
        extended.push_back(inst.universe->quads[i]);
        found = true;
      }
    }
    if (found) {
      QuadRelPtr bad = make_extensional("bad", extended);
      CHECK(!check_invariant_closure(inst.C, inst.H, bad, budget).accepted);
    }
  }
}

TEST_CASE("closure budgets are validated") {
  System c = self_loop("x", "y"), h = self_loop("a", "b");
  QuadRelPtr rel = make_extensional("r", {});
  CHECK_THROWS_AS(check_invariant_closure(c, h, rel, 0), ConfigError);
}

TEST_CASE("contract-leakage reduction demands an accepted side derivation") {
  System c = self_loop("x", "y"), h = self_loop("a", "a");
  Goal g{Quad{0, 1, 0, 1}, {}, true};
  // Identity rewrite: the side quintuple (s1, s2, s1, s2) over the contract
  // on both sides is proved by its own derived script.
  Quad side_quad{0, 1, 0, 1};
  QuadUniverse u = QuadUniverse::close(c, c, std::span<const Quad>{&side_quad, 1});
  auto universe = std::make_shared<const QuadUniverse>(std::move(u));
  QuadRelPtr rel;
  ScriptNodePtr side = derive_proof(c, c, side_quad, universe, &rel);
  Registry registry;
  registry.add(rel);
  Goal out = apply_reduce_contract_leakage(c, h, g, 0, 1, side, registry);
  CHECK(out.quad == g.quad);

  // A rejected side derivation blocks the rewrite: for equal contract leaks
  // the side quintuple (s1, s2, s1', s2') has no contract-leak discharge.
  Goal same{Quad{0, 0, 0, 1}, {}, true};
  CHECK_THROWS_AS(
      apply_reduce_contract_leakage(c, h, same, 0, 0, leaf(K::CLeak), registry),
      UpToError);
}

TEST_CASE("hardware-leakage augmentation accepts only lockstep side proofs") {
  System c = self_loop("x", "y"), h = self_loop("a", "a");
  Goal g{Quad{0, 1, 0, 0}, {}, true};
  // Identity rewrite via a lockstep derivation of (h1, h2, h1, h2).
  QuadRelPtr lk = make_extensional("lk", {Quad{0, 0, 0, 0}});
  Registry registry;
  registry.add(lk);
  ScriptNodePtr side = parse_script(
      "(lockstep (lk-invariant lk (case c0 (lk-step (lk-cycle)))))");
  Goal out = apply_augment_hardware_leakage(c, h, g, 0, 0, side, registry);
  CHECK(out.quad == g.quad);

  // The same derivation without the lockstep wrapper is rejected outright.
  ScriptNodePtr bare =
      parse_script("(lk-invariant lk (case c0 (lk-step (lk-cycle))))");
  CHECK_THROWS_AS(apply_augment_hardware_leakage(c, h, g, 0, 0, bare, registry),
                  UpToError);
}

TEST_CASE("lockstep scripts check against the lockstep rules") {
  System h = self_loop("a", "b");
  QuadRelPtr lk = make_extensional("lk", {Quad{0, 0, 0, 0}});
  Registry registry;
  registry.add(lk);
  ScriptNodePtr good = parse_script(
      "(lockstep (lk-invariant lk (case c0 (lk-step (lk-cycle)))))");
  CHECK(check_lockstep_script(h, Goal{Quad{0, 0, 0, 0}, {}, true}, good,
                              registry)
            .accepted);
  // Ordinary contract rules are illegal inside a lockstep derivation.
  ScriptNodePtr bad = unary(K::Lockstep, unary(K::CStep, leaf(K::CLeak)));
  CHECK(!check_lockstep_script(h, Goal{Quad{0, 0, 0, 0}, {}, true}, bad,
                               registry)
             .accepted);
}

TEST_CASE("the rule-application budget is a hard stop") {
  std::mt19937_64 rng(407);
  RandomInstance inst = random_instance(rng);
  DerivedProver prover(inst.C, inst.H, inst.universe);
  Registry registry;
  registry.add(prover.relation());
  for (const Quad& q : inst.universe->quads) {
    if (!rel_trace_eq(inst.C, inst.H, q)) continue;
    CheckOptions opts;
    opts.rule_budget = 1;
    CHECK_THROWS_AS(check_script(inst.C, inst.H, Goal{q, {}, true},
                                 prover.script_for(q), registry, opts),
                    BudgetExceeded);
    break;
  }
}
