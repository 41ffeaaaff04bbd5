#include "rbisim/gallery.hpp"

#include <chrono>

#include "rbisim/checker.hpp"
#include "rbisim/errors.hpp"
#include "rbisim/random_system.hpp"
#include "rbisim/script.hpp"
#include "rbisim/upto.hpp"

namespace rbisim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void assert_claim(Report& r, bool held, const std::string& claim) {
  r.checked += 1;
  if (held) {
    r.proved += 1;
  } else {
    r.refuted += 1;
    r.ok = false;
  }
  r.note(claim + ": " + (held ? "holds" : "VIOLATED"));
}

ExplicitModel::Node node(std::uint32_t succ, const std::string& obs,
                         const std::string& name) {
  return ExplicitModel::Node{succ, Obs::named(obs), name};
}

QuadRelPtr full_relation(std::shared_ptr<const QuadUniverse> universe) {
  return make_intensional("top", std::move(universe),
                          [](const Quad&) { return true; });
}

// Two contract runs that agree on the first observation and split on the
// second; two hardware runs that differ immediately. Relative trace equality
// holds vacuously (the contract traces differ), but the lockstep relation
// cannot use that fact before the hardware mismatch blocks it.
Report lockstep_incomplete() {
  auto start = Clock::now();
  Report r;
  r.command = "gallery lockstep-incomplete";

  ExplicitModel cm;
  cm.nodes = {node(1, "obsA", "c1a"), node(1, "obsB", "c1b"),
              node(3, "obsA", "c2a"), node(3, "obsC", "c2b")};
  ExplicitModel hm;
  hm.nodes = {node(0, "obsD", "h1"), node(1, "obsE", "h2")};
  TypedSystem<ExplicitModel> C(cm), H(hm);
  for (std::uint32_t i = 0; i < 4; ++i) C.intern(i);
  for (std::uint32_t i = 0; i < 2; ++i) H.intern(i);
  auto universe = std::make_shared<QuadUniverse>(QuadUniverse::full(C, H));
  Quad q{0, 2, 0, 1};

  bool oracle = rel_trace_eq(C, H, q);
  std::vector<char> lockstep = compute_rbisim_lockstep(C, H, *universe);
  bool in_lockstep = lockstep[universe->at(q)] != 0;
  RbisimResult full = compute_rbisim(C, H, *universe);
  bool in_rbisim = full.in[universe->at(q)] != 0;

  r.verdicts.push_back({quad_string(C, H, q),
                        std::string("oracle: ") + (oracle ? "true" : "false") +
                            ", lockstep: " + (in_lockstep ? "true" : "false")});
  assert_claim(r, oracle, "relative trace equality holds");
  assert_claim(r, !in_lockstep, "lockstep bisimulation misses the quad");
  assert_claim(r, in_rbisim, "the nested-fixpoint relation still contains it");
  r.elapsed_ms = ms_since(start);
  return r;
}

// The fully coinductive decoupled variant proves everything: its greatest
// fixpoint is the full universe on a random 4-state instance.
Report relaxed_vacuous() {
  auto start = Clock::now();
  Report r;
  r.command = "gallery relaxed-vacuous";
  std::mt19937_64 rng(20240817);
  RandomSystemOptions opts;
  opts.min_states = opts.max_states = 4;
  RandomInstance inst = random_instance(rng, opts);

  std::vector<char> relaxed = compute_rbisim_relaxed(inst.C, inst.H, *inst.universe);
  std::size_t members = 0;
  for (char v : relaxed) members += v != 0;
  r.set("universe", std::to_string(inst.universe->size()));
  r.set("relaxed members", std::to_string(members));
  assert_claim(r, members == inst.universe->size(),
               "relaxed greatest fixpoint is the full universe");
  r.elapsed_ms = ms_since(start);
  return r;
}

// Unrestricted hardware-leakage augmentation would be unsound: the side
// quintuple is derivable only with non-lockstep (contract-style) reasoning,
// and composing it would "prove" a quad the oracle refutes. The restricted
// rule demands a lockstep side derivation and rejects the composition.
Report augment_unsound() {
  auto start = Clock::now();
  Report r;
  r.command = "gallery augment-unsound";

  ExplicitModel cm;
  cm.nodes = {node(0, "obsU", "s")};
  ExplicitModel hm;
  hm.nodes = {node(0, "o1", "h1"),  node(1, "o2", "h2"),
              node(4, "o3", "h1p"), node(5, "o3", "h2p"),
              node(4, "o4", "n1"),  node(5, "o5", "n2")};
  TypedSystem<ExplicitModel> C(cm), H(hm);
  C.intern(0);
  for (std::uint32_t i = 0; i < 6; ++i) H.intern(i);
  auto universe = std::make_shared<QuadUniverse>(QuadUniverse::full(C, H));
  auto h_universe = std::make_shared<QuadUniverse>(QuadUniverse::full(H, H));

  // First quintuple: under the full hypothesis, one hardware step (equal
  // leaks o3/o3) reaches (s, s, n1, n2), which the hypothesis closes.
  Quad first{0, 0, 2, 3};
  Goal g1{first, {full_relation(universe)}, true};
  Verdict v1 = check_script(C, H, g1, parse_script("(hstep (cycle))"), {});
  assert_claim(r, v1.accepted, "first quintuple derivable under full hypothesis");

  // Second quintuple, over the hardware system on both sides: only the
  // non-lockstep derivation (skip to the o4/o5 mismatch) works.
  Quad second{2, 3, 0, 1};
  Goal g2{second, {}, true};
  Verdict v2 = check_script(H, H, g2, parse_script("(cstep (cleak))"), {});
  assert_claim(r, v2.accepted, "second quintuple derivable non-lockstep");
  assert_claim(r, !lockstep_provable(H, second),
               "second quintuple has no lockstep derivation");

  // Third quintuple: refuted by the oracle (equal contract traces, hardware
  // leaks o1 vs o2).
  Quad third{0, 0, 0, 1};
  bool oracle_third = rel_trace_eq(C, H, third);
  r.verdicts.push_back({quad_string(C, H, third),
                        std::string("oracle: ") +
                            (oracle_third ? "true" : "false")});
  assert_claim(r, !oracle_third, "third quintuple refuted by the oracle");

  // The restricted rule rejects stitching the three together, because the
  // side derivation for the second quintuple is not a lockstep one.
  bool rejected = false;
  std::string why;
  try {
    Goal g3{third, {full_relation(universe)}, true};
    apply_augment_hardware_leakage(C, H, g3, 2, 3,
                                   parse_script("(cstep (cleak))"));
  } catch (const UpToError& e) {
    rejected = true;
    why = e.what();
  }
  if (!why.empty()) r.note("rejection: " + why);
  assert_claim(r, rejected, "augmentation rejects the non-lockstep side proof");
  r.elapsed_ms = ms_since(start);
  return r;
}

// A coinduction hypothesis freshly introduced by the invariant rule is
// guarded: reaching the same quad again by contract steps alone must not
// close the cycle. Accepting it would prove an oracle-false quad.
Report guarded_cycle_rejected() {
  auto start = Clock::now();
  Report r;
  r.command = "gallery guarded-cycle-rejected";

  ExplicitModel cm;
  cm.nodes = {node(0, "obsU", "s")};
  ExplicitModel hm;
  hm.nodes = {node(0, "o1", "h1"), node(1, "o2", "h2")};
  TypedSystem<ExplicitModel> C(cm), H(hm);
  C.intern(0);
  H.intern(0);
  H.intern(1);

  Quad q{0, 0, 0, 1};
  assert_claim(r, !rel_trace_eq(C, H, q), "the exploited quad is oracle-false");

  Registry registry;
  registry.add(make_extensional("R", {q}));
  ScriptNodePtr exploit = invariant_node(
      "R", {"q0"}, {unary(ScriptNode::Kind::CStep, leaf(ScriptNode::Kind::Cycle))});
  Verdict v = check_script(C, H, Goal{q, {}, true}, exploit, registry);
  if (v.failure)
    r.note("rejection: " + v.failure->rule + ": " + v.failure->reason);
  assert_claim(r, !v.accepted, "contract-step-then-cycle exploit is rejected");
  r.elapsed_ms = ms_since(start);
  return r;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"lockstep-incomplete", "relaxed-vacuous", "augment-unsound",
          "guarded-cycle-rejected"};
}

Report run_counterexample(const std::string& name) {
  if (name == "lockstep-incomplete") return lockstep_incomplete();
  if (name == "relaxed-vacuous") return relaxed_vacuous();
  if (name == "augment-unsound") return augment_unsound();
  if (name == "guarded-cycle-rejected") return guarded_cycle_rejected();
  throw ConfigError("unknown gallery entry '" + name + "'");
}

}  // namespace rbisim
