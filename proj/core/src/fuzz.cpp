#include "rbisim/fuzz.hpp"

#include <chrono>

#include "rbisim/checker.hpp"
#include "rbisim/errors.hpp"
#include "rbisim/script.hpp"

namespace rbisim {

namespace {

Quad random_quad(std::mt19937_64& rng, const RandomInstance& inst) {
  std::uniform_int_distribution<StateId> cd(
      0, static_cast<StateId>(inst.C.size() - 1));
  std::uniform_int_distribution<StateId> hd(
      0, static_cast<StateId>(inst.H.size() - 1));
  return Quad{cd(rng), cd(rng), hd(rng), hd(rng)};
}

ScriptNodePtr random_chain(std::mt19937_64& rng) {
  using K = ScriptNode::Kind;
  static constexpr K kLinks[] = {K::CStep, K::CStepPrime, K::HStep, K::Guard};
  std::uniform_int_distribution<int> len_dist(0, 3);
  std::uniform_int_distribution<int> link_dist(0, 3);
  ScriptNodePtr tip =
      leaf(rng() % 2 == 0 ? K::CLeak : K::Cycle);
  int links = len_dist(rng);
  for (int i = 0; i < links; ++i) tip = unary(kLinks[link_dist(rng)], tip);
  return tip;
}

// Mixes plain chains with invariant-over-relation shapes. The invariant
// shapes matter: under a kernel whose hardware-step leak check is broken,
// (invariant full (hstep (cycle))) "proves" arbitrary quads, which is how the
// mutation sentinel trips.
ScriptNodePtr random_script(std::mt19937_64& rng, const Registry& registry) {
  std::uniform_int_distribution<int> shape_dist(0, 2);
  int shape = shape_dist(rng);
  if (shape == 0) return random_chain(rng);
  using K = ScriptNode::Kind;
  const std::string& rel = registry.items[shape == 1 ? 0 : rng() % registry.items.size()]->name;
  std::vector<std::string> cases;
  std::vector<ScriptNodePtr> trees;
  std::uniform_int_distribution<int> count_dist(1, 3);
  int count = count_dist(rng);
  for (int i = 0; i < count; ++i) {
    cases.push_back("t" + std::to_string(i));
    switch (rng() % 3) {
      case 0: trees.push_back(unary(K::HStep, leaf(K::Cycle))); break;
      case 1: trees.push_back(leaf(K::CLeak)); break;
      default: trees.push_back(random_chain(rng)); break;
    }
  }
  return invariant_node(rel, std::move(cases), std::move(trees));
}

}  // namespace

Report fuzz_differential(const FuzzOptions& opts) {
  if (opts.trials == 0) throw ConfigError("fuzz requires trials >= 1");
  auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = "fuzz";
  r.set("seed", std::to_string(opts.seed));
  r.set("trials", std::to_string(opts.trials));

  std::mt19937_64 rng(opts.seed);
  std::size_t scripts_run = 0;

  auto finding = [&](const RandomInstance& inst, const Quad& q,
                     const std::string& what) {
    r.ok = false;
    r.refuted += 1;
    if (r.verdicts.size() < opts.max_findings)
      r.verdicts.push_back({quad_string(inst.C, inst.H, q), what});
  };

  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    RandomInstance inst = random_instance(rng, opts.system);
    RbisimResult res = compute_rbisim(inst.C, inst.H, *inst.universe);

    // 1. Fixpoint vs brute force, every quad.
    std::vector<std::uint32_t> positives;
    for (std::uint32_t i = 0; i < inst.universe->size(); ++i) {
      const Quad& q = inst.universe->quads[i];
      bool oracle = rel_trace_eq(inst.C, inst.H, q);
      if ((res.in[i] != 0) != oracle)
        finding(inst, q, "fixpoint/oracle disagreement");
      if (oracle && positives.size() < opts.derived_per_trial)
        positives.push_back(i);
    }

    // 2. Derived completeness witnesses round-trip through the checker.
    if (!positives.empty()) {
      DerivedProver prover(inst.C, inst.H, inst.universe);
      Registry registry;
      registry.add(prover.relation());
      CheckSession session;
      for (std::uint32_t i : positives) {
        const Quad& q = inst.universe->quads[i];
        Verdict v = check_script(inst.C, inst.H, Goal{q, {}, true},
                                 prover.script_for(q), registry, {}, &session);
        if (!v.accepted) finding(inst, q, "derived script rejected");
      }
    }

    // 3. Random scripts: accepted => oracle-true.
    Registry registry;
    registry.add(make_intensional("full", inst.universe,
                                  [](const Quad&) { return true; }));
    std::vector<Quad> subset;
    for (const Quad& q : inst.universe->quads)
      if (rng() % 4 == 0) subset.push_back(q);
    registry.add(make_extensional("sub", std::move(subset)));
    CheckSession session;
    for (std::size_t i = 0; i < opts.scripts_per_trial; ++i) {
      Quad q = random_quad(rng, inst);
      ScriptNodePtr script = random_script(rng, registry);
      Verdict v = check_script(inst.C, inst.H, Goal{q, {}, true}, script,
                               registry, {}, &session);
      ++scripts_run;
      if (v.accepted && !rel_trace_eq(inst.C, inst.H, q))
        finding(inst, q, "accepted script contradicts the oracle");
    }
    r.checked += 1;
  }

  r.proved = r.checked - std::min(r.checked, r.refuted);
  r.set("scripts", std::to_string(scripts_run));
  if (r.ok) r.note("no soundness violation found");
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

}  // namespace rbisim
