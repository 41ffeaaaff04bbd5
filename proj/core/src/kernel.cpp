#include "rbisim/kernel.hpp"

namespace rbisim {

const char* rule_name(Rule::Tag t) {
  switch (t) {
    case Rule::Tag::CLeak: return "c-leak";
    case Rule::Tag::CStep: return "c-step";
    case Rule::Tag::CStepPrime: return "c-step'";
    case Rule::Tag::HStep: return "h-step";
    case Rule::Tag::Invariant: return "invariant";
    case Rule::Tag::Cycle: return "cycle";
    case Rule::Tag::Guard: return "guard";
  }
  return "?";
}

namespace {

// Mutation-testing hook: building with RBISIM_MUTATE_HSTEP removes the
// H-Step leak side condition. Only the dedicated mutation-sentinel test
// target sets this; it must make the fuzzer find soundness violations.
#ifdef RBISIM_MUTATE_HSTEP
constexpr bool kCheckHStepLeak = false;
#else
constexpr bool kCheckHStepLeak = true;
#endif

std::vector<Goal> invariant_obligations(const Goal& g, const QuadRelPtr& rel) {
  if (!g.guarded)
    throw SideConditionViolated(Rule::Tag::Invariant, "goal must be guarded");
  if (!rel) throw SideConditionViolated(Rule::Tag::Invariant, "missing relation");
  if (!rel->contains(g.quad))
    throw SideConditionViolated(Rule::Tag::Invariant,
                                "quad not in invariant relation " + rel->name);
  std::vector<QuadRelPtr> hyp = g.hypothesis;
  bool present = false;
  for (const auto& r : hyp) present = present || r == rel;
  if (!present) hyp.push_back(rel);
  std::vector<Goal> out;
  for (const Quad& m : rel->members()) out.push_back(Goal{m, hyp, true});
  return out;
}

}  // namespace

std::vector<Goal> apply_rule(const System& c, const System& h, const Goal& g,
                             const Rule& r) {
  switch (r.tag) {
    case Rule::Tag::CLeak:
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      if (c.leak_id(g.quad.s1) == c.leak_id(g.quad.s2))
        throw SideConditionViolated(r.tag, "contract leaks are equal");
      return {};
    case Rule::Tag::CStep:
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      return {Goal{c_step(c, g.quad), g.hypothesis, true}};
    case Rule::Tag::CStepPrime:
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      if (c.leak_id(g.quad.s1) != c.leak_id(g.quad.s2)) return {};
      return {Goal{c_step(c, g.quad), g.hypothesis, true}};
    case Rule::Tag::HStep:
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      if (kCheckHStepLeak && h.leak_id(g.quad.h1) != h.leak_id(g.quad.h2))
        throw SideConditionViolated(r.tag, "hardware leaks differ");
      return {Goal{h_step(h, g.quad), g.hypothesis, false}};
    case Rule::Tag::Invariant:
      return invariant_obligations(g, r.rel);
    case Rule::Tag::Cycle:
      if (g.guarded)
        throw SideConditionViolated(r.tag, "goal must be unguarded");
      if (!g.hyp_contains(g.quad))
        throw SideConditionViolated(r.tag, "quad not in hypothesis");
      return {};
    case Rule::Tag::Guard:
      if (g.guarded)
        throw SideConditionViolated(r.tag, "goal already guarded");
      return {Goal{g.quad, g.hypothesis, true}};
  }
  throw SideConditionViolated(r.tag, "unknown rule");
}

std::vector<Goal> apply_lockstep_rule(const System& h, const Goal& g,
                                      const Rule& r) {
  switch (r.tag) {
    case Rule::Tag::CLeak:  // lockstep Leak
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      if (h.leak_id(g.quad.s1) == h.leak_id(g.quad.s2))
        throw SideConditionViolated(r.tag, "leaks of first pair are equal");
      return {};
    case Rule::Tag::HStep: {  // lockstep Step: all four components advance
      if (!g.guarded)
        throw SideConditionViolated(r.tag, "goal must be guarded");
      if (kCheckHStepLeak && h.leak_id(g.quad.h1) != h.leak_id(g.quad.h2))
        throw SideConditionViolated(r.tag, "leaks of second pair differ");
      Quad n{h.next(g.quad.s1), h.next(g.quad.s2), h.next(g.quad.h1),
             h.next(g.quad.h2)};
      return {Goal{n, g.hypothesis, false}};
    }
    case Rule::Tag::Invariant:
      return invariant_obligations(g, r.rel);
    case Rule::Tag::Cycle:
      if (g.guarded)
        throw SideConditionViolated(r.tag, "goal must be unguarded");
      if (!g.hyp_contains(g.quad))
        throw SideConditionViolated(r.tag, "quad not in hypothesis");
      return {};
    case Rule::Tag::Guard:
      if (g.guarded)
        throw SideConditionViolated(r.tag, "goal already guarded");
      return {Goal{g.quad, g.hypothesis, true}};
    default:
      throw SideConditionViolated(r.tag, "rule not available in lockstep system");
  }
}

}  // namespace rbisim
