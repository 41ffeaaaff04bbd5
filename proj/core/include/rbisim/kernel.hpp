#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbisim/quad.hpp"
#include "rbisim/relation.hpp"
#include "rbisim/system.hpp"

namespace rbisim {

// Proof quintuple: quad + accumulated hypothesis + guardedness. A guarded
// hypothesis may not be used to close a cycle; only a hardware step unguards.
struct Goal {
  Quad quad;
  std::vector<QuadRelPtr> hypothesis;
  bool guarded = true;

  bool hyp_contains(const Quad& q) const {
    for (const auto& r : hypothesis)
      if (r->contains(q)) return true;
    return false;
  }
};

struct Rule {
  enum class Tag { CLeak, CStep, CStepPrime, HStep, Invariant, Cycle, Guard };
  Tag tag = Tag::CLeak;
  QuadRelPtr rel;  // Invariant payload

  static Rule simple(Tag t) { return Rule{t, nullptr}; }
  static Rule invariant(QuadRelPtr r) { return Rule{Tag::Invariant, std::move(r)}; }
};

const char* rule_name(Rule::Tag t);

// The kernel's soundness boundary: a rule applied outside its side conditions.
struct SideConditionViolated : std::runtime_error {
  SideConditionViolated(Rule::Tag tag, const std::string& condition)
      : std::runtime_error(std::string(rule_name(tag)) +
                           ": side condition violated: " + condition),
        tag(tag), condition(condition) {}
  Rule::Tag tag;
  std::string condition;
};

// Applies one core rule and returns the remaining subgoals.
//
//   C-Leak      guarded, leak_C(s1) != leak_C(s2)        -> []
//   C-Step      guarded                                  -> [s-components stepped]
//   C-Step'     guarded; discharges outright if contract
//               leaks differ, else behaves as C-Step
//   H-Step      guarded, leak_H(h1) == leak_H(h2)        -> [h-components stepped,
//                                                           unguarded]
//   Invariant R' guarded, quad in R'                     -> one guarded goal per
//                                                           member, hypothesis + R'
//   Cycle       unguarded, quad in hypothesis            -> []
//   Guard       unguarded                                -> [same goal, guarded]
std::vector<Goal> apply_rule(const System& c, const System& h, const Goal& g,
                             const Rule& r);

// Lockstep quintuples: all four components are hardware states of h. Leak
// (spelled C-Leak here) discharges on a leak mismatch of the first pair; Step
// (spelled H-Step) requires equal leaks on the second pair and steps all four,
// unguarding. Invariant/Cycle/Guard as above. C-Step/C-Step' do not exist in
// the lockstep system.
std::vector<Goal> apply_lockstep_rule(const System& h, const Goal& g,
                                      const Rule& r);

struct Failure {
  Quad quad;
  std::string rule;
  std::string reason;
};

struct Verdict {
  bool accepted = false;
  std::optional<Failure> failure;

  static Verdict ok() { return Verdict{true, std::nullopt}; }
  static Verdict fail(Quad q, std::string rule, std::string reason) {
    return Verdict{false, Failure{q, std::move(rule), std::move(reason)}};
  }
};

}  // namespace rbisim
