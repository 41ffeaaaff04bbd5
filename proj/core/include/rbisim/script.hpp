#pragma once

#include <memory>
#include <string>
#include <vector>

namespace rbisim {

struct ScriptNode;
using ScriptNodePtr = std::shared_ptr<const ScriptNode>;

// One node of a serialized derivation. Invariant nodes carry one subtree per
// symbolic case; the checker matches every enumerated obligation against the
// supplied cases.
struct ScriptNode {
  enum class Kind {
    CLeak,
    CStep,
    CStepPrime,
    HStep,
    Guard,
    Cycle,
    Invariant,
    UpTo,          // (upto FN (witness s1 s2 h1 h2) body)
    ReduceCLeak,   // (reduce-c-leak (witness s1' s2') (side P) body)
    AugmentHLeak,  // (augment-h-leak (witness h1' h2') (lockstep-side P) body)
    Lockstep,      // wrapper marking a lockstep derivation
    LkLeak,
    LkStep,
    LkCycle,
    LkGuard,
    LkInvariant,
  };

  Kind kind = Kind::CLeak;
  std::string name;                     // invariant relation / upto function
  std::vector<std::string> cases;      // case labels, parallel to children
  std::vector<std::string> witness;    // state labels
  ScriptNodePtr side;                  // reduce/augment side derivation
  std::vector<ScriptNodePtr> children;
};

ScriptNodePtr leaf(ScriptNode::Kind k);
ScriptNodePtr unary(ScriptNode::Kind k, ScriptNodePtr child);
ScriptNodePtr invariant_node(std::string relation,
                             std::vector<std::string> cases,
                             std::vector<ScriptNodePtr> children);

// Round-trip is byte-stable: print(parse(print(n))) == print(n).
std::string print_script(const ScriptNodePtr& node);
ScriptNodePtr parse_script(const std::string& text);  // throws ParseError

}  // namespace rbisim
