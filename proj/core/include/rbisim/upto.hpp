#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rbisim/kernel.hpp"
#include "rbisim/oracle.hpp"

namespace rbisim {

// A function on quad relations usable through the Up-To rule. Only functions
// whose compatibility is established offline may appear in accepted proofs;
// the kernel gates on the status flag.
struct UpToFunction {
  enum class Status { CompatibilityProven, TestOnly };

  std::string name;
  Status status = Status::TestOnly;

  // Is `goal` a member of transform({witness})? The per-goal form used by the
  // Up-To rule. Oracle re-verification (for the leak-equivalence functions)
  // happens in here.
  std::function<bool(const System& c, const System& h, const Quad& goal,
                     const Quad& witness, std::size_t budget)>
      in_image_of;

  // Set-level transform restricted to a finite universe; used by the sampled
  // compatibility check.
  std::function<std::vector<char>(const System& c, const System& h,
                                  const QuadUniverse& u,
                                  const std::vector<char>& x,
                                  std::size_t budget)>
      transform;
};

// The six functions with compatibility proofs, plus test-only sandboxes
// (currently "top", deliberately incompatible, for the negative test).
const std::vector<UpToFunction>& upto_registry();
const UpToFunction* find_upto(const std::string& name);

struct UpToError : std::runtime_error {
  explicit UpToError(const std::string& what) : std::runtime_error(what) {}
};

// Up-To rule: replace the goal quad by the witness quad, guardedness
// preserved. Rejects unregistered / test-only functions and witnesses whose
// image does not contain the goal quad.
Goal apply_upto(const System& c, const System& h, const Goal& g,
                const UpToFunction& f, const Quad& witness,
                std::size_t budget = kDefaultBudget);

enum class QuadSlot { S1, S2, H1, H2 };

// Leak-equivalence rewrite of one component. The claimed equivalence verdict
// is not trusted: the oracle re-checks trace equality of the original and the
// replacement before rewriting.
Goal apply_leak_eq(const System& c, const System& h, QuadSlot slot,
                   const Goal& g, StateId replacement,
                   const PairGraphVerdict& claimed,
                   std::size_t budget = kDefaultBudget);

// Decides lockstep-quintuple provability of (q.s1,q.s2,q.h1,q.h2) with all
// four components in h, by closing the quad and computing the lockstep gfp.
bool lockstep_provable(const System& h, const Quad& q,
                       std::size_t budget = kDefaultBudget);

struct CompatViolation {
  std::size_t sample = 0;
  Quad witness;  // in f(F(X)) but not in F(f(X))
};

struct CompatReport {
  bool passed = true;
  std::size_t samples = 0;
  std::vector<CompatViolation> violations;
};

// One application of the relative-bisimulation functor: the inner inductive
// fixpoint evaluated against a fixed outer parameter.
std::vector<char> rbisimF_apply(const System& c, const System& h,
                                const QuadUniverse& u,
                                const std::vector<char>& outer);

// Samples random subsets X of the universe and checks f(F(X)) subseteq
// F(f(X)). A pass is evidence, not proof; status flags never change here.
CompatReport check_compatibility(const UpToFunction& f, const System& c,
                                 const System& h, const QuadUniverse& u,
                                 std::size_t samples, std::uint64_t seed,
                                 std::size_t budget = kDefaultBudget);

}  // namespace rbisim
