// Proof-script serialization: the printer and parser round-trip byte-stably,
// and malformed inputs fail with positioned parse errors.
#include "doctest.h"
#include "rbisim/errors.hpp"
#include "rbisim/script.hpp"

using namespace rbisim;

namespace {

using K = ScriptNode::Kind;

ScriptNodePtr sample_invariant() {
  return invariant_node(
      "inv", {"loop", "exit"},
      {unary(K::HStep, leaf(K::Cycle)),
       unary(K::CStep, unary(K::CStepPrime, leaf(K::CLeak)))});
}

ScriptNodePtr with_witness(K kind, std::vector<std::string> witness,
                           ScriptNodePtr side, ScriptNodePtr body) {
  auto n = std::make_shared<ScriptNode>();
  n->kind = kind;
  n->witness = std::move(witness);
  n->side = std::move(side);
  n->children.push_back(std::move(body));
  return n;
}

ScriptNodePtr upto_node(std::string fn, std::vector<std::string> witness,
                        ScriptNodePtr body) {
  auto n = std::make_shared<ScriptNode>();
  n->kind = K::UpTo;
  n->name = std::move(fn);
  n->witness = std::move(witness);
  n->children.push_back(std::move(body));
  return n;
}

void check_roundtrip(const ScriptNodePtr& n) {
  std::string once = print_script(n);
  std::string twice = print_script(parse_script(once));
  CHECK(once == twice);
}

}  // namespace

TEST_CASE("print/parse round-trips are byte-stable") {
  check_roundtrip(leaf(K::CLeak));
  check_roundtrip(unary(K::Guard, leaf(K::Cycle)));
  check_roundtrip(unary(K::CStep, unary(K::HStep, leaf(K::CLeak))));
  check_roundtrip(sample_invariant());
  check_roundtrip(upto_node("c-swap", {"a", "b", "c", "d"}, leaf(K::CLeak)));
  check_roundtrip(with_witness(K::ReduceCLeak, {"s1", "s2"}, leaf(K::CLeak),
                               leaf(K::CLeak)));
  check_roundtrip(with_witness(
      K::AugmentHLeak, {"h1", "h2"},
      unary(K::Lockstep, unary(K::LkStep, leaf(K::LkCycle))), leaf(K::CLeak)));
  check_roundtrip(unary(
      K::Lockstep,
      invariant_node("lk", {"c0"}, {unary(K::LkStep, leaf(K::LkCycle))})));
  check_roundtrip(unary(K::Lockstep, unary(K::LkGuard, leaf(K::LkLeak))));
}

TEST_CASE("parser accepts comments and whitespace") {
  ScriptNodePtr n = parse_script(
      "# leading comment\n  ( cstep # trailing\n  (cleak) )\n");
  CHECK(n->kind == K::CStep);
  REQUIRE(n->children.size() == 1);
  CHECK(n->children[0]->kind == K::CLeak);
}

TEST_CASE("invariant scripts carry relation name and case labels") {
  ScriptNodePtr n = parse_script(print_script(sample_invariant()));
  CHECK(n->kind == K::Invariant);
  CHECK(n->name == "inv");
  REQUIRE(n->cases.size() == 2);
  CHECK(n->cases[0] == "loop");
  CHECK(n->cases[1] == "exit");
  CHECK(n->children[1]->kind == K::CStep);
}

TEST_CASE("malformed scripts raise positioned parse errors") {
  CHECK_THROWS_AS(parse_script(""), ParseError);
  CHECK_THROWS_AS(parse_script("(cstep (cleak)"), ParseError);   // unbalanced
  CHECK_THROWS_AS(parse_script("(frobnicate)"), ParseError);     // unknown rule
  CHECK_THROWS_AS(parse_script("(cleak) junk"), ParseError);     // trailing
  CHECK_THROWS_AS(parse_script("(invariant)"), ParseError);      // missing name
  CHECK_THROWS_AS(parse_script("(upto c-swap (oops a b c d) (cleak))"),
                  ParseError);                                   // bad witness
  try {
    parse_script("(cstep\n  (nope))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);  // error is located on the offending line
  }
}
