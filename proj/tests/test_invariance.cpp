#include "doctest.h"

#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"
#include "oinv2/invariance.hpp"

using namespace oinv2;

namespace {

const char* kWitnessMax = "exists x. (P(x) & forall y. (y <= x))";

}  // namespace

TEST_CASE("the split formula is the conjunction of the two relabelings") {
  const Formula phi = parse("forall x. forall y. (x <= y | y <= x)");
  CHECK(build_noninv_formula(phi) ==
        Formula::conj(substitute_order(phi, 0),
                      Formula::neg(substitute_order(phi, 1))));
  CHECK_THROWS_AS(build_noninv_formula(parse("exists x. x <=0 x")),
                  SemanticError);
  CHECK_THROWS_AS(build_noninv_formula(parse("P(x)")), SemanticError);
}

TEST_CASE("counterexamples re-check both evaluations on construction") {
  Structure base;
  base.n = 2;
  base.unary["P"] = {1};
  const Formula phi = parse(kWitnessMax);

  const Counterexample ce(base, {0, 1}, {1, 0}, phi);
  CHECK(evaluate(ce.ordered(0), phi));
  CHECK(!evaluate(ce.ordered(1), phi));
  CHECK(ce.ordered(0).ranking(OrderSym::Leq) == std::vector<int>{0, 1});
  CHECK(ce.ordered(1).ranking(OrderSym::Leq) == std::vector<int>{1, 0});
  CHECK(!ce.base().has_order(OrderSym::Leq));

  // Swapping the orders breaks the "true under the first" requirement.
  CHECK_THROWS_AS(Counterexample(base, {1, 0}, {0, 1}, phi), InternalError);
}

TEST_CASE("a maximum bearing P depends on the order reading") {
  const InvarianceVerdict v = check_order_invariance(parse(kWitnessMax), 3);
  CHECK(v.kind == InvarianceVerdict::Kind::NotInvariant);
  CHECK(v.cap == 3);
  CHECK(v.bound.value == 28672);
  REQUIRE(v.counterexample.has_value());
  const Counterexample& ce = *v.counterexample;
  CHECK(ce.base().n == 2);
  // Helper predicates and orders are stripped from the shipped base.
  CHECK(ce.base().unary.size() == 1);
  CHECK(ce.base().unary.at("P") == std::set<int>{1});
  CHECK(ce.base().binary.empty());
  CHECK(ce.ord0() == std::vector<int>{0, 1});
  CHECK(ce.ord1() == std::vector<int>{1, 0});
}

TEST_CASE("order-invariant sentences pass up to the cap") {
  for (const char* text :
       {"forall x. (x <= x)", "forall x. forall y. (x <= y | y <= x)",
        "exists x. forall y. (x <= y)", "forall x. (P(x) | !P(x))"}) {
    CAPTURE(text);
    const InvarianceVerdict v = check_order_invariance(parse(text), 3);
    CHECK(v.kind == InvarianceVerdict::Kind::InvariantUpTo);
    CHECK(v.cap == 3);
    CHECK(!v.counterexample.has_value());
  }
}

TEST_CASE("counterexamples are universe-minimal") {
  // Size 1 cannot distinguish the orders, so 2 is minimal whenever any
  // counterexample exists; raising the cap must not change the size.
  const InvarianceVerdict v2 = check_order_invariance(parse(kWitnessMax), 2);
  const InvarianceVerdict v4 = check_order_invariance(parse(kWitnessMax), 4);
  REQUIRE(v2.counterexample.has_value());
  REQUIRE(v4.counterexample.has_value());
  CHECK(v2.counterexample->base().n == 2);
  CHECK(v4.counterexample->base().n == 2);
}

TEST_CASE("validity of simple tautologies within the cap") {
  for (const char* text :
       {"forall x. (P(x) | !P(x))", "forall x. (P(x) -> P(x))",
        "exists x. (P(x) | !P(x))"}) {
    CAPTURE(text);
    const ValidityResult r = reduce_validity(parse(text), 3);
    CHECK(r.valid);
    CHECK(!r.complete);  // the cap is far below the bound
    CHECK(!r.corner_case_fired);
    CHECK(!r.countermodel.has_value());
    CHECK(r.invariance_kind == InvarianceVerdict::Kind::InvariantUpTo);
  }
}

TEST_CASE("one-element refutations use the type enumeration") {
  const ValidityResult r = reduce_validity(parse("forall x. P(x)"), 3);
  CHECK(!r.valid);
  CHECK(r.complete);
  CHECK(r.corner_case_fired);
  REQUIRE(r.countermodel.has_value());
  CHECK(r.countermodel->n == 1);
  CHECK(!evaluate(*r.countermodel, parse("forall x. P(x)")));

  // Also with an empty signature: "two elements exist" fails at size one.
  const ValidityResult two =
      reduce_validity(parse("exists x. exists y. !(x = y)"), 3);
  CHECK(!two.valid);
  CHECK(two.corner_case_fired);
  CHECK(two.countermodel->n == 1);
}

TEST_CASE("refutations beyond one element come from the invariance check") {
  const Formula phi = parse("forall x. forall y. (R(x,y) -> R(y,x))");
  const ValidityResult r = reduce_validity(phi, 3);
  CHECK(!r.valid);
  CHECK(r.complete);
  CHECK(!r.corner_case_fired);
  CHECK(r.invariance_kind == InvarianceVerdict::Kind::NotInvariant);
  REQUIRE(r.countermodel.has_value());
  CHECK(r.countermodel->n == 2);
  CHECK(!evaluate(*r.countermodel, phi));
  // The countermodel speaks the input's language only.
  CHECK(r.countermodel->unary.empty());
  CHECK(r.countermodel->binary.size() == 1);
  CHECK(!r.countermodel->has_order(OrderSym::Leq));
}

TEST_CASE("reduce_validity rejects order-using or open input") {
  CHECK_THROWS_AS(reduce_validity(parse("forall x. (x <= x)"), 3),
                  SemanticError);
  CHECK_THROWS_AS(reduce_validity(parse("P(x)"), 3), SemanticError);
}

TEST_CASE("the reserved witness predicate stays fresh") {
  // The input already uses _P, so the reduction must pick another name;
  // the outcome is still a plain tautology verdict.
  const ValidityResult r =
      reduce_validity(parse("forall x. (_P(x) | !_P(x))"), 2);
  CHECK(r.valid);
}
