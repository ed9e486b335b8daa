#include "doctest.h"

#include "oinv2/errors.hpp"
#include "oinv2/formula.hpp"
#include "support/corpus.hpp"

using namespace oinv2;

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("P(x)") == Formula::pred("P", Var::X));
  CHECK(parse("R(x,y)") == Formula::pred("R", Var::X, Var::Y));
  CHECK(parse("x = y") == Formula::equals(Var::X, Var::Y));
  CHECK(parse("x <= y") == Formula::order(OrderSym::Leq, Var::X, Var::Y));
  CHECK(parse("x <=0 y") == Formula::order(OrderSym::Leq0, Var::X, Var::Y));
  CHECK(parse("y <=1 x") == Formula::order(OrderSym::Leq1, Var::Y, Var::X));
  CHECK(parse("!P(x)") == Formula::neg(Formula::pred("P", Var::X)));
  CHECK(parse("_S0(y)") == Formula::pred("_S0", Var::Y));
}

TEST_CASE("operator precedence and associativity") {
  const Formula p = Formula::pred("P", Var::X);
  const Formula q = Formula::pred("Q", Var::X);
  const Formula r = Formula::pred("R", Var::X, Var::Y);

  CHECK(parse("P(x) & Q(x) | R(x,y)") ==
        Formula::disj(Formula::conj(p, q), r));
  CHECK(parse("P(x) | Q(x) & R(x,y)") ==
        Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse("!P(x) & Q(x)") == Formula::conj(Formula::neg(p), q));
  CHECK(parse("P(x) & Q(x) & R(x,y)") ==
        Formula::conj(Formula::conj(p, q), r));
  CHECK(parse("P(x) -> Q(x) -> R(x,y)") ==
        Formula::imp(p, Formula::imp(q, r)));
  CHECK(parse("P(x) <-> Q(x) <-> R(x,y)") ==
        Formula::iff(p, Formula::iff(q, r)));
  CHECK(parse("P(x) -> Q(x) <-> R(x,y)") ==
        Formula::iff(Formula::imp(p, q), r));
}

TEST_CASE("quantifiers bind a unary, not a full formula") {
  const Formula p = Formula::pred("P", Var::X);
  const Formula q = Formula::pred("Q", Var::X);

  // The body of "forall x." extends only over the next unary production,
  // so the conjunction sits outside the quantifier.
  CHECK(parse("forall x. P(x) & Q(x)") ==
        Formula::conj(Formula::forall(Var::X, p), q));
  CHECK(parse("forall x. (P(x) & Q(x))") ==
        Formula::forall(Var::X, Formula::conj(p, q)));
  CHECK(parse("exists x. !P(x)") ==
        Formula::exists(Var::X, Formula::neg(p)));
  CHECK(parse("forall x. exists y. R(x,y)") ==
        Formula::forall(Var::X,
                        Formula::exists(Var::Y,
                                        Formula::pred("R", Var::X, Var::Y))));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse("P(x"), ParseError);
  try {
    parse("P(x");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 4);
  }
  try {
    parse("P(x) &\n Q(");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
  }
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("P(z)"), ParseError);
  CHECK_THROWS_AS(parse("p(x)"), ParseError);
  CHECK_THROWS_AS(parse("_s0(x)"), ParseError);
  CHECK_THROWS_AS(parse("P(x) @"), ParseError);
  CHECK_THROWS_AS(parse("P(x) P(y)"), ParseError);
  CHECK_THROWS_AS(parse("x <= "), ParseError);
  CHECK_THROWS_AS(parse("x < y"), ParseError);
  CHECK_THROWS_AS(parse("P(x) - Q(x)"), ParseError);
  CHECK_THROWS_AS(parse("forall z. P(x)"), ParseError);
  CHECK_THROWS_AS(parse("forall x P(x)"), ParseError);
  // Arity must be consistent within one formula.
  CHECK_THROWS_AS(parse("P(x) & P(x,y)"), ParseError);
}

TEST_CASE("render is parseable and stable") {
  for (const auto& entry : oinv2::testing::corpus()) {
    CAPTURE(entry.text);
    const Formula f = parse(entry.text);
    const std::string printed = render(f);
    CHECK(parse(printed) == f);
    // A second round trip reproduces the same bytes.
    CHECK(render(parse(printed)) == printed);
  }
}

TEST_CASE("render uses minimal parentheses at the connective level") {
  CHECK(render(parse("P(x) & Q(x) | R(x,y)")) == "P(x) & Q(x) | R(x,y)");
  CHECK(render(parse("P(x) & (Q(x) | R(x,y))")) ==
        "P(x) & (Q(x) | R(x,y))");
  CHECK(render(parse("forall x. (P(x) & Q(x))")) ==
        "forall x. (P(x) & Q(x))");
  CHECK(render(parse("!(P(x) | Q(x))")) == "!(P(x) | Q(x))");
}

TEST_CASE("node_count and quantifier_free") {
  CHECK(node_count(parse("P(x)")) == 1);
  CHECK(node_count(parse("!P(x)")) == 2);
  CHECK(node_count(parse("forall x. (P(x) & Q(x))")) == 4);
  CHECK(quantifier_free(parse("P(x) & !R(x,y)")));
  CHECK(!quantifier_free(parse("P(x) & exists y. R(x,y)")));
}

TEST_CASE("free variables and sentences") {
  CHECK(free_variables(parse("P(x)")) == std::set<Var>{Var::X});
  CHECK(free_variables(parse("R(x,y)")) == std::set<Var>{Var::X, Var::Y});
  CHECK(free_variables(parse("exists x. R(x,y)")) == std::set<Var>{Var::Y});
  CHECK(free_variables(parse("exists x. forall y. R(x,y)")).empty());
  CHECK(is_sentence(parse("forall x. P(x)")));
  CHECK(!is_sentence(parse("P(x)")));
  // Rebinding the same variable leaves nothing free.
  CHECK(is_sentence(parse("forall x. exists x. P(x)")));
}

TEST_CASE("swap_xy exchanges the variables everywhere") {
  CHECK(swap_xy(parse("forall x. exists y. (R(x,y) & P(x))")) ==
        parse("forall y. exists x. (R(y,x) & P(y))"));
  CHECK(swap_xy(parse("x <= y")) == parse("y <= x"));
  const Formula f = parse("exists x. forall y. (R(x,y) -> x = y)");
  CHECK(swap_xy(swap_xy(f)) == f);
}

TEST_CASE("substitute_order relabels the plain order") {
  const Formula f = parse("forall x. forall y. (x <= y | y <= x)");
  CHECK(substitute_order(f, 0) ==
        parse("forall x. forall y. (x <=0 y | y <=0 x)"));
  CHECK(substitute_order(f, 1) ==
        parse("forall x. forall y. (x <=1 y | y <=1 x)"));
  CHECK_THROWS_AS(substitute_order(f, 2), SemanticError);
  CHECK_THROWS_AS(substitute_order(parse("x <=0 y"), 1), SemanticError);
  // Predicates and equality pass through untouched.
  CHECK(substitute_order(parse("P(x) & x = y"), 0) == parse("P(x) & x = y"));
}

TEST_CASE("signature_of collects exactly the occurring symbols") {
  const Signature sig = signature_of(parse("P(x) & R(x,y) & x <= y"));
  CHECK(sig.predicates ==
        std::map<std::string, int>{{"P", 1}, {"R", 2}});
  CHECK(sig.orders == std::set<OrderSym>{OrderSym::Leq});

  const Signature two = signature_of(parse("x <=0 y & x <=1 y"));
  CHECK(two.predicates.empty());
  CHECK(two.orders == std::set<OrderSym>{OrderSym::Leq0, OrderSym::Leq1});

  CHECK(signature_of(parse("x = y")).predicates.empty());
  CHECK_THROWS_AS(
      signature_of(Formula::conj(Formula::pred("P", Var::X),
                                 Formula::pred("P", Var::X, Var::Y))),
      SemanticError);
}
