#include "doctest.h"

#include "oinv2/evaluate.hpp"
#include "oinv2/invariance.hpp"
#include "oinv2/normal_form.hpp"
#include "oinv2/search.hpp"

using namespace oinv2;

namespace {

NormalForm witness_max_nf() {
  return normalize(parse("exists x. (P(x) & forall y. (y <= x))"));
}

}  // namespace

TEST_CASE("the two-order split of the max-bearing sentence needs two elements") {
  const NormalForm nf = witness_max_nf();
  CHECK(!find_model(nf, 1).has_value());

  const auto model = find_model(nf, 2);
  REQUIRE(model.has_value());
  validate(*model, nf.sig);
  CHECK(evaluate(*model, nf.sentence()));

  // The first order is pinned to the natural ranking.
  CHECK(*model->rankings[static_cast<int>(OrderSym::Leq0)] ==
        std::vector<int>{0, 1});
}

TEST_CASE("unsatisfiable splits stay empty at every size") {
  const NormalForm nf =
      normalize(parse("forall x. forall y. (x <= y | y <= x)"));
  for (int n = 1; n <= 4; ++n) CHECK(!find_model(nf, n).has_value());
}

TEST_CASE("search is deterministic and worker count is invisible") {
  const NormalForm nf = witness_max_nf();
  for (int n = 2; n <= 3; ++n) {
    CAPTURE(n);
    const auto a = find_model(nf, n);
    const auto b = find_model(nf, n);
    const auto par = find_model(nf, n, SearchOptions{4});
    REQUIRE(a.has_value());
    CHECK(*a == *b);
    CHECK(*a == *par);
  }
}

TEST_CASE("computing defined predicates matches enumerating them") {
  NormalForm full = witness_max_nf();
  NormalForm enumerated = full;
  enumerated.defs.clear();  // force every helper bit through enumeration

  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const auto fast = find_model(full, n);
    const auto slow = find_model(enumerated, n);
    CHECK(fast.has_value() == slow.has_value());
    if (fast && slow) {
      CHECK(evaluate(*fast, full.sentence()));
      CHECK(evaluate(*slow, full.sentence()));
    }
  }
}

TEST_CASE("ascending search reports the smallest size") {
  const NormalForm nf = witness_max_nf();
  const BoundedSearchResult r = find_model_up_to(nf, 3);
  REQUIRE(r.model.has_value());
  CHECK(r.model->n == 2);
  CHECK(r.cap == 3);
  CHECK(!r.complete);  // 3 is far below the threshold of 28672
}

TEST_CASE("covering the threshold makes absence a complete verdict") {
  // Contradictory universal matrix over the empty signature: the threshold
  // is the base constant 224 and every size has one candidate to reject.
  NormalForm nf;
  nf.chi0 = Formula::neg(Formula::equals(Var::X, Var::X));

  const SizeBound bound = size_bound(nf);
  REQUIRE(bound.value == 224);

  const BoundedSearchResult partial = find_model_up_to(nf, 223);
  CHECK(!partial.model.has_value());
  CHECK(!partial.complete);

  const BoundedSearchResult full = find_model_up_to(nf, 224);
  CHECK(!full.model.has_value());
  CHECK(full.complete);

  const BoundedSearchResult past = find_model_up_to(nf, 230);
  CHECK(!past.model.has_value());
  CHECK(past.complete);
}

TEST_CASE("witness obligations prune whole sizes") {
  // Everyone needs a strictly larger element under both orders: finitely
  // unsatisfiable, so the search must come back empty at every size.
  const NormalForm nf =
      normalize(parse("forall x. exists y. (x <= y & !(x = y))"));
  for (int n = 1; n <= 3; ++n) CHECK(!find_model(nf, n).has_value());
}
