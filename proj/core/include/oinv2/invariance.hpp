#pragma once

#include <optional>
#include <vector>

#include "oinv2/formula.hpp"
#include "oinv2/normal_form.hpp"
#include "oinv2/search.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

// A structure on which phi's truth value depends on how <= is read: true
// under ord0, false under ord1. The constructor re-checks both evaluations
// and throws InternalError if either fails, so a Counterexample in hand is
// always genuine.
class Counterexample {
 public:
  Counterexample(Structure base, std::vector<int> ord0, std::vector<int> ord1,
                 Formula phi);

  const Structure& base() const { return base_; }
  const std::vector<int>& ord0() const { return ord0_; }
  const std::vector<int>& ord1() const { return ord1_; }
  const Formula& phi() const { return phi_; }

  // base with <= interpreted by ord0 (index 0) or ord1 (index 1).
  Structure ordered(int which) const;

 private:
  Structure base_;  // no order interpretations
  std::vector<int> ord0_;
  std::vector<int> ord1_;
  Formula phi_;
};

struct InvarianceVerdict {
  enum class Kind {
    NotInvariant,    // counterexample in hand
    InvariantUpTo,   // no counterexample with at most cap elements
    Invariant,       // cap covered the small-model bound: complete verdict
  };
  Kind kind = Kind::InvariantUpTo;
  int cap = 0;
  std::optional<Counterexample> counterexample;
  SizeBound bound;
};

// phi[<= := <=0] & !(phi[<= := <=1]); satisfiable over structures carrying
// two linear orders exactly when phi is not order-invariant. Requires a
// sentence over the plain <= only.
Formula build_noninv_formula(const Formula& phi);

// Bounded decision of order-invariance: search for a model of the
// normalized non-invariance formula up to cap. A model found is decoded
// into a Counterexample (orders and helper predicates stripped from the
// base); none found is InvariantUpTo, upgraded to the complete Invariant
// when cap reaches the bound. Found counterexamples are universe-minimal
// because sizes are tried in ascending order.
InvarianceVerdict check_order_invariance(const Formula& phi, int cap,
                                         const SearchOptions& opts = {});

struct ValidityResult {
  bool valid = false;
  // True when the answer is exact: a countermodel or a one-element refuter
  // in hand, or the invariance cap covered the bound. False means "no
  // countermodel as far as cap sees".
  bool complete = false;
  int cap = 0;
  bool corner_case_fired = false;  // one-element countermodel branch
  std::optional<Structure> countermodel;
  InvarianceVerdict::Kind invariance_kind = InvarianceVerdict::Kind::InvariantUpTo;
};

// Validity of an order-free FO^2 sentence via order-invariance. Refute with
// a one-element model of !phi first (exact enumeration over 1-types); else
// phi is valid iff (!phi) -> exists x. (_P(x) & forall y. (y <= x)) is
// order-invariant, checked up to cap. The fresh predicate name avoids
// signature_of(phi) by the reserved prefix. A NotInvariant outcome ships
// the counterexample base as an explicit countermodel of phi.
ValidityResult reduce_validity(const Formula& phi, int cap,
                               const SearchOptions& opts = {});

}  // namespace oinv2
