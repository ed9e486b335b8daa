#include "oinv2/invariance.hpp"

#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"

namespace oinv2 {

Counterexample::Counterexample(Structure base, std::vector<int> ord0,
                               std::vector<int> ord1, Formula phi)
    : base_(std::move(base)),
      ord0_(std::move(ord0)),
      ord1_(std::move(ord1)),
      phi_(std::move(phi)) {
  for (const auto& r : base_.rankings)
    if (r) throw InternalError("counterexample base must carry no orders");
  if (!evaluate(ordered(0), phi_) || evaluate(ordered(1), phi_))
    throw InternalError("counterexample fails its defining checks");
}

Structure Counterexample::ordered(int which) const {
  Structure s = base_;
  s.rankings[static_cast<int>(OrderSym::Leq)] = which == 0 ? ord0_ : ord1_;
  return s;
}

Formula build_noninv_formula(const Formula& phi) {
  if (!is_sentence(phi))
    throw SemanticError("invariance is defined for sentences only");
  return Formula::conj(substitute_order(phi, 0),
                       Formula::neg(substitute_order(phi, 1)));
}

InvarianceVerdict check_order_invariance(const Formula& phi, int cap,
                                         const SearchOptions& opts) {
  if (cap < 1) throw SemanticError("cap must be at least 1");
  const NormalForm nf = normalize(phi);
  InvarianceVerdict v;
  v.cap = cap;
  v.bound = size_bound(nf);
  BoundedSearchResult r = find_model_up_to(nf, cap, opts);
  if (!r.model) {
    v.kind = r.complete ? InvarianceVerdict::Kind::Invariant
                        : InvarianceVerdict::Kind::InvariantUpTo;
    return v;
  }
  const Structure& m = *r.model;
  if (!m.has_order(OrderSym::Leq0) || !m.has_order(OrderSym::Leq1))
    throw InternalError("non-invariance witness lacks an order");
  // Keep only the input sentence's own predicates in the base.
  const Signature orig = signature_of(phi);
  Structure base;
  base.n = m.n;
  for (const auto& [name, arity] : orig.predicates) {
    if (arity == 1)
      base.unary[name] = m.unary.at(name);
    else
      base.binary[name] = m.binary.at(name);
  }
  v.kind = InvarianceVerdict::Kind::NotInvariant;
  v.counterexample.emplace(std::move(base), m.ranking(OrderSym::Leq0),
                           m.ranking(OrderSym::Leq1), phi);
  return v;
}

ValidityResult reduce_validity(const Formula& phi, int cap,
                               const SearchOptions& opts) {
  if (cap < 1) throw SemanticError("cap must be at least 1");
  if (!is_sentence(phi))
    throw SemanticError("validity is defined for sentences only");
  const Signature sig = signature_of(phi);
  if (!sig.orders.empty())
    throw SemanticError("validity reduction requires an order-free sentence");

  ValidityResult out;
  out.cap = cap;

  // A one-element countermodel, if any, is found by sheer 1-type
  // enumeration; no search machinery involved.
  const TypeSpace types(sig);
  for (std::uint64_t t = 0; t < types.one_type_count(); ++t) {
    Structure s1 = types.one_element_structure(OneType{t});
    if (!evaluate(s1, phi)) {
      out.valid = false;
      out.complete = true;
      out.corner_case_fired = true;
      out.countermodel = std::move(s1);
      return out;
    }
  }

  std::string fresh = "_P";
  while (sig.predicates.count(fresh)) fresh += "0";
  const Formula psi = Formula::exists(
      Var::X,
      Formula::conj(Formula::pred(fresh, Var::X),
                    Formula::forall(Var::Y, Formula::order(OrderSym::Leq,
                                                           Var::Y, Var::X))));
  const Formula target = Formula::imp(Formula::neg(phi), psi);

  const InvarianceVerdict verdict = check_order_invariance(target, cap, opts);
  out.invariance_kind = verdict.kind;
  switch (verdict.kind) {
    case InvarianceVerdict::Kind::NotInvariant: {
      out.valid = false;
      out.complete = true;  // the countermodel certifies the answer
      const Structure& cx_base = verdict.counterexample->base();
      Structure counter;
      counter.n = cx_base.n;
      for (const auto& [name, arity] : sig.predicates) {
        if (arity == 1)
          counter.unary[name] = cx_base.unary.at(name);
        else
          counter.binary[name] = cx_base.binary.at(name);
      }
      if (evaluate(counter, phi))
        throw InternalError("extracted countermodel satisfies the input");
      out.countermodel = std::move(counter);
      return out;
    }
    case InvarianceVerdict::Kind::Invariant:
      out.valid = true;
      out.complete = true;
      return out;
    case InvarianceVerdict::Kind::InvariantUpTo:
      out.valid = true;
      out.complete = false;
      return out;
  }
  throw InternalError("reduce_validity: unreachable");
}

}  // namespace oinv2
