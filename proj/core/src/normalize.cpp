#include "oinv2/normal_form.hpp"

#include <algorithm>

#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"

namespace oinv2 {

namespace {

Formula truth() { return Formula::equals(Var::X, Var::X); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth();
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

// Collects the per-half chi conjuncts and gamma rows; the fresh-name
// counter and the definition list are shared so both halves draw from one
// _S sequence.
struct Collector {
  std::vector<Formula> chi;
  std::vector<Formula> gamma;
  int* counter;
  std::vector<ScottDef>* defs;
  const Signature* avoid;

  Formula fresh_atom(Var v) {
    std::string name;
    do {
      name = "_S" + std::to_string((*counter)++);
    } while (avoid->predicates.count(name));
    return Formula::pred(name, v);
  }

  // Replaces the innermost-leftmost quantified subformula by a fresh
  // definitional atom until none remain. The defined body is normalized to
  // subject x / bound y before its rows are emitted, so every row is a
  // valid chi or gamma matrix.
  Formula reduce(const Formula& f) {
    Formula cur = f;
    while (true) {
      auto hit = find_innermost(cur);
      if (!hit) return cur;
      const Formula q = *hit;
      const Var bound = q.var0();
      const Var subject = other(bound);
      Formula body = q.child();
      Formula over_xy = bound == Var::Y ? body : swap_xy(body);
      Formula atom = fresh_atom(subject);
      Formula atom_x = Formula::pred(atom.pred_name(), Var::X);
      defs->push_back({atom.pred_name(), q.is(Conn::Exists), over_xy});
      if (q.is(Conn::Exists)) {
        gamma.push_back(Formula::disj(Formula::neg(atom_x), over_xy));
        chi.push_back(Formula::disj(Formula::neg(over_xy), atom_x));
      } else {
        chi.push_back(Formula::disj(Formula::neg(atom_x), over_xy));
        gamma.push_back(Formula::disj(Formula::neg(over_xy), atom_x));
      }
      cur = replace(cur, q, atom);
    }
  }

  void take_conjunct(const Formula& c) {
    // Prefix shapes get their own row kinds; everything else reduces to a
    // quantifier-free formula and joins chi, whose forall-forall closure
    // gives the right meaning to any leftover free variable.
    if (c.is(Conn::Forall)) {
      const Formula inner = c.child();
      if (inner.is(Conn::Forall) && inner.var0() == other(c.var0())) {
        chi.push_back(reduce(inner.child()));
        return;
      }
      if (inner.is(Conn::Exists) && inner.var0() == other(c.var0())) {
        Formula g = reduce(inner.child());
        gamma.push_back(c.var0() == Var::X ? g : swap_xy(g));
        return;
      }
      chi.push_back(reduce(c.child()));
      return;
    }
    if (c.is(Conn::Exists)) {
      Formula g = reduce(c.child());
      gamma.push_back(c.var0() == Var::Y ? g : swap_xy(g));
      return;
    }
    chi.push_back(reduce(c));
  }

  void run(const Formula& half) {
    if (half.is(Conn::And)) {
      run(half.lhs());
      run(half.rhs());
      return;
    }
    take_conjunct(half);
  }

 private:
  static std::optional<Formula> find_innermost(const Formula& f) {
    switch (f.kind()) {
      case Conn::Pred:
      case Conn::Eq:
      case Conn::Ord:
        return std::nullopt;
      case Conn::Not:
        return find_innermost(f.child());
      case Conn::Exists:
      case Conn::Forall: {
        auto inner = find_innermost(f.child());
        if (inner) return inner;
        return f;
      }
      default: {
        auto l = find_innermost(f.lhs());
        if (l) return l;
        return find_innermost(f.rhs());
      }
    }
  }

  // Substitutes `by` for every occurrence structurally equal to `what`;
  // the target is an innermost quantified subformula, so equal subtrees
  // denote the same thing and replacing all of them at once is sound.
  static Formula replace(const Formula& f, const Formula& what,
                         const Formula& by) {
    if (f == what) return by;
    switch (f.kind()) {
      case Conn::Pred:
      case Conn::Eq:
      case Conn::Ord:
        return f;
      case Conn::Not:
        return Formula::neg(replace(f.child(), what, by));
      case Conn::Exists:
        return Formula::exists(f.var0(), replace(f.child(), what, by));
      case Conn::Forall:
        return Formula::forall(f.var0(), replace(f.child(), what, by));
      case Conn::And:
        return Formula::conj(replace(f.lhs(), what, by),
                             replace(f.rhs(), what, by));
      case Conn::Or:
        return Formula::disj(replace(f.lhs(), what, by),
                             replace(f.rhs(), what, by));
      case Conn::Imp:
        return Formula::imp(replace(f.lhs(), what, by),
                            replace(f.rhs(), what, by));
      case Conn::Iff:
        return Formula::iff(replace(f.lhs(), what, by),
                            replace(f.rhs(), what, by));
    }
    throw InternalError("replace: unreachable");
  }
};

}  // namespace

int NormalForm::witness_width() const {
  return std::max(std::max(m0(), m1()), 1);
}

Formula NormalForm::pair_matrix() const {
  return Formula::forall(
      Var::X, Formula::forall(Var::Y, Formula::conj(chi0, chi1)));
}

Formula NormalForm::sentence() const {
  std::vector<Formula> parts;
  for (int half = 0; half < 2; ++half) {
    parts.push_back(Formula::forall(
        Var::X, Formula::forall(Var::Y, chi(half))));
    for (const Formula& g : gammas(half))
      parts.push_back(Formula::forall(Var::X, Formula::exists(Var::Y, g)));
  }
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::conj(out, parts[i]);
  return out;
}

NormalForm normalize(const Formula& phi) {
  if (!is_sentence(phi))
    throw SemanticError("normalization requires a sentence");
  Signature in_sig = signature_of(phi);
  if (in_sig.orders.count(OrderSym::Leq0) || in_sig.orders.count(OrderSym::Leq1))
    throw SemanticError("input must use the plain <= only");

  Formula half0 = substitute_order(phi, 0);
  Formula half1 = Formula::neg(substitute_order(phi, 1));

  int counter = 0;
  std::vector<ScottDef> defs;
  Collector c0{{}, {}, &counter, &defs, &in_sig};
  c0.run(half0);
  Collector c1{{}, {}, &counter, &defs, &in_sig};
  c1.run(half1);

  NormalForm nf;
  nf.chi0 = conj_all(c0.chi);
  nf.chi1 = conj_all(c1.chi);
  nf.gamma0 = std::move(c0.gamma);
  nf.gamma1 = std::move(c1.gamma);
  nf.defs = std::move(defs);
  nf.sig = signature_of(nf.sentence());
  return nf;
}

Structure expand_with_definitions(const NormalForm& nf, const Structure& base) {
  Structure s = base;
  for (const ScottDef& def : nf.defs) {
    if (s.unary.count(def.name)) continue;
    auto& interp = s.unary[def.name];
    for (int a = 0; a < s.n; ++a) {
      bool value = !def.existential;
      for (int b = 0; b < s.n; ++b)
        if (holds_at(s, def.body, a, b) == def.existential) {
          value = def.existential;
          break;
        }
      if (value) interp.insert(a);
    }
  }
  return s;
}

SizeBound size_bound(const NormalForm& nf) {
  SizeBound b;
  b.m = static_cast<std::uint64_t>(nf.witness_width());
  TypeSpace types(nf.sig);
  b.one_type_bits = types.one_type_bits();

  using U128 = unsigned __int128;
  const U128 limit = ~std::uint64_t{0};
  auto mul_capped = [&](U128 x, U128 y, bool& over) -> U128 {
    if (over) return 0;
    U128 r = x * y;
    if (x != 0 && r / x != y) { over = true; return 0; }
    return r;
  };

  bool over = false;
  U128 v = 224;
  v = mul_capped(v, b.m, over);
  v = mul_capped(v, b.m, over);
  v = mul_capped(v, b.m, over);
  if (!over && b.one_type_bits >= 64) over = true;
  if (!over) v = mul_capped(v, U128{1} << b.one_type_bits, over);
  b.overflow = over || v > limit;
  b.value = b.overflow ? 0 : static_cast<std::uint64_t>(v);

  b.sentence_size = node_count(nf.sentence());
  bool cover = false;
  U128 c = 224;
  c = mul_capped(c, b.sentence_size, cover);
  c = mul_capped(c, b.sentence_size, cover);
  c = mul_capped(c, b.sentence_size, cover);
  if (!cover && b.sentence_size >= 64) cover = true;
  if (!cover) c = mul_capped(c, U128{1} << b.sentence_size, cover);
  b.coarse_overflow = cover || c > limit;
  b.coarse = b.coarse_overflow ? 0 : static_cast<std::uint64_t>(c);
  return b;
}

}  // namespace oinv2
