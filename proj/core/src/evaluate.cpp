#include "oinv2/evaluate.hpp"

#include <algorithm>

#include "oinv2/errors.hpp"

namespace oinv2 {

namespace {

void check_interpreted(const Structure& s, const Formula& f) {
  Signature sig = signature_of(f);
  for (const auto& [name, arity] : sig.predicates) {
    if (arity == 1 && !s.unary.count(name))
      throw SemanticError("uninterpreted predicate '" + name + "'");
    if (arity == 2 && !s.binary.count(name))
      throw SemanticError("uninterpreted predicate '" + name + "'");
  }
  for (OrderSym o : sig.orders)
    if (!s.has_order(o))
      throw SemanticError(std::string("uninterpreted order ") + token_of(o));
}

// Satisfying assignments as an n*n bitmap indexed x*n + y.
using PairSet = std::vector<char>;

PairSet pairs_of(const Structure& s, const Formula& f) {
  const int n = s.n;
  PairSet out(static_cast<std::size_t>(n) * n, 0);
  auto at = [n](PairSet& ps, int a, int b) -> char& {
    return ps[static_cast<std::size_t>(a) * n + b];
  };
  switch (f.kind()) {
    case Conn::Pred: {
      if (f.arity() == 1) {
        const bool on_x = f.var0() == Var::X;
        for (int a = 0; a < n; ++a) {
          if (!s.holds(f.pred_name(), a)) continue;
          for (int b = 0; b < n; ++b)
            if (on_x) at(out, a, b) = 1; else at(out, b, a) = 1;
        }
        return out;
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const int first = f.var0() == Var::X ? a : b;
          const int second = f.var1() == Var::X ? a : b;
          at(out, a, b) = s.holds(f.pred_name(), first, second);
        }
      return out;
    }
    case Conn::Eq: {
      if (f.var0() == f.var1()) {
        std::fill(out.begin(), out.end(), 1);
        return out;
      }
      for (int a = 0; a < n; ++a) at(out, a, a) = 1;
      return out;
    }
    case Conn::Ord: {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const int first = f.var0() == Var::X ? a : b;
          const int second = f.var1() == Var::X ? a : b;
          at(out, a, b) = s.leq(f.order_sym(), first, second);
        }
      return out;
    }
    case Conn::Not: {
      PairSet c = pairs_of(s, f.child());
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = !c[i];
      return out;
    }
    case Conn::And: {
      PairSet l = pairs_of(s, f.lhs());
      PairSet r = pairs_of(s, f.rhs());
      for (std::size_t i = 0; i < l.size(); ++i) out[i] = l[i] && r[i];
      return out;
    }
    case Conn::Or: {
      PairSet l = pairs_of(s, f.lhs());
      PairSet r = pairs_of(s, f.rhs());
      for (std::size_t i = 0; i < l.size(); ++i) out[i] = l[i] || r[i];
      return out;
    }
    case Conn::Imp: {
      PairSet l = pairs_of(s, f.lhs());
      PairSet r = pairs_of(s, f.rhs());
      for (std::size_t i = 0; i < l.size(); ++i) out[i] = !l[i] || r[i];
      return out;
    }
    case Conn::Iff: {
      PairSet l = pairs_of(s, f.lhs());
      PairSet r = pairs_of(s, f.rhs());
      for (std::size_t i = 0; i < l.size(); ++i) out[i] = l[i] == r[i];
      return out;
    }
    case Conn::Exists:
    case Conn::Forall: {
      PairSet c = pairs_of(s, f.child());
      const bool want = f.is(Conn::Exists);
      // Quantifying over x collapses each y-column; over y each x-row.
      if (f.var0() == Var::X) {
        for (int b = 0; b < n; ++b) {
          bool hit = !want;
          for (int a = 0; a < n; ++a) {
            const bool v = at(c, a, b);
            if (want ? v : !v) { hit = want; break; }
          }
          for (int a = 0; a < n; ++a) at(out, a, b) = hit;
        }
      } else {
        for (int a = 0; a < n; ++a) {
          bool hit = !want;
          for (int b = 0; b < n; ++b) {
            const bool v = at(c, a, b);
            if (want ? v : !v) { hit = want; break; }
          }
          for (int b = 0; b < n; ++b) at(out, a, b) = hit;
        }
      }
      return out;
    }
  }
  throw InternalError("pairs_of: unreachable");
}

bool holds_rec(const Structure& s, const Formula& f, int a, int b) {
  switch (f.kind()) {
    case Conn::Pred: {
      const int first = f.var0() == Var::X ? a : b;
      if (f.arity() == 1) return s.holds(f.pred_name(), first);
      const int second = f.var1() == Var::X ? a : b;
      return s.holds(f.pred_name(), first, second);
    }
    case Conn::Eq:
      return (f.var0() == Var::X ? a : b) == (f.var1() == Var::X ? a : b);
    case Conn::Ord:
      return s.leq(f.order_sym(), f.var0() == Var::X ? a : b,
                   f.var1() == Var::X ? a : b);
    case Conn::Not:
      return !holds_rec(s, f.child(), a, b);
    case Conn::And:
      return holds_rec(s, f.lhs(), a, b) && holds_rec(s, f.rhs(), a, b);
    case Conn::Or:
      return holds_rec(s, f.lhs(), a, b) || holds_rec(s, f.rhs(), a, b);
    case Conn::Imp:
      return !holds_rec(s, f.lhs(), a, b) || holds_rec(s, f.rhs(), a, b);
    case Conn::Iff:
      return holds_rec(s, f.lhs(), a, b) == holds_rec(s, f.rhs(), a, b);
    case Conn::Exists:
    case Conn::Forall: {
      const bool want = f.is(Conn::Exists);
      for (int v = 0; v < s.n; ++v) {
        const bool r = f.var0() == Var::X ? holds_rec(s, f.child(), v, b)
                                          : holds_rec(s, f.child(), a, v);
        if (r == want) return want;
      }
      return !want;
    }
  }
  throw InternalError("holds_rec: unreachable");
}

}  // namespace

bool evaluate(const Structure& s, const Formula& f) {
  if (!is_sentence(f))
    throw SemanticError("evaluate requires a sentence; free variable present");
  if (s.n < 1) throw SemanticError("universe must be non-empty");
  check_interpreted(s, f);
  return pairs_of(s, f)[0] != 0;
}

std::vector<std::pair<int, int>> satisfying_pairs(const Structure& s,
                                                  const Formula& f) {
  if (s.n < 1) throw SemanticError("universe must be non-empty");
  check_interpreted(s, f);
  PairSet ps = pairs_of(s, f);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (ps[static_cast<std::size_t>(a) * s.n + b]) out.push_back({a, b});
  return out;
}

bool holds_at(const Structure& s, const Formula& f, int a, int b) {
  if (a < 0 || a >= s.n || b < 0 || b >= s.n)
    throw SemanticError("assignment out of range");
  return holds_rec(s, f, a, b);
}

}  // namespace oinv2
