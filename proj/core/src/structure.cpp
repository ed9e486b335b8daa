#include "oinv2/structure.hpp"

#include <algorithm>

#include "oinv2/errors.hpp"

namespace oinv2 {

const std::vector<int>& Structure::ranking(OrderSym s) const {
  const auto& r = rankings[static_cast<int>(s)];
  if (!r)
    throw SemanticError(std::string("order ") + token_of(s) +
                        " is not interpreted");
  return *r;
}

bool Structure::leq(OrderSym s, int a, int b) const {
  const auto& r = ranking(s);
  return r[a] <= r[b];
}

bool Structure::holds(const std::string& unary_pred, int a) const {
  auto it = unary.find(unary_pred);
  return it != unary.end() && it->second.count(a) > 0;
}

bool Structure::holds(const std::string& binary_pred, int a, int b) const {
  auto it = binary.find(binary_pred);
  return it != binary.end() && it->second.count({a, b}) > 0;
}

namespace {

void check_ranking(const std::vector<int>& r, int n, OrderSym s) {
  if (static_cast<int>(r.size()) != n)
    throw SemanticError(std::string("ranking for ") + token_of(s) + " has " +
                        std::to_string(r.size()) + " entries, expected " +
                        std::to_string(n));
  std::vector<bool> seen(n, false);
  for (int v : r) {
    if (v < 0 || v >= n)
      throw SemanticError(std::string("ranking for ") + token_of(s) +
                          " is out of range: " + std::to_string(v));
    if (seen[v])
      throw SemanticError(std::string("ranking for ") + token_of(s) +
                          " is not a bijection: rank " + std::to_string(v) +
                          " repeats");
    seen[v] = true;
  }
}

}  // namespace

void validate(const Structure& s, const Signature& sig) {
  if (s.n < 1) throw SemanticError("universe must be non-empty");
  for (const auto& [name, elems] : s.unary) {
    auto it = sig.predicates.find(name);
    if (it == sig.predicates.end() || it->second != 1)
      throw SemanticError("extra unary predicate '" + name + "'");
    for (int e : elems)
      if (e < 0 || e >= s.n)
        throw SemanticError("element " + std::to_string(e) + " in '" + name +
                            "' is out of range");
  }
  for (const auto& [name, pairs] : s.binary) {
    auto it = sig.predicates.find(name);
    if (it == sig.predicates.end() || it->second != 2)
      throw SemanticError("extra binary predicate '" + name + "'");
    for (auto [a, b] : pairs)
      if (a < 0 || a >= s.n || b < 0 || b >= s.n)
        throw SemanticError("pair (" + std::to_string(a) + "," +
                            std::to_string(b) + ") in '" + name +
                            "' is out of range");
  }
  for (const auto& [name, arity] : sig.predicates) {
    if (arity == 1 && !s.unary.count(name))
      throw SemanticError("missing unary predicate '" + name + "'");
    if (arity == 2 && !s.binary.count(name))
      throw SemanticError("missing binary predicate '" + name + "'");
  }
  for (OrderSym o : {OrderSym::Leq, OrderSym::Leq0, OrderSym::Leq1}) {
    const bool wanted = sig.orders.count(o) > 0;
    if (wanted && !s.has_order(o))
      throw SemanticError(std::string("missing order ") + token_of(o));
    if (!wanted && s.has_order(o))
      throw SemanticError(std::string("extra order ") + token_of(o));
    if (wanted) check_ranking(s.ranking(o), s.n, o);
  }
}

Structure restrict_to(const Structure& s, const std::set<int>& keep) {
  if (keep.empty()) throw SemanticError("cannot restrict to an empty set");
  for (int e : keep)
    if (e < 0 || e >= s.n)
      throw SemanticError("restriction element " + std::to_string(e) +
                          " is out of range");
  std::vector<int> old_of(keep.begin(), keep.end());
  std::vector<int> new_of(s.n, -1);
  for (std::size_t i = 0; i < old_of.size(); ++i) new_of[old_of[i]] = (int)i;

  Structure out;
  out.n = static_cast<int>(old_of.size());
  for (const auto& [name, elems] : s.unary) {
    auto& dst = out.unary[name];
    for (int e : elems)
      if (new_of[e] >= 0) dst.insert(new_of[e]);
  }
  for (const auto& [name, pairs] : s.binary) {
    auto& dst = out.binary[name];
    for (auto [a, b] : pairs)
      if (new_of[a] >= 0 && new_of[b] >= 0) dst.insert({new_of[a], new_of[b]});
  }
  for (int oi = 0; oi < 3; ++oi) {
    if (!s.rankings[oi]) continue;
    const auto& r = *s.rankings[oi];
    // Sort the kept elements by original rank; position becomes new rank.
    std::vector<int> by_rank = old_of;
    std::sort(by_rank.begin(), by_rank.end(),
              [&](int a, int b) { return r[a] < r[b]; });
    std::vector<int> nr(out.n, 0);
    for (int pos = 0; pos < out.n; ++pos) nr[new_of[by_rank[pos]]] = pos;
    out.rankings[oi] = std::move(nr);
  }
  return out;
}

TypeSpace::TypeSpace(const Signature& sig) {
  for (const auto& [name, arity] : sig.predicates) {
    if (arity == 1)
      unary_.push_back(name);
    else if (arity == 2)
      binary_.push_back(name);
    else
      throw SemanticError("predicate '" + name + "' has unsupported arity " +
                          std::to_string(arity));
  }
  for (OrderSym o : {OrderSym::Leq, OrderSym::Leq0, OrderSym::Leq1})
    if (sig.orders.count(o)) orders_.push_back(o);
}

std::uint64_t TypeSpace::one_type_count() const {
  const int bits = one_type_bits();
  if (bits > 62)
    throw InternalError("1-type count exceeds representable range");
  return std::uint64_t{1} << bits;
}

OneType TypeSpace::one_type_of(const Structure& s, int d) const {
  if (d < 0 || d >= s.n)
    throw SemanticError("element " + std::to_string(d) + " is out of range");
  OneType t;
  int bit = 0;
  for (const auto& p : unary_) {
    if (s.holds(p, d)) t.bits |= std::uint64_t{1} << bit;
    ++bit;
  }
  for (const auto& r : binary_) {
    if (s.holds(r, d, d)) t.bits |= std::uint64_t{1} << bit;
    ++bit;
  }
  return t;
}

TwoType TypeSpace::two_type_of(const Structure& s, int d, int e) const {
  if (d == e)
    throw SemanticError("2-types require distinct elements");
  TwoType t;
  t.tx = one_type_of(s, d);
  t.ty = one_type_of(s, e);
  int bit = 0;
  for (const auto& r : binary_) {
    if (s.holds(r, d, e)) t.cross |= std::uint64_t{1} << bit;
    ++bit;
    if (s.holds(r, e, d)) t.cross |= std::uint64_t{1} << bit;
    ++bit;
  }
  for (OrderSym o : orders_) {
    if (s.leq(o, d, e)) t.cross |= std::uint64_t{1} << bit;
    ++bit;
    if (s.leq(o, e, d)) t.cross |= std::uint64_t{1} << bit;
    ++bit;
  }
  return t;
}

Formula TypeSpace::one_type_formula(OneType t) const {
  std::vector<Formula> lits;
  int bit = 0;
  for (const auto& p : unary_) {
    Formula atom = Formula::pred(p, Var::X);
    lits.push_back((t.bits >> bit) & 1 ? atom : Formula::neg(atom));
    ++bit;
  }
  for (const auto& r : binary_) {
    Formula atom = Formula::pred(r, Var::X, Var::X);
    lits.push_back((t.bits >> bit) & 1 ? atom : Formula::neg(atom));
    ++bit;
  }
  for (OrderSym o : orders_)
    lits.push_back(Formula::order(o, Var::X, Var::X));
  if (lits.empty()) return Formula::equals(Var::X, Var::X);
  Formula f = lits[0];
  for (std::size_t i = 1; i < lits.size(); ++i) f = Formula::conj(f, lits[i]);
  return f;
}

Structure TypeSpace::one_element_structure(OneType t) const {
  Structure s;
  s.n = 1;
  int bit = 0;
  for (const auto& p : unary_) {
    auto& set = s.unary[p];
    if ((t.bits >> bit) & 1) set.insert(0);
    ++bit;
  }
  for (const auto& r : binary_) {
    auto& set = s.binary[r];
    if ((t.bits >> bit) & 1) set.insert({0, 0});
    ++bit;
  }
  for (OrderSym o : orders_) s.rankings[static_cast<int>(o)] = std::vector<int>{0};
  return s;
}

std::map<OneType, std::size_t> realization_counts(const Structure& s,
                                                  const TypeSpace& types) {
  std::map<OneType, std::size_t> counts;
  for (int d = 0; d < s.n; ++d) counts[types.one_type_of(s, d)]++;
  return counts;
}

}  // namespace oinv2
