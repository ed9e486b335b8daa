#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oinv2/formula.hpp"

namespace oinv2 {

// Finite relational structure over universe {0..n-1}. Linear orders are
// stored as rankings: rank[a] <= rank[b] means a is below-or-equal b.
// Linearity is an invariant of the representation, never a runtime check.
struct Structure {
  int n = 0;
  std::map<std::string, std::set<int>> unary;
  std::map<std::string, std::set<std::pair<int, int>>> binary;
  // Indexed by static_cast<int>(OrderSym).
  std::array<std::optional<std::vector<int>>, 3> rankings;

  bool has_order(OrderSym s) const {
    return rankings[static_cast<int>(s)].has_value();
  }
  const std::vector<int>& ranking(OrderSym s) const;
  // rank(a) <= rank(b); requires the order to be interpreted.
  bool leq(OrderSym s, int a, int b) const;
  bool holds(const std::string& unary_pred, int a) const;
  bool holds(const std::string& binary_pred, int a, int b) const;

  bool operator==(const Structure& o) const = default;
};

// Checks every Structure invariant and that the interpretations match sig
// exactly (orders present iff listed). Throws SemanticError with a distinct
// message per violation.
void validate(const Structure& s, const Signature& sig);

// Substructure induced by `keep`: universe relabeled to {0..|keep|-1}
// preserving the order of original indices; rankings re-ranked preserving
// relative order. Throws SemanticError on empty or out-of-range keep.
Structure restrict_to(const Structure& s, const std::set<int>& keep);

// 1-type: canonical bit-encoded literal set over the atoms about a single
// element. Bit layout (bit 0 first): unary predicates in sorted name order,
// then R(x,x) for non-order binary predicates in sorted name order.
// Reflexive order atoms are always positive and carry no bit.
struct OneType {
  std::uint64_t bits = 0;
  auto operator<=>(const OneType&) const = default;
};

// 2-type of an ordered pair of distinct elements: the two 1-types plus
// cross literals. Cross bit layout: per non-order binary predicate R in
// sorted name order, bit 2r = R(x,y), bit 2r+1 = R(y,x); then per order in
// enum order, bit 2b+2o = o(x,y), bit 2b+2o+1 = o(y,x). The x != y literal
// is implicit and always negative equality.
struct TwoType {
  OneType tx;
  OneType ty;
  std::uint64_t cross = 0;
  auto operator<=>(const TwoType&) const = default;
};

// Fixes the atom/bit correspondence for a signature so types are canonical.
class TypeSpace {
 public:
  explicit TypeSpace(const Signature& sig);

  const std::vector<std::string>& unary_names() const { return unary_; }
  const std::vector<std::string>& binary_names() const { return binary_; }
  const std::vector<OrderSym>& order_syms() const { return orders_; }

  int one_type_bits() const {
    return static_cast<int>(unary_.size() + binary_.size());
  }
  int cross_bits() const {
    return static_cast<int>(2 * (binary_.size() + orders_.size()));
  }
  // 2^one_type_bits(); throws InternalError beyond 63 bits.
  std::uint64_t one_type_count() const;

  OneType one_type_of(const Structure& s, int d) const;
  TwoType two_type_of(const Structure& s, int d, int e) const;

  // Conjunction of the type's literals over x, reflexive order atoms
  // included positively; the empty-atom type renders as x = x.
  Formula one_type_formula(OneType t) const;

  // The unique 1-element structure realizing t; orders of the signature are
  // interpreted by the trivial ranking [0].
  Structure one_element_structure(OneType t) const;

 private:
  std::vector<std::string> unary_;
  std::vector<std::string> binary_;
  std::vector<OrderSym> orders_;
};

// Realization counts per 1-type; types with zero realizations are absent.
std::map<OneType, std::size_t> realization_counts(const Structure& s,
                                                  const TypeSpace& types);

}  // namespace oinv2
