#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "oinv2/errors.hpp"

namespace oinv2 {

// The two object variables of the logic.
enum class Var : int { X = 0, Y = 1 };

inline Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }
inline const char* name_of(Var v) { return v == Var::X ? "x" : "y"; }

// Distinguished order symbols. Leq is the plain symbol, Leq0/Leq1 the
// two copies used when comparing order interpretations.
enum class OrderSym : int { Leq = 0, Leq0 = 1, Leq1 = 2 };

inline const char* token_of(OrderSym s) {
  switch (s) {
    case OrderSym::Leq: return "<=";
    case OrderSym::Leq0: return "<=0";
    case OrderSym::Leq1: return "<=1";
  }
  return "?";
}

inline const char* json_key_of(OrderSym s) {
  switch (s) {
    case OrderSym::Leq: return "leq";
    case OrderSym::Leq0: return "leq0";
    case OrderSym::Leq1: return "leq1";
  }
  return "?";
}

enum class Conn {
  Pred,   // P(x) or R(x,y)
  Eq,     // v = w
  Ord,    // v <= w, v <=0 w, v <=1 w
  Not,
  And,
  Or,
  Imp,
  Iff,
  Exists,
  Forall,
};

// Immutable formula tree with value semantics; copies share subtrees.
class Formula {
 public:
  static Formula pred(std::string name, Var v);
  static Formula pred(std::string name, Var v, Var w);
  static Formula equals(Var v, Var w);
  static Formula order(OrderSym s, Var v, Var w);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(Var v, Formula body);
  static Formula forall(Var v, Formula body);

  Conn kind() const { return node_->kind; }
  bool is(Conn c) const { return node_->kind == c; }

  // Pred accessors.
  const std::string& pred_name() const { return node_->name; }
  int arity() const { return node_->arity; }

  // First variable: Pred arg 0, Eq/Ord left side, quantified variable.
  Var var0() const { return node_->v0; }
  // Second variable: Pred arg 1, Eq/Ord right side.
  Var var1() const { return node_->v1; }

  OrderSym order_sym() const { return node_->ord; }

  Formula child() const { return Formula(node_->lhs); }  // Not, Exists, Forall
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node {
    Conn kind;
    std::string name;
    int arity = 0;
    Var v0 = Var::X;
    Var v1 = Var::X;
    OrderSym ord = OrderSym::Leq;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Signature {
  std::map<std::string, int> predicates;  // name -> arity (1 or 2)
  std::set<OrderSym> orders;              // distinguished symbols occurring

  bool operator==(const Signature&) const = default;
};

std::size_t node_count(const Formula& f);
bool quantifier_free(const Formula& f);
std::set<Var> free_variables(const Formula& f);
bool is_sentence(const Formula& f);

// Exchanges the roles of x and y everywhere, including quantifiers.
Formula swap_xy(const Formula& f);

// Replaces every plain <= with <=0 (target 0) or <=1 (target 1).
// Rejects formulas that already mention <=0 or <=1.
Formula substitute_order(const Formula& f, int target);

// Exactly the predicate names and distinguished symbols occurring in f.
// Throws SemanticError on inconsistent arities.
Signature signature_of(const Formula& f);

Formula parse(std::string_view text);
std::string render(const Formula& f);

}  // namespace oinv2
