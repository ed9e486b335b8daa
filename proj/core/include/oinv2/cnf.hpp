#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oinv2/normal_form.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

// What a propositional variable stands for.
struct GroundAtom {
  enum class Kind { Unary, Binary, Order, Aux };
  Kind kind = Kind::Aux;
  std::string pred;           // Unary/Binary
  OrderSym ord = OrderSym::Leq0;  // Order
  int a = 0;
  int b = 0;                  // Binary/Order second element
  int aux = 0;                // Aux sequence number

  std::string text() const;   // "P(0)", "R(0,1)", "o0(0,1)", "aux3"
  bool operator==(const GroundAtom&) const = default;
};

struct CnfInstance {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;  // signed DIMACS literals
  std::vector<GroundAtom> decode;         // decode[v-1] for variable v
  int n = 0;
  Signature sig;
};

// Compiles "nf has a model of size n" to CNF. Variable order: unary atoms
// (predicate-major, sorted names), binary atoms (row-major pairs), order
// facts o_i(a,b) per signature order, then Tseitin auxiliaries in creation
// order. Clause order: linear-order axioms per order (reflexivity,
// antisymmetry, transitivity, totality), then per ordered pair (a,b) the
// Tseitin grounding of chi0 & chi1, then per element and per gamma a
// witness clause over all candidate witnesses, then unit clauses pinning
// <=0 to the natural ranking. A grounded constant-false obligation becomes
// an intentional empty clause. Throws SemanticError when the ground atom
// count exceeds var_budget.
CnfInstance ground_to_cnf(const NormalForm& nf, int n,
                          int var_budget = 1 << 22);

// Standard DIMACS with `c map <var> <atom>` comments carrying the decode
// table; byte-stable for fixed input.
void write_dimacs(const CnfInstance& c, std::ostream& out);

// Plain DPLL: unit propagation, branch on the lowest-index unassigned
// variable, true first. Unconstrained variables come back false, so an
// empty clause list yields the all-false assignment. nullopt means
// unsatisfiable. assignment[v-1] is the value of variable v.
std::optional<std::vector<bool>> solve_cnf(const CnfInstance& c);

// Rebuilds the structure a satisfying assignment describes. Rankings are
// recovered from the order facts; the axioms make that well defined, and a
// non-reconstructible ranking raises InternalError.
Structure decode_structure(const CnfInstance& c,
                           const std::vector<bool>& assignment);

}  // namespace oinv2
