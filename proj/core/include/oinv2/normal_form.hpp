#pragma once

#include <cstdint>
#include <vector>

#include "oinv2/formula.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

// One fresh helper predicate and the quantified subformula it names:
// name(x) stands for "exists y. body" or "forall y. body".
struct ScottDef {
  std::string name;
  bool existential = false;
  // Quantifier-free over subject x and bound y.
  Formula body = Formula::equals(Var::X, Var::X);
};

// The two-order normal form: for each half i, a universal matrix chi_i and
// witness matrices gamma_i^j, all quantifier-free over x,y, with the order
// of half i absent from the other half. Render of the full sentence:
//   forall^2 chi0 & forall-exists gamma0^j ... & forall^2 chi1 & ...
struct NormalForm {
  // Both matrices default to the vacuous x = x.
  Formula chi0 = Formula::equals(Var::X, Var::X);
  Formula chi1 = Formula::equals(Var::X, Var::X);
  std::vector<Formula> gamma0;
  std::vector<Formula> gamma1;
  Signature sig;  // extended signature; contains the input's signature
  // Helper definitions in creation order; each body mentions only input
  // symbols and earlier helpers.
  std::vector<ScottDef> defs;

  int m0() const { return static_cast<int>(gamma0.size()); }
  int m1() const { return static_cast<int>(gamma1.size()); }
  // max(m0, m1) floored at 1 so degenerate inputs still yield usable
  // thresholds and search caps.
  int witness_width() const;

  const Formula& chi(int half) const { return half == 0 ? chi0 : chi1; }
  const std::vector<Formula>& gammas(int half) const {
    return half == 0 ? gamma0 : gamma1;
  }

  // forall x. forall y. (chi0 & chi1), the per-pair obligation.
  Formula pair_matrix() const;
  // The full sentence in the fixed conjunct order (half 0 then half 1).
  Formula sentence() const;
};

// Normal form of phi[<= := <=0] & !(phi[<= := <=1]) for an FO^2 sentence
// phi over the plain <= only. Quantified subformulas are replaced innermost
// first by fresh unary predicates _S0, _S1, ... shared across both halves;
// the defining conjuncts land in chi/gamma of the owning half. Every model
// of the result reducts to a model of the input over the input's signature,
// and every model of the input expands to one of the result on the same
// universe. Deterministic: equal inputs give byte-identical renders.
NormalForm normalize(const Formula& phi);

struct SizeBound {
  std::uint64_t m = 1;        // max(m0, m1, 1)
  int one_type_bits = 0;      // free literal count per 1-type
  bool overflow = false;      // 224 * m^3 * 2^one_type_bits beyond uint64
  std::uint64_t value = 0;    // meaningful when !overflow
  std::uint64_t sentence_size = 0;  // node count of the full sentence
  bool coarse_overflow = false;
  std::uint64_t coarse = 0;   // 224 * size^3 * 2^size, usually overflowed
};

// The small-model threshold 224 * M^3 * |alpha| over the extended
// signature, with the coarser sentence-size form alongside. A search that
// reaches this many elements without finding a model has a complete
// unsatisfiability verdict.
SizeBound size_bound(const NormalForm& nf);

// Interprets each helper predicate by its definition, innermost first,
// over a structure that carries the input symbols. Helpers the structure
// already interprets are left untouched. A model of the pre-normalization
// sentence expands this way into a model of nf's sentence.
Structure expand_with_definitions(const NormalForm& nf, const Structure& base);

}  // namespace oinv2
