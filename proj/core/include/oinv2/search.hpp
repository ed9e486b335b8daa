#pragma once

#include <optional>

#include "oinv2/normal_form.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

struct SearchOptions {
  // Worker count for partitioning the candidate <=1 rankings. Any value
  // returns the same structure as jobs = 1: workers race but the minimal
  // candidate in canonical order wins.
  int jobs = 1;
};

// First size-n model of nf in canonical enumeration order, or nullopt.
// Canonical order: <=0 pinned to the natural ranking (every structure is
// isomorphic to one of this shape), <=1 rankings lexicographically, then
// predicate bits false-first in stage order; for each element k: its unary
// atoms (sorted predicates), then per sorted binary predicate R the atoms
// R(j,k), R(k,j) for j < k and finally R(k,k). Completing element k's stage
// decides every atom among {0..k}, so the universal matrix is enforced on
// all pairs involving k right there and failing branches die early. Witness
// obligations are checked at full assignments; the winner is re-verified
// with the model checker before being returned.
//
// Predicates carrying a recorded definition in nf.defs are not enumerated:
// their matrix rows force them to the defined value, so each candidate gets
// them computed from its other bits, and only rows free of them prune at
// stage boundaries. With an empty defs list every bit is enumerated.
std::optional<Structure> find_model(const NormalForm& nf, int n,
                                    const SearchOptions& opts = {});

struct BoundedSearchResult {
  std::optional<Structure> model;  // smallest-universe model found
  int cap = 0;
  // True when cap covers the small-model threshold, making an empty result
  // a complete unsatisfiability verdict rather than "none up to cap".
  bool complete = false;
};

// Tries n = 1..cap ascending and stops at the first model.
BoundedSearchResult find_model_up_to(const NormalForm& nf, int cap,
                                     const SearchOptions& opts = {});

}  // namespace oinv2
