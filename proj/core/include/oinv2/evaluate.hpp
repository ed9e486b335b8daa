#pragma once

#include <utility>
#include <vector>

#include "oinv2/formula.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

// True iff s satisfies the sentence f. Bottom-up over satisfying-pair sets,
// so each subformula costs O(n^2) and the whole evaluation O(|f| * n^2).
// Throws SemanticError for free variables at top level or symbols of f not
// interpreted in s; extra symbols in s are ignored.
bool evaluate(const Structure& s, const Formula& f);

// The assignments (value of x, value of y) making f true, sorted
// lexicographically. f may have free variables; a variable f never reads
// ranges over the whole universe.
std::vector<std::pair<int, int>> satisfying_pairs(const Structure& s,
                                                  const Formula& f);

// True iff f holds with x := a and y := b; same preconditions as evaluate
// except free variables are expected. Cheaper than satisfying_pairs when
// only one pair matters.
bool holds_at(const Structure& s, const Formula& f, int a, int b);

}  // namespace oinv2
