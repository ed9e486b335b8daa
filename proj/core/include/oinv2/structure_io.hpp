#pragma once

#include <string>

#include "oinv2/shrink.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

// Reads the JSON structure format:
//   { "n": 2, "unary": {"P": [0]}, "binary": {"R": [[0,1]]},
//     "orders": {"leq0": [0,1], "leq1": [1,0]} }
// "unary"/"binary"/"orders" may be absent or partial; order keys are "leq",
// "leq0", "leq1", each a ranking. Malformed input raises ParseError, range
// or bijection violations SemanticError.
Structure structure_from_json(const std::string& text);

// Canonical serialization: keys n, unary, binary, orders always present and
// in that sequence, predicate names sorted, element lists ascending, pair
// lists lexicographic, two-space indent, trailing newline. Byte-identical
// for equal structures.
std::string structure_to_json(const Structure& s);

// The structure serialization with a "report" object holding input size,
// the w-sets, pools keyed by the rendered 1-type formula, the rewiring log
// and the flags.
std::string shrink_report_to_json(const ShrinkReport& r,
                                  const TypeSpace& types);

}  // namespace oinv2
