#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include "oinv2/normal_form.hpp"
#include "oinv2/structure.hpp"

namespace oinv2 {

enum class Rarity { Rare, NonRare };

// A 1-type is rare in s when it has at most 32 * witness_width realizations;
// unrealized types are rare with count zero. The map covers every 1-type of
// the signature while their number is enumerable (up to 2^20); for larger
// signatures it lists realized types only, absence then meaning rare.
// Precondition: s is a verified model of nf's sentence.
std::map<OneType, Rarity> classify_rare(const Structure& s,
                                        const NormalForm& nf);

// One rewired witness obligation: subject kept its conjunct satisfied by
// redirecting it from old_witness (lost in the restriction) to new_witness,
// copying the non-order binary atoms of (subject, old_witness) onto
// (subject, new_witness) in both directions. Elements are original labels.
struct RewireEntry {
  int subject = 0;
  int old_witness = 0;
  int new_witness = 0;
  int half = 0;
  int conjunct = 0;  // index into gammas(half)
};

struct ShrinkReport {
  std::size_t input_size = 0;
  Structure output;
  bool early_exit = false;  // input already within the bound, returned as is
  bool verified = false;    // model check of output against the sentence

  // Original element labels, each vector sorted ascending.
  std::vector<int> w0, w1, w2, w3;
  // Per non-rare type: the four pairwise-disjoint pools drawn from w1,
  // [0] minimal and [1] maximal w.r.t. <=0, [2] minimal and [3] maximal
  // w.r.t. <=1, each listed in draw order.
  std::map<OneType, std::array<std::vector<int>, 4>> pools;
  std::vector<RewireEntry> rewired;
};

// Shrinks a model of nf to one of size at most 224 * M^3 * |alpha| while
// keeping modelhood, M being witness_width and |alpha| the 1-type count of
// the extended signature. Inputs already within the bound come back
// unchanged. Otherwise: keep all rare elements plus, per non-rare type, the
// 8M extremes of each order end (that set is S); w0 is the rare elements
// plus the M extremes per end, w1 = S minus w0; w2 then w3 greedily
// complete witnesses (smallest-index witness from s when one is missing);
// the output universe is the restriction to w0..w3; per non-rare type four
// disjoint M-element pools are drawn from w1 extremes; every w3 element
// with a lost witness is rewired to the conjunct-indexed pool element on
// the matching side of the subject. The result is model-checked and the
// verdict recorded, never assumed.
// Requires both orders interpreted in s and s verified as a model; pool
// exhaustion would contradict the counting behind the construction and
// raises InternalError.
ShrinkReport shrink(const Structure& s, const NormalForm& nf);

}  // namespace oinv2
