#include "oinv2/shrink.hpp"

#include <algorithm>

#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"

namespace oinv2 {

namespace {

std::size_t rare_threshold(const NormalForm& nf) {
  return static_cast<std::size_t>(32) * nf.witness_width();
}

// Elements of one type sorted ascending by the given order's rank.
std::vector<int> by_rank(const Structure& s, std::vector<int> elems,
                         OrderSym o) {
  const auto& r = s.ranking(o);
  std::sort(elems.begin(), elems.end(),
            [&](int a, int b) { return r[a] < r[b]; });
  return elems;
}

void take_front(const std::vector<int>& sorted, std::size_t count,
                std::set<int>& into) {
  for (std::size_t i = 0; i < sorted.size() && i < count; ++i)
    into.insert(sorted[i]);
}

void take_back(const std::vector<int>& sorted, std::size_t count,
               std::set<int>& into) {
  for (std::size_t i = 0; i < sorted.size() && i < count; ++i)
    into.insert(sorted[sorted.size() - 1 - i]);
}

// One greedy witness-completion pass: every member of `over` that lacks a
// witness inside `inside` (plus earlier additions) gets its smallest-index
// witness from s. Returns the additions.
std::set<int> completion_pass(const Structure& s, const NormalForm& nf,
                              const std::vector<int>& over,
                              std::set<int> inside) {
  std::set<int> added;
  for (int d : over) {
    for (int half = 0; half < 2; ++half) {
      const auto& gammas = nf.gammas(half);
      for (std::size_t j = 0; j < gammas.size(); ++j) {
        const Formula& g = gammas[j];
        bool have = false;
        for (int e : inside)
          if (holds_at(s, g, d, e)) { have = true; break; }
        if (have) continue;
        int witness = -1;
        for (int e = 0; e < s.n; ++e)
          if (holds_at(s, g, d, e)) { witness = e; break; }
        if (witness < 0)
          throw InternalError("model lacks a witness it must have");
        inside.insert(witness);
        added.insert(witness);
      }
    }
  }
  return added;
}

}  // namespace

std::map<OneType, Rarity> classify_rare(const Structure& s,
                                        const NormalForm& nf) {
  validate(s, nf.sig);
  if (!evaluate(s, nf.sentence()))
    throw SemanticError("structure is not a model of the sentence");
  const std::size_t threshold = rare_threshold(nf);
  const TypeSpace types(nf.sig);
  std::map<OneType, Rarity> out;
  if (types.one_type_bits() <= 20)
    for (std::uint64_t t = 0; t < types.one_type_count(); ++t)
      out[OneType{t}] = Rarity::Rare;
  for (const auto& [t, count] : realization_counts(s, types))
    out[t] = count <= threshold ? Rarity::Rare : Rarity::NonRare;
  return out;
}

ShrinkReport shrink(const Structure& s, const NormalForm& nf) {
  validate(s, nf.sig);
  if (!evaluate(s, nf.sentence()))
    throw SemanticError("structure is not a model of the sentence");

  ShrinkReport report;
  report.input_size = static_cast<std::size_t>(s.n);

  const SizeBound bound = size_bound(nf);
  if (bound.overflow || static_cast<std::uint64_t>(s.n) <= bound.value) {
    report.output = s;
    report.early_exit = true;
    report.verified = true;  // the input itself, just model-checked
    return report;
  }

  if (!s.has_order(OrderSym::Leq0) || !s.has_order(OrderSym::Leq1))
    throw SemanticError("shrinking requires both order interpretations");

  const std::size_t m = static_cast<std::size_t>(nf.witness_width());
  const TypeSpace types(nf.sig);
  const std::size_t threshold = rare_threshold(nf);

  std::map<OneType, std::vector<int>> elements_of;
  for (int d = 0; d < s.n; ++d)
    elements_of[types.one_type_of(s, d)].push_back(d);

  std::set<int> rare_elems;
  std::map<OneType, std::array<std::vector<int>, 2>> sorted;  // by <=0, <=1
  for (const auto& [t, elems] : elements_of) {
    if (elems.size() <= threshold) {
      rare_elems.insert(elems.begin(), elems.end());
      continue;
    }
    sorted[t] = {by_rank(s, elems, OrderSym::Leq0),
                 by_rank(s, elems, OrderSym::Leq1)};
  }

  // S: rare elements plus the 8M extremes of each end; W0: rare elements
  // plus the M extremes of each end; W1 the band in between.
  std::set<int> big_s = rare_elems;
  std::set<int> w0 = rare_elems;
  for (const auto& [t, lists] : sorted) {
    for (const auto& list : lists) {
      take_front(list, 8 * m, big_s);
      take_back(list, 8 * m, big_s);
      take_front(list, m, w0);
      take_back(list, m, w0);
    }
  }
  std::set<int> w1;
  std::set_difference(big_s.begin(), big_s.end(), w0.begin(), w0.end(),
                      std::inserter(w1, w1.begin()));

  std::set<int> w2 = completion_pass(
      s, nf, std::vector<int>(big_s.begin(), big_s.end()), big_s);

  std::set<int> base = big_s;
  base.insert(w2.begin(), w2.end());
  std::set<int> w3 = completion_pass(
      s, nf, std::vector<int>(base.begin(), base.end()), base);

  std::set<int> keep = base;
  keep.insert(w3.begin(), w3.end());

  Structure b = restrict_to(s, keep);
  std::vector<int> old_of(keep.begin(), keep.end());
  std::vector<int> new_of(s.n, -1);
  for (std::size_t i = 0; i < old_of.size(); ++i)
    new_of[old_of[i]] = static_cast<int>(i);

  // Pools per non-rare type, drawn from w1 and consumed so the four are
  // disjoint: M minimal then M maximal by <=0, then the same by <=1.
  std::map<OneType, std::array<std::vector<int>, 4>> pools;
  for (const auto& [t, lists] : sorted) {
    std::set<int> avail;
    for (int e : lists[0])
      if (w1.count(e)) avail.insert(e);
    auto draw = [&](OrderSym o, bool from_min) {
      std::vector<int> candidates =
          by_rank(s, std::vector<int>(avail.begin(), avail.end()), o);
      if (!from_min) std::reverse(candidates.begin(), candidates.end());
      std::vector<int> pool;
      for (std::size_t i = 0; i < m && i < candidates.size(); ++i) {
        pool.push_back(candidates[i]);
        avail.erase(candidates[i]);
      }
      if (pool.size() < m) throw InternalError("witness pool exhausted");
      return pool;
    };
    pools[t] = {draw(OrderSym::Leq0, true), draw(OrderSym::Leq0, false),
                draw(OrderSym::Leq1, true), draw(OrderSym::Leq1, false)};
  }

  // Rewire w3 elements whose witnesses fell outside the restriction.
  for (int d : w3) {
    const int dn = new_of[d];
    for (int half = 0; half < 2; ++half) {
      const auto& gammas = nf.gammas(half);
      for (std::size_t j = 0; j < gammas.size(); ++j) {
        const Formula& g = gammas[j];
        bool have = false;
        for (int en = 0; en < b.n; ++en)
          if (holds_at(b, g, dn, en)) { have = true; break; }
        if (have) continue;
        int e = -1;
        for (int cand = 0; cand < s.n; ++cand)
          if (holds_at(s, g, d, cand)) { e = cand; break; }
        if (e < 0) throw InternalError("model lacks a witness it must have");
        const OneType alpha = types.one_type_of(s, e);
        auto pit = pools.find(alpha);
        if (pit == pools.end())
          throw InternalError("lost witness has a rare type");
        const OrderSym ord = half == 0 ? OrderSym::Leq0 : OrderSym::Leq1;
        const int k = s.leq(ord, e, d) ? 0 : 1;
        const std::vector<int>& pool = pit->second[2 * half + k];
        if (j >= pool.size()) throw InternalError("witness pool exhausted");
        const int ej = pool[j];
        const int ejn = new_of[ej];
        for (const auto& r : types.binary_names()) {
          auto& rel = b.binary[r];
          if (s.holds(r, d, e)) rel.insert({dn, ejn}); else rel.erase({dn, ejn});
          if (s.holds(r, e, d)) rel.insert({ejn, dn}); else rel.erase({ejn, dn});
        }
        report.rewired.push_back({d, e, ej, half, static_cast<int>(j)});
      }
    }
  }

  report.output = std::move(b);
  report.verified = evaluate(report.output, nf.sentence());
  report.w0.assign(w0.begin(), w0.end());
  report.w1.assign(w1.begin(), w1.end());
  report.w2.assign(w2.begin(), w2.end());
  report.w3.assign(w3.begin(), w3.end());
  report.pools = std::move(pools);
  return report;
}

}  // namespace oinv2
