#include "oinv2/search.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <thread>

#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"

namespace oinv2 {

namespace {

struct Atom {
  bool is_unary;
  int pred;  // index into the sorted name list
  int a;
  int b;  // binary only
};

// Atoms whose value becomes known when element k's stage completes: k's
// unary atoms, then per binary predicate the pairs with j < k in both
// directions, then the reflexive pair.
std::vector<std::vector<Atom>> build_stages(
    const std::vector<std::string>& unary,
    const std::vector<std::string>& binary, int n) {
  std::vector<std::vector<Atom>> stages(n);
  for (int k = 0; k < n; ++k) {
    for (int p = 0; p < static_cast<int>(unary.size()); ++p)
      stages[k].push_back({true, p, k, 0});
    for (int r = 0; r < static_cast<int>(binary.size()); ++r) {
      for (int j = 0; j < k; ++j) {
        stages[k].push_back({false, r, j, k});
        stages[k].push_back({false, r, k, j});
      }
      stages[k].push_back({false, r, k, k});
    }
  }
  return stages;
}

void split_rows(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Conn::And)) {
    split_rows(f.lhs(), out);
    split_rows(f.rhs(), out);
    return;
  }
  out.push_back(f);
}

bool mentions_any(const Formula& f, const std::set<std::string>& names) {
  switch (f.kind()) {
    case Conn::Pred:
      return names.count(f.pred_name()) != 0;
    case Conn::Eq:
    case Conn::Ord:
      return false;
    case Conn::Not:
    case Conn::Exists:
    case Conn::Forall:
      return mentions_any(f.child(), names);
    default:
      return mentions_any(f.lhs(), names) || mentions_any(f.rhs(), names);
  }
}

class StageSearch {
 public:
  StageSearch(const NormalForm& nf, int n) : nf_(nf), n_(n) {
    // Predicates carrying a recorded definition have no freedom: their rows
    // pin them to the defined value, so they are computed from the other
    // bits instead of being enumerated.
    for (const ScottDef& d : nf.defs) {
      auto it = nf.sig.predicates.find(d.name);
      if (it != nf.sig.predicates.end() && it->second == 1)
        derived_.insert(d.name);
    }
    for (const auto& [name, arity] : nf.sig.predicates) {
      if (derived_.count(name)) continue;
      if (arity == 1)
        unary_.push_back(name);
      else
        binary_.push_back(name);
    }
    std::vector<Formula> rows;
    split_rows(nf.chi0, rows);
    split_rows(nf.chi1, rows);
    for (const Formula& row : rows) {
      if (mentions_any(row, derived_))
        leaf_rows_.push_back(row);
      else
        stage_rows_.push_back(row);
    }
    stages_ = build_stages(unary_, binary_, n);
  }

  // Fills in predicate bits of s (orders already set) and reports the first
  // completion in false-first stage order that satisfies the sentence.
  bool run(Structure& s) {
    for (const auto& [name, arity] : nf_.sig.predicates) {
      if (arity == 1)
        s.unary[name].clear();
      else
        s.binary[name].clear();
    }
    return descend(s, 0, 0);
  }

 private:
  // Derived-free matrix rows hold on every pair as soon as both elements
  // have their bits; rows touching a derived predicate wait for the leaf.
  bool stage_ok(const Structure& s, int k) const {
    for (int j = 0; j <= k; ++j)
      for (const Formula& row : stage_rows_) {
        if (!holds_at(s, row, j, k)) return false;
        if (j != k && !holds_at(s, row, k, j)) return false;
      }
    return true;
  }

  void fill_derived(Structure& s) const {
    for (const ScottDef& d : nf_.defs) {
      if (!derived_.count(d.name)) continue;
      auto& interp = s.unary[d.name];
      interp.clear();
      for (int a = 0; a < n_; ++a) {
        bool value = !d.existential;
        for (int b = 0; b < n_; ++b)
          if (holds_at(s, d.body, a, b) == d.existential) {
            value = d.existential;
            break;
          }
        if (value) interp.insert(a);
      }
    }
  }

  bool leaf_ok(Structure& s) const {
    if (!derived_.empty()) {
      fill_derived(s);
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (const Formula& row : leaf_rows_)
            if (!holds_at(s, row, a, b)) return false;
    }
    return witnesses_ok(s);
  }

  bool witnesses_ok(const Structure& s) const {
    for (int a = 0; a < n_; ++a)
      for (int half = 0; half < 2; ++half)
        for (const Formula& g : nf_.gammas(half)) {
          bool found = false;
          for (int b = 0; b < n_; ++b)
            if (holds_at(s, g, a, b)) { found = true; break; }
          if (!found) return false;
        }
    return true;
  }

  bool descend(Structure& s, int stage, int idx) {
    if (stage == n_) return leaf_ok(s);
    if (idx == static_cast<int>(stages_[stage].size())) {
      if (!stage_ok(s, stage)) return false;
      return descend(s, stage + 1, 0);
    }
    const Atom& at = stages_[stage][idx];
    if (descend(s, stage, idx + 1)) return true;  // atom absent first
    if (at.is_unary) {
      auto& set = s.unary[unary_[at.pred]];
      set.insert(at.a);
      if (descend(s, stage, idx + 1)) return true;
      set.erase(at.a);
    } else {
      auto& set = s.binary[binary_[at.pred]];
      set.insert({at.a, at.b});
      if (descend(s, stage, idx + 1)) return true;
      set.erase({at.a, at.b});
    }
    return false;
  }

  const NormalForm& nf_;
  int n_;
  std::set<std::string> derived_;
  std::vector<std::string> unary_;
  std::vector<std::string> binary_;
  std::vector<Formula> stage_rows_;
  std::vector<Formula> leaf_rows_;
  std::vector<std::vector<Atom>> stages_;
};

// Lazily enumerates assignments of the non-pinned orders, each cycling
// through its rankings lexicographically, earlier orders outermost.
class RankingOdometer {
 public:
  RankingOdometer(const std::vector<OrderSym>& enumerated, int n)
      : syms_(enumerated), n_(n) {
    for (std::size_t i = 0; i < syms_.size(); ++i) {
      rankings_.emplace_back(n);
      std::iota(rankings_.back().begin(), rankings_.back().end(), 0);
    }
  }

  bool exhausted() const { return done_; }

  void install(Structure& s) const {
    for (std::size_t i = 0; i < syms_.size(); ++i)
      s.rankings[static_cast<int>(syms_[i])] = rankings_[i];
  }

  void advance() {
    for (std::size_t i = syms_.size(); i-- > 0;) {
      if (std::next_permutation(rankings_[i].begin(), rankings_[i].end()))
        return;
      // wrapped to the lexicographic minimum; carry into the next order
    }
    done_ = true;
  }

 private:
  std::vector<OrderSym> syms_;
  int n_;
  std::vector<std::vector<int>> rankings_;
  bool done_ = false;
};

Structure base_candidate(const NormalForm& nf, int n) {
  Structure s;
  s.n = n;
  for (const auto& [name, arity] : nf.sig.predicates) {
    if (arity == 1)
      s.unary[name];
    else
      s.binary[name];
  }
  if (nf.sig.orders.count(OrderSym::Leq0)) {
    std::vector<int> natural(n);
    std::iota(natural.begin(), natural.end(), 0);
    s.rankings[static_cast<int>(OrderSym::Leq0)] = std::move(natural);
  }
  return s;
}

std::vector<OrderSym> enumerated_orders(const NormalForm& nf) {
  std::vector<OrderSym> out;
  for (OrderSym o : {OrderSym::Leq, OrderSym::Leq1})
    if (nf.sig.orders.count(o)) out.push_back(o);
  return out;
}

std::optional<Structure> verify_and_box(const NormalForm& nf, Structure s) {
  if (!evaluate(s, nf.sentence()))
    throw InternalError("search produced a structure the checker rejects");
  return s;
}

std::optional<Structure> find_model_sequential(const NormalForm& nf, int n) {
  Structure base = base_candidate(nf, n);
  RankingOdometer odo(enumerated_orders(nf), n);
  StageSearch search(nf, n);
  while (!odo.exhausted()) {
    Structure s = base;
    odo.install(s);
    if (search.run(s)) return verify_and_box(nf, std::move(s));
    odo.advance();
  }
  return std::nullopt;
}

std::optional<Structure> find_model_parallel(const NormalForm& nf, int n,
                                             int jobs) {
  const Structure base = base_candidate(nf, n);
  RankingOdometer odo(enumerated_orders(nf), n);
  std::mutex mu;
  long long next_index = 0;
  std::optional<std::pair<long long, Structure>> best;

  auto worker = [&]() {
    StageSearch search(nf, n);
    while (true) {
      Structure s = base;
      long long index;
      {
        std::lock_guard<std::mutex> lock(mu);
        // Indices are dispensed in canonical order, so once a result at a
        // smaller index exists nothing still unclaimed can beat it.
        if (odo.exhausted()) return;
        if (best && best->first < next_index) return;
        index = next_index++;
        odo.install(s);
        odo.advance();
      }
      if (search.run(s)) {
        std::lock_guard<std::mutex> lock(mu);
        if (!best || index < best->first) best = {index, std::move(s)};
      }
    }
  };

  std::vector<std::thread> threads;
  for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (!best) return std::nullopt;
  return verify_and_box(nf, std::move(best->second));
}

}  // namespace

std::optional<Structure> find_model(const NormalForm& nf, int n,
                                    const SearchOptions& opts) {
  if (n < 1) throw SemanticError("model size must be at least 1");
  if (opts.jobs > 1) return find_model_parallel(nf, n, opts.jobs);
  return find_model_sequential(nf, n);
}

BoundedSearchResult find_model_up_to(const NormalForm& nf, int cap,
                                     const SearchOptions& opts) {
  if (cap < 1) throw SemanticError("search cap must be at least 1");
  BoundedSearchResult out;
  out.cap = cap;
  const SizeBound bound = size_bound(nf);
  out.complete = !bound.overflow &&
                 static_cast<std::uint64_t>(cap) >= bound.value;
  for (int n = 1; n <= cap; ++n) {
    auto m = find_model(nf, n, opts);
    if (m) {
      out.model = std::move(m);
      break;
    }
  }
  return out;
}

}  // namespace oinv2
