#include "oinv2/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>

#include "oinv2/errors.hpp"

namespace oinv2 {

std::string GroundAtom::text() const {
  switch (kind) {
    case Kind::Unary:
      return pred + "(" + std::to_string(a) + ")";
    case Kind::Binary:
      return pred + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::Order: {
      const char* name = ord == OrderSym::Leq ? "o" : ord == OrderSym::Leq0 ? "o0" : "o1";
      return std::string(name) + "(" + std::to_string(a) + "," +
             std::to_string(b) + ")";
    }
    case Kind::Aux:
      return "aux" + std::to_string(aux);
  }
  return "?";
}

namespace {

// Propositional literal during grounding: a DIMACS literal or a constant.
struct Lit {
  enum class Kind { Var, True, False } kind;
  int lit = 0;  // signed, Kind::Var only

  static Lit of(int l) { return {Kind::Var, l}; }
  static Lit constant(bool b) { return {b ? Kind::True : Kind::False, 0}; }
  Lit negated() const {
    if (kind == Kind::Var) return {kind, -lit};
    return {kind == Kind::True ? Kind::False : Kind::True, 0};
  }
};

class Grounder {
 public:
  Grounder(const NormalForm& nf, int n, int var_budget)
      : nf_(nf), n_(n), types_(nf.sig) {
    if (n < 1) throw SemanticError("universe must be non-empty");
    std::size_t ground_vars = 0;
    ground_vars += types_.unary_names().size() * static_cast<std::size_t>(n);
    ground_vars += (types_.binary_names().size() + types_.order_syms().size()) *
                   static_cast<std::size_t>(n) * n;
    if (ground_vars > static_cast<std::size_t>(var_budget))
      throw SemanticError("ground atom count " + std::to_string(ground_vars) +
                          " exceeds the variable budget " +
                          std::to_string(var_budget));
    for (const auto& p : types_.unary_names())
      for (int a = 0; a < n; ++a) {
        unary_var_[{p, a}] = next_var();
        inst_.decode.push_back({GroundAtom::Kind::Unary, p, OrderSym::Leq0, a, 0, 0});
      }
    for (const auto& r : types_.binary_names())
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          binary_var_[{r, {a, b}}] = next_var();
          inst_.decode.push_back({GroundAtom::Kind::Binary, r, OrderSym::Leq0, a, b, 0});
        }
    for (OrderSym o : types_.order_syms())
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          order_var_[{static_cast<int>(o), {a, b}}] = next_var();
          inst_.decode.push_back({GroundAtom::Kind::Order, "", o, a, b, 0});
        }
  }

  CnfInstance run() {
    for (OrderSym o : types_.order_syms()) emit_order_axioms(o);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        assert_formula(nf_.chi0, a, b);
        assert_formula(nf_.chi1, a, b);
      }
    for (int a = 0; a < n_; ++a)
      for (int half = 0; half < 2; ++half)
        for (const Formula& g : nf_.gammas(half)) emit_witness_clause(g, a);
    if (std::find(types_.order_syms().begin(), types_.order_syms().end(),
                  OrderSym::Leq0) != types_.order_syms().end())
      emit_symmetry_breaking();
    inst_.var_count = var_count_;
    inst_.n = n_;
    inst_.sig = nf_.sig;
    return std::move(inst_);
  }

 private:
  int next_var() { return ++var_count_; }

  int order_lit(OrderSym o, int a, int b) {
    return order_var_.at({static_cast<int>(o), {a, b}});
  }

  void add_clause(std::vector<int> c) { inst_.clauses.push_back(std::move(c)); }

  void emit_order_axioms(OrderSym o) {
    for (int a = 0; a < n_; ++a) add_clause({order_lit(o, a, a)});
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        add_clause({-order_lit(o, a, b), -order_lit(o, b, a)});
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
          if (a == b || b == c || a == c) continue;
          add_clause({-order_lit(o, a, b), -order_lit(o, b, c),
                      order_lit(o, a, c)});
        }
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        add_clause({order_lit(o, a, b), order_lit(o, b, a)});
  }

  void emit_symmetry_breaking() {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        add_clause({a <= b ? order_lit(OrderSym::Leq0, a, b)
                           : -order_lit(OrderSym::Leq0, a, b)});
  }

  Lit atom_lit(const Formula& f, int a, int b) {
    switch (f.kind()) {
      case Conn::Pred: {
        const int first = f.var0() == Var::X ? a : b;
        if (f.arity() == 1) return Lit::of(unary_var_.at({f.pred_name(), first}));
        const int second = f.var1() == Var::X ? a : b;
        return Lit::of(binary_var_.at({f.pred_name(), {first, second}}));
      }
      case Conn::Eq: {
        const int first = f.var0() == Var::X ? a : b;
        const int second = f.var1() == Var::X ? a : b;
        return Lit::constant(first == second);
      }
      case Conn::Ord: {
        const int first = f.var0() == Var::X ? a : b;
        const int second = f.var1() == Var::X ? a : b;
        return Lit::of(order_lit(f.order_sym(), first, second));
      }
      default:
        throw InternalError("atom_lit: not an atom");
    }
  }

  // Tseitin translation with constant folding; emits defining clauses for
  // fresh auxiliaries and returns the literal equal to f at (a, b).
  Lit tseitin(const Formula& f, int a, int b) {
    switch (f.kind()) {
      case Conn::Pred:
      case Conn::Eq:
      case Conn::Ord:
        return atom_lit(f, a, b);
      case Conn::Not:
        return tseitin(f.child(), a, b).negated();
      case Conn::And:
      case Conn::Or:
      case Conn::Imp:
      case Conn::Iff: {
        Lit l = tseitin(f.lhs(), a, b);
        Lit r = tseitin(f.rhs(), a, b);
        if (f.is(Conn::Imp)) { l = l.negated(); }
        if (f.is(Conn::And) || f.is(Conn::Or) || f.is(Conn::Imp)) {
          const bool is_and = f.is(Conn::And);
          // De Morgan: treat Imp/Or uniformly as Or.
          if (l.kind != Lit::Kind::Var)
            return (l.kind == Lit::Kind::True) == is_and ? r : l;
          if (r.kind != Lit::Kind::Var)
            return (r.kind == Lit::Kind::True) == is_and ? l : r;
          const int v = fresh_aux();
          if (is_and) {
            add_clause({-v, l.lit});
            add_clause({-v, r.lit});
            add_clause({v, -l.lit, -r.lit});
          } else {
            add_clause({-v, l.lit, r.lit});
            add_clause({v, -l.lit});
            add_clause({v, -r.lit});
          }
          return Lit::of(v);
        }
        // Iff.
        if (l.kind != Lit::Kind::Var)
          return l.kind == Lit::Kind::True ? r : r.negated();
        if (r.kind != Lit::Kind::Var)
          return r.kind == Lit::Kind::True ? l : l.negated();
        const int v = fresh_aux();
        add_clause({-v, -l.lit, r.lit});
        add_clause({-v, l.lit, -r.lit});
        add_clause({v, l.lit, r.lit});
        add_clause({v, -l.lit, -r.lit});
        return Lit::of(v);
      }
      case Conn::Exists:
      case Conn::Forall:
        throw InternalError("grounding requires quantifier-free matrices");
    }
    throw InternalError("tseitin: unreachable");
  }

  int fresh_aux() {
    const int v = next_var();
    inst_.decode.push_back(
        {GroundAtom::Kind::Aux, "", OrderSym::Leq0, 0, 0, aux_count_++});
    return v;
  }

  void assert_formula(const Formula& f, int a, int b) {
    Lit l = tseitin(f, a, b);
    if (l.kind == Lit::Kind::True) return;
    if (l.kind == Lit::Kind::False) {
      add_clause({});  // intentionally unsatisfiable
      return;
    }
    add_clause({l.lit});
  }

  void emit_witness_clause(const Formula& g, int a) {
    std::vector<int> clause;
    for (int b = 0; b < n_; ++b) {
      Lit l = tseitin(g, a, b);
      if (l.kind == Lit::Kind::True) return;  // witnessed for free
      if (l.kind == Lit::Kind::False) continue;
      clause.push_back(l.lit);
    }
    add_clause(std::move(clause));  // may be empty: no witness possible
  }

  const NormalForm& nf_;
  int n_;
  TypeSpace types_;
  CnfInstance inst_;
  int var_count_ = 0;
  int aux_count_ = 0;
  std::map<std::pair<std::string, int>, int> unary_var_;
  std::map<std::pair<std::string, std::pair<int, int>>, int> binary_var_;
  std::map<std::pair<int, std::pair<int, int>>, int> order_var_;
};

}  // namespace

CnfInstance ground_to_cnf(const NormalForm& nf, int n, int var_budget) {
  return Grounder(nf, n, var_budget).run();
}

void write_dimacs(const CnfInstance& c, std::ostream& out) {
  for (int v = 1; v <= c.var_count; ++v)
    out << "c map " << v << " " << c.decode[v - 1].text() << "\n";
  out << "p cnf " << c.var_count << " " << c.clauses.size() << "\n";
  for (const auto& clause : c.clauses) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
}

namespace {

// -1 unassigned. Returns false on conflict.
bool unit_propagate(const CnfInstance& c, std::vector<signed char>& assign) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : c.clauses) {
      int unassigned = 0;
      int free_lit = 0;
      bool satisfied = false;
      for (int lit : clause) {
        const int v = std::abs(lit);
        const signed char a = assign[v - 1];
        if (a < 0) {
          ++unassigned;
          free_lit = lit;
        } else if ((a == 1) == (lit > 0)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        assign[std::abs(free_lit) - 1] = free_lit > 0 ? 1 : 0;
        changed = true;
      }
    }
  }
  return true;
}

bool all_satisfied(const CnfInstance& c, const std::vector<signed char>& assign) {
  for (const auto& clause : c.clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      const signed char a = assign[std::abs(lit) - 1];
      if (a >= 0 && (a == 1) == (lit > 0)) { satisfied = true; break; }
    }
    if (!satisfied) return false;
  }
  return true;
}

bool dpll(const CnfInstance& c, std::vector<signed char>& assign) {
  if (!unit_propagate(c, assign)) return false;
  // Unconstrained variables stay unassigned and default to false, so a
  // clause-free instance yields the all-false assignment.
  if (all_satisfied(c, assign)) return true;
  int branch = -1;
  for (int v = 0; v < c.var_count; ++v)
    if (assign[v] < 0) { branch = v; break; }
  if (branch < 0) return true;
  for (signed char value : {static_cast<signed char>(1), static_cast<signed char>(0)}) {
    std::vector<signed char> saved = assign;
    assign[branch] = value;
    if (dpll(c, assign)) return true;
    assign = std::move(saved);
  }
  return false;
}

}  // namespace

std::optional<std::vector<bool>> solve_cnf(const CnfInstance& c) {
  std::vector<signed char> assign(c.var_count, -1);
  if (!dpll(c, assign)) return std::nullopt;
  std::vector<bool> out(c.var_count, false);
  for (int v = 0; v < c.var_count; ++v) out[v] = assign[v] == 1;
  return out;
}

Structure decode_structure(const CnfInstance& c,
                           const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(c.var_count))
    throw SemanticError("assignment length does not match variable count");
  Structure s;
  s.n = c.n;
  TypeSpace types(c.sig);
  for (const auto& p : types.unary_names()) s.unary[p];
  for (const auto& r : types.binary_names()) s.binary[r];
  std::map<int, std::vector<int>> below_count;  // order -> per-element count
  for (OrderSym o : types.order_syms())
    below_count[static_cast<int>(o)] = std::vector<int>(c.n, 0);
  for (int v = 1; v <= c.var_count; ++v) {
    if (!assignment[v - 1]) continue;
    const GroundAtom& g = c.decode[v - 1];
    switch (g.kind) {
      case GroundAtom::Kind::Unary:
        s.unary[g.pred].insert(g.a);
        break;
      case GroundAtom::Kind::Binary:
        s.binary[g.pred].insert({g.a, g.b});
        break;
      case GroundAtom::Kind::Order:
        // a <= b contributes to how many elements sit at or above a.
        below_count[static_cast<int>(g.ord)][g.a]++;
        break;
      case GroundAtom::Kind::Aux:
        break;
    }
  }
  for (auto& [oi, counts] : below_count) {
    // rank(a) = n - |{b : a <= b}|; the axioms make this a bijection.
    std::vector<int> rank(c.n);
    std::vector<bool> seen(c.n, false);
    for (int a = 0; a < c.n; ++a) {
      const int r = c.n - counts[a];
      if (r < 0 || r >= c.n || seen[r])
        throw InternalError("order facts do not describe a linear order");
      rank[a] = r;
      seen[r] = true;
    }
    s.rankings[oi] = std::move(rank);
  }
  return s;
}

}  // namespace oinv2
