#include "oinv2/formula.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace oinv2 {

Formula Formula::pred(std::string name, Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Pred;
  n->name = std::move(name);
  n->arity = 1;
  n->v0 = v;
  return Formula(std::move(n));
}

Formula Formula::pred(std::string name, Var v, Var w) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Pred;
  n->name = std::move(name);
  n->arity = 2;
  n->v0 = v;
  n->v1 = w;
  return Formula(std::move(n));
}

Formula Formula::equals(Var v, Var w) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Eq;
  n->v0 = v;
  n->v1 = w;
  return Formula(std::move(n));
}

Formula Formula::order(OrderSym s, Var v, Var w) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Ord;
  n->ord = s;
  n->v0 = v;
  n->v1 = w;
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Not;
  n->lhs = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::And;
  n->lhs = std::move(a.node_);
  n->rhs = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Or;
  n->lhs = std::move(a.node_);
  n->rhs = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::imp(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Imp;
  n->lhs = std::move(a.node_);
  n->rhs = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Iff;
  n->lhs = std::move(a.node_);
  n->rhs = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::exists(Var v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Exists;
  n->v0 = v;
  n->lhs = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::forall(Var v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Forall;
  n->v0 = v;
  n->lhs = std::move(body.node_);
  return Formula(std::move(n));
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Conn::Pred:
      return a.name == b.name && a.arity == b.arity && a.v0 == b.v0 &&
             (a.arity == 1 || a.v1 == b.v1);
    case Conn::Eq:
      return a.v0 == b.v0 && a.v1 == b.v1;
    case Conn::Ord:
      return a.ord == b.ord && a.v0 == b.v0 && a.v1 == b.v1;
    case Conn::Not:
      return Formula(a.lhs) == Formula(b.lhs);
    case Conn::Exists:
    case Conn::Forall:
      return a.v0 == b.v0 && Formula(a.lhs) == Formula(b.lhs);
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
    case Conn::Iff:
      return Formula(a.lhs) == Formula(b.lhs) && Formula(a.rhs) == Formula(b.rhs);
  }
  return false;
}

std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case Conn::Pred:
    case Conn::Eq:
    case Conn::Ord:
      return 1;
    case Conn::Not:
    case Conn::Exists:
    case Conn::Forall:
      return 1 + node_count(f.child());
    default:
      return 1 + node_count(f.lhs()) + node_count(f.rhs());
  }
}

bool quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case Conn::Pred:
    case Conn::Eq:
    case Conn::Ord:
      return true;
    case Conn::Not:
      return quantifier_free(f.child());
    case Conn::Exists:
    case Conn::Forall:
      return false;
    default:
      return quantifier_free(f.lhs()) && quantifier_free(f.rhs());
  }
}

std::set<Var> free_variables(const Formula& f) {
  switch (f.kind()) {
    case Conn::Pred:
      if (f.arity() == 1) return {f.var0()};
      return {f.var0(), f.var1()};
    case Conn::Eq:
    case Conn::Ord:
      return {f.var0(), f.var1()};
    case Conn::Not:
      return free_variables(f.child());
    case Conn::Exists:
    case Conn::Forall: {
      auto fv = free_variables(f.child());
      fv.erase(f.var0());
      return fv;
    }
    default: {
      auto fv = free_variables(f.lhs());
      auto rv = free_variables(f.rhs());
      fv.insert(rv.begin(), rv.end());
      return fv;
    }
  }
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

Formula swap_xy(const Formula& f) {
  auto sw = [](Var v) { return other(v); };
  switch (f.kind()) {
    case Conn::Pred:
      if (f.arity() == 1) return Formula::pred(f.pred_name(), sw(f.var0()));
      return Formula::pred(f.pred_name(), sw(f.var0()), sw(f.var1()));
    case Conn::Eq:
      return Formula::equals(sw(f.var0()), sw(f.var1()));
    case Conn::Ord:
      return Formula::order(f.order_sym(), sw(f.var0()), sw(f.var1()));
    case Conn::Not:
      return Formula::neg(swap_xy(f.child()));
    case Conn::Exists:
      return Formula::exists(sw(f.var0()), swap_xy(f.child()));
    case Conn::Forall:
      return Formula::forall(sw(f.var0()), swap_xy(f.child()));
    case Conn::And:
      return Formula::conj(swap_xy(f.lhs()), swap_xy(f.rhs()));
    case Conn::Or:
      return Formula::disj(swap_xy(f.lhs()), swap_xy(f.rhs()));
    case Conn::Imp:
      return Formula::imp(swap_xy(f.lhs()), swap_xy(f.rhs()));
    case Conn::Iff:
      return Formula::iff(swap_xy(f.lhs()), swap_xy(f.rhs()));
  }
  throw InternalError("swap_xy: unreachable");
}

Formula substitute_order(const Formula& f, int target) {
  if (target != 0 && target != 1)
    throw SemanticError("order substitution target must be 0 or 1");
  const OrderSym to = target == 0 ? OrderSym::Leq0 : OrderSym::Leq1;
  switch (f.kind()) {
    case Conn::Pred:
      return f;
    case Conn::Eq:
      return f;
    case Conn::Ord:
      if (f.order_sym() != OrderSym::Leq)
        throw SemanticError(
            "order substitution requires a formula over the plain <= only; "
            "found " +
            std::string(token_of(f.order_sym())));
      return Formula::order(to, f.var0(), f.var1());
    case Conn::Not:
      return Formula::neg(substitute_order(f.child(), target));
    case Conn::Exists:
      return Formula::exists(f.var0(), substitute_order(f.child(), target));
    case Conn::Forall:
      return Formula::forall(f.var0(), substitute_order(f.child(), target));
    case Conn::And:
      return Formula::conj(substitute_order(f.lhs(), target),
                           substitute_order(f.rhs(), target));
    case Conn::Or:
      return Formula::disj(substitute_order(f.lhs(), target),
                           substitute_order(f.rhs(), target));
    case Conn::Imp:
      return Formula::imp(substitute_order(f.lhs(), target),
                          substitute_order(f.rhs(), target));
    case Conn::Iff:
      return Formula::iff(substitute_order(f.lhs(), target),
                          substitute_order(f.rhs(), target));
  }
  throw InternalError("substitute_order: unreachable");
}

namespace {

void collect_signature(const Formula& f, Signature& sig) {
  switch (f.kind()) {
    case Conn::Pred: {
      auto [it, inserted] = sig.predicates.emplace(f.pred_name(), f.arity());
      if (!inserted && it->second != f.arity())
        throw SemanticError("arity conflict: predicate '" + f.pred_name() +
                            "' used with arity " + std::to_string(f.arity()) +
                            " and " + std::to_string(it->second));
      return;
    }
    case Conn::Eq:
      return;
    case Conn::Ord:
      sig.orders.insert(f.order_sym());
      return;
    case Conn::Not:
    case Conn::Exists:
    case Conn::Forall:
      collect_signature(f.child(), sig);
      return;
    default:
      collect_signature(f.lhs(), sig);
      collect_signature(f.rhs(), sig);
      return;
  }
}

}  // namespace

Signature signature_of(const Formula& f) {
  Signature sig;
  collect_signature(f, sig);
  return sig;
}

// ---------------------------------------------------------------------------
// Lexer / parser for the concrete grammar:
//
//   formula := iff ;
//   iff     := imp ( "<->" imp )* ;             right-assoc
//   imp     := or ( "->" or )* ;                right-assoc
//   or      := and ( "|" and )* ;               left-assoc
//   and     := unary ( "&" unary )* ;           left-assoc
//   unary   := "!" unary | quant | atom | "(" formula ")" ;
//   quant   := ("forall"|"exists") var "." unary ;
//   atom    := name "(" var ( "," var )? ")" | var "=" var
//            | var ("<=" | "<=0" | "<=1") var ;
//   var     := "x" | "y" ;
//   name    := "_"? [A-Z][A-Za-z0-9_]* ;
//
// The optional leading underscore is reserved for machine-generated
// predicates (Scott predicates _S0, _S1, ... and the fresh _P of the
// validity reduction) so that printed normal forms reparse.

namespace {

enum class Tok {
  LParen, RParen, Dot, Comma,
  Bang, Amp, Pipe, Arrow, IffTok,
  EqTok, Leq, Leq0, Leq1,
  Ident, End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      SourcePos pos{line_, col_};
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      char c = text_[i_];
      if (c == '(') { out.push_back({Tok::LParen, "(", pos}); advance(); continue; }
      if (c == ')') { out.push_back({Tok::RParen, ")", pos}); advance(); continue; }
      if (c == '.') { out.push_back({Tok::Dot, ".", pos}); advance(); continue; }
      if (c == ',') { out.push_back({Tok::Comma, ",", pos}); advance(); continue; }
      if (c == '!') { out.push_back({Tok::Bang, "!", pos}); advance(); continue; }
      if (c == '&') { out.push_back({Tok::Amp, "&", pos}); advance(); continue; }
      if (c == '|') { out.push_back({Tok::Pipe, "|", pos}); advance(); continue; }
      if (c == '=') { out.push_back({Tok::EqTok, "=", pos}); advance(); continue; }
      if (c == '-') {
        advance();
        if (i_ < text_.size() && text_[i_] == '>') {
          advance();
          out.push_back({Tok::Arrow, "->", pos});
          continue;
        }
        throw ParseError("syntax error: expected '->' after '-'", pos);
      }
      if (c == '<') {
        advance();
        if (i_ < text_.size() && text_[i_] == '-') {
          advance();
          if (i_ < text_.size() && text_[i_] == '>') {
            advance();
            out.push_back({Tok::IffTok, "<->", pos});
            continue;
          }
          throw ParseError("syntax error: expected '<->' after '<-'", pos);
        }
        if (i_ < text_.size() && text_[i_] == '=') {
          advance();
          if (i_ < text_.size() && text_[i_] == '0') {
            advance();
            out.push_back({Tok::Leq0, "<=0", pos});
          } else if (i_ < text_.size() && text_[i_] == '1') {
            advance();
            out.push_back({Tok::Leq1, "<=1", pos});
          } else {
            out.push_back({Tok::Leq, "<=", pos});
          }
          continue;
        }
        throw ParseError("syntax error: expected '<=' or '<->' after '<'", pos);
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (i_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                text_[i_] == '_')) {
          word.push_back(text_[i_]);
          advance();
        }
        out.push_back({Tok::Ident, word, pos});
        continue;
      }
      throw ParseError(std::string("syntax error: unexpected character '") +
                           c + "'",
                       pos);
    }
  }

 private:
  void skip_ws() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '\n') {
        i_++;
        line_++;
        col_ = 1;
      } else {
        break;
      }
    }
  }

  void advance() {
    i_++;
    col_++;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool valid_pred_name(const std::string& w) {
  std::size_t i = 0;
  if (i < w.size() && w[i] == '_') i++;
  if (i >= w.size() || !std::isupper(static_cast<unsigned char>(w[i])))
    return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      throw ParseError("syntax error: unexpected '" + peek().text +
                           "' after formula",
                       peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  bool accept(Tok k) {
    if (peek().kind == k) {
      i_++;
      return true;
    }
    return false;
  }

  void expect(Tok k, const char* what) {
    if (!accept(k))
      throw ParseError(std::string("syntax error: expected ") + what +
                           ", got '" + peek().text + "'",
                       peek().pos);
  }

  Formula parse_iff() {
    std::vector<Formula> parts;
    parts.push_back(parse_imp());
    while (accept(Tok::IffTok)) parts.push_back(parse_imp());
    Formula f = parts.back();
    for (std::size_t k = parts.size() - 1; k-- > 0;)
      f = Formula::iff(parts[k], f);
    return f;
  }

  Formula parse_imp() {
    std::vector<Formula> parts;
    parts.push_back(parse_or());
    while (accept(Tok::Arrow)) parts.push_back(parse_or());
    Formula f = parts.back();
    for (std::size_t k = parts.size() - 1; k-- > 0;)
      f = Formula::imp(parts[k], f);
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Pipe)) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::Amp)) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Bang)) return Formula::neg(parse_unary());
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      Token q = take();
      Var v = parse_var();
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = parse_unary();
      return q.text == "forall" ? Formula::forall(v, std::move(body))
                                : Formula::exists(v, std::move(body));
    }
    return parse_atom();
  }

  Var parse_var() {
    const Token& t = peek();
    if (t.kind != Tok::Ident)
      throw ParseError("syntax error: expected a variable, got '" + t.text +
                           "'",
                       t.pos);
    if (t.text == "x") { take(); return Var::X; }
    if (t.text == "y") { take(); return Var::Y; }
    throw ParseError("only variables x and y are allowed, got '" + t.text +
                         "'",
                     t.pos);
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind != Tok::Ident)
      throw ParseError("syntax error: expected an atom, got '" + t.text + "'",
                       t.pos);
    if (t.text == "x" || t.text == "y") {
      Var v = parse_var();
      const Token& op = peek();
      switch (op.kind) {
        case Tok::EqTok: take(); return Formula::equals(v, parse_var());
        case Tok::Leq: take(); return Formula::order(OrderSym::Leq, v, parse_var());
        case Tok::Leq0: take(); return Formula::order(OrderSym::Leq0, v, parse_var());
        case Tok::Leq1: take(); return Formula::order(OrderSym::Leq1, v, parse_var());
        default:
          throw ParseError("syntax error: expected '=', '<=', '<=0' or '<=1' "
                           "after variable, got '" + op.text + "'",
                           op.pos);
      }
    }
    if (!valid_pred_name(t.text)) {
      // A lowercase word in atom position can only be meant as a variable.
      throw ParseError("only variables x and y are allowed, got '" + t.text +
                           "'",
                       t.pos);
    }
    Token name = take();
    expect(Tok::LParen, "'(' after predicate name");
    Var a = parse_var();
    if (accept(Tok::Comma)) {
      Var b = parse_var();
      expect(Tok::RParen, "')'");
      note_arity(name, 2);
      return Formula::pred(name.text, a, b);
    }
    expect(Tok::RParen, "')'");
    note_arity(name, 1);
    return Formula::pred(name.text, a);
  }

  void note_arity(const Token& name, int arity) {
    auto [it, inserted] = arities_.emplace(name.text, arity);
    if (!inserted && it->second != arity)
      throw ParseError("arity conflict: predicate '" + name.text +
                           "' used with arity " + std::to_string(arity) +
                           " and " + std::to_string(it->second),
                       name.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::map<std::string, int> arities_;
};

}  // namespace

Formula parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Renderer. Produces text that reparses to a structurally equal tree.
// Binding strength: ! > & > | > -> > <->. The quantifier body is always
// parenthesized unless it is itself atomic, negated or quantified; that
// keeps quantified subformulas valid `unary` productions.

namespace {

enum Level { kIff = 1, kImp, kOr, kAnd, kUnary };

int level_of(const Formula& f) {
  switch (f.kind()) {
    case Conn::Iff: return kIff;
    case Conn::Imp: return kImp;
    case Conn::Or: return kOr;
    case Conn::And: return kAnd;
    default: return kUnary;
  }
}

void render_rec(const Formula& f, int min_level, std::string& out) {
  const bool paren = level_of(f) < min_level;
  if (paren) out.push_back('(');
  switch (f.kind()) {
    case Conn::Pred:
      out += f.pred_name();
      out.push_back('(');
      out += name_of(f.var0());
      if (f.arity() == 2) {
        out.push_back(',');
        out += name_of(f.var1());
      }
      out.push_back(')');
      break;
    case Conn::Eq:
      out += name_of(f.var0());
      out += " = ";
      out += name_of(f.var1());
      break;
    case Conn::Ord:
      out += name_of(f.var0());
      out.push_back(' ');
      out += token_of(f.order_sym());
      out.push_back(' ');
      out += name_of(f.var1());
      break;
    case Conn::Not:
      out.push_back('!');
      render_rec(f.child(), kUnary, out);
      break;
    case Conn::Exists:
    case Conn::Forall: {
      out += f.is(Conn::Exists) ? "exists " : "forall ";
      out += name_of(f.var0());
      out += ". ";
      const Formula& body = f.child();
      switch (body.kind()) {
        case Conn::Not:
        case Conn::Exists:
        case Conn::Forall:
          render_rec(body, kUnary, out);
          break;
        default:
          out.push_back('(');
          render_rec(body, kIff, out);
          out.push_back(')');
          break;
      }
      break;
    }
    case Conn::And:
      render_rec(f.lhs(), kAnd, out);
      out += " & ";
      render_rec(f.rhs(), kUnary, out);
      break;
    case Conn::Or:
      render_rec(f.lhs(), kOr, out);
      out += " | ";
      render_rec(f.rhs(), kAnd, out);
      break;
    case Conn::Imp:
      render_rec(f.lhs(), kOr, out);
      out += " -> ";
      render_rec(f.rhs(), kImp, out);
      break;
    case Conn::Iff:
      render_rec(f.lhs(), kImp, out);
      out += " <-> ";
      render_rec(f.rhs(), kIff, out);
      break;
  }
  if (paren) out.push_back(')');
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, kIff, out);
  return out;
}

}  // namespace oinv2
