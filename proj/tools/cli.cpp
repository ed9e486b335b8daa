#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oinv2/cnf.hpp"
#include "oinv2/errors.hpp"
#include "oinv2/evaluate.hpp"
#include "oinv2/formula.hpp"
#include "oinv2/invariance.hpp"
#include "oinv2/normal_form.hpp"
#include "oinv2/search.hpp"
#include "oinv2/shrink.hpp"
#include "oinv2/structure_io.hpp"

namespace oinv2::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kIncomplete = 2;
constexpr int kUsage = 64;
constexpr int kBadInput = 65;
constexpr int kInternal = 70;

// Signals an unusable path argument; reported as a usage error.
struct FileError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw FileError{"cannot write " + path};
}

// Inputs shared by every formula-taking subcommand.
struct FormulaInput {
  std::string inline_text;
  std::string file;

  Formula get() const {
    if (!file.empty()) {
      if (!inline_text.empty())
        throw FileError{"give the formula inline or via --file, not both"};
      return parse(read_file(file));
    }
    if (inline_text.empty())
      throw FileError{"no formula given (inline argument or --file)"};
    return parse(inline_text);
  }
};

void add_formula_args(CLI::App* sub, FormulaInput& in) {
  sub->add_option("formula", in.inline_text, "formula text");
  sub->add_option("--file", in.file, "read the formula from a file");
}

ordered_json signature_json(const Signature& sig) {
  ordered_json preds = ordered_json::object();
  for (const auto& [name, arity] : sig.predicates) preds[name] = arity;
  ordered_json orders = ordered_json::array();
  for (OrderSym o : sig.orders) orders.push_back(json_key_of(o));
  return ordered_json{{"predicates", preds}, {"orders", orders}};
}

ordered_json structure_json(const Structure& s) {
  // Round-trips through the canonical serialization so every structure in a
  // report carries identical key order and sorting.
  return ordered_json::parse(structure_to_json(s));
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json counterexample_json(const Counterexample& cx) {
  ordered_json j = structure_json(cx.base());
  j.erase("orders");
  j["ord0"] = cx.ord0();
  j["ord1"] = cx.ord1();
  return j;
}

int cmd_parse(const FormulaInput& in, bool json, std::ostream& out) {
  Formula f = in.get();
  if (!json) {
    out << render(f) << "\n";
    return kYes;
  }
  ordered_json j{{"text", render(f)},
                 {"size", node_count(f)},
                 {"sentence", is_sentence(f)},
                 {"signature", signature_json(signature_of(f))}};
  out << dump(j);
  return kYes;
}

int cmd_normalize(const FormulaInput& in, bool json, std::ostream& out) {
  NormalForm nf = normalize(in.get());
  if (!json) {
    out << "chi0: " << render(nf.chi0) << "\n";
    out << "chi1: " << render(nf.chi1) << "\n";
    for (int half = 0; half < 2; ++half) {
      const auto& gs = nf.gammas(half);
      for (std::size_t j = 0; j < gs.size(); ++j)
        out << "gamma" << half << "[" << j << "]: " << render(gs[j]) << "\n";
    }
    out << "m0: " << nf.m0() << "\n";
    out << "m1: " << nf.m1() << "\n";
    return kYes;
  }
  ordered_json defs = ordered_json::array();
  for (const ScottDef& d : nf.defs)
    defs.push_back(ordered_json{{"name", d.name},
                                {"existential", d.existential},
                                {"body", render(d.body)}});
  ordered_json gamma0 = ordered_json::array();
  for (const Formula& g : nf.gamma0) gamma0.push_back(render(g));
  ordered_json gamma1 = ordered_json::array();
  for (const Formula& g : nf.gamma1) gamma1.push_back(render(g));
  ordered_json j{{"chi0", render(nf.chi0)}, {"chi1", render(nf.chi1)},
                 {"gamma0", gamma0},        {"gamma1", gamma1},
                 {"m0", nf.m0()},           {"m1", nf.m1()},
                 {"signature", signature_json(nf.sig)},
                 {"definitions", defs}};
  out << dump(j);
  return kYes;
}

int cmd_model_check(const std::string& structure_path, const FormulaInput& in,
                    bool json, std::ostream& out) {
  Structure s = structure_from_json(read_file(structure_path));
  const bool holds = evaluate(s, in.get());
  if (json)
    out << dump(ordered_json{{"holds", holds}});
  else
    out << (holds ? "true" : "false") << "\n";
  return holds ? kYes : kNo;
}

int cmd_bound(const FormulaInput& in, bool json, std::ostream& out) {
  SizeBound b = size_bound(normalize(in.get()));
  if (!json) {
    out << "m: " << b.m << "\n";
    out << "one-type-bits: " << b.one_type_bits << "\n";
    if (b.overflow)
      out << "bound: overflow\n";
    else
      out << "bound: " << b.value << "\n";
    out << "sentence-size: " << b.sentence_size << "\n";
    if (b.coarse_overflow)
      out << "coarse-bound: overflow\n";
    else
      out << "coarse-bound: " << b.coarse << "\n";
    return kYes;
  }
  ordered_json j{{"m", b.m},
                 {"one-type-bits", b.one_type_bits},
                 {"bound", b.overflow ? ordered_json() : ordered_json(b.value)},
                 {"overflow", b.overflow},
                 {"sentence-size", b.sentence_size},
                 {"coarse-bound",
                  b.coarse_overflow ? ordered_json() : ordered_json(b.coarse)},
                 {"coarse-overflow", b.coarse_overflow}};
  out << dump(j);
  return kYes;
}

struct FindModelArgs {
  FormulaInput in;
  int size = 0;
  int cap = 0;
  int jobs = 1;
  bool complete = false;
  bool json = false;
};

int cmd_find_model(const FindModelArgs& a, std::ostream& out,
                   std::ostream& err) {
  if ((a.size > 0) == (a.cap > 0)) {
    err << "find-model needs exactly one of --size and --cap\n";
    return kUsage;
  }
  if (a.complete && a.size > 0) {
    err << "--complete applies to --cap searches only\n";
    return kUsage;
  }
  NormalForm nf = normalize(a.in.get());
  SearchOptions opts{a.jobs};

  if (a.size > 0) {
    auto m = find_model(nf, a.size, opts);
    if (a.json) {
      ordered_json j{{"found", m.has_value()}, {"size", a.size}};
      if (m) j["model"] = structure_json(*m);
      out << dump(j);
    } else if (m) {
      out << structure_to_json(*m);
    } else {
      out << "no model of size " << a.size << "\n";
    }
    return m ? kYes : kNo;
  }

  BoundedSearchResult r = find_model_up_to(nf, a.cap, opts);
  if (a.json) {
    ordered_json j{{"found", r.model.has_value()},
                   {"cap", r.cap},
                   {"complete", r.complete}};
    if (r.model) j["model"] = structure_json(*r.model);
    out << dump(j);
  } else if (r.model) {
    out << structure_to_json(*r.model);
  } else if (r.complete) {
    out << "unsatisfiable\n";
  } else {
    out << "no model up to size " << r.cap << "\n";
  }
  if (r.model) return kYes;
  return a.complete && !r.complete ? kIncomplete : kNo;
}

struct GroundArgs {
  FormulaInput in;
  int size = 0;
  std::string dimacs;
  bool json = false;
};

int cmd_ground(const GroundArgs& a, std::ostream& out) {
  CnfInstance c = ground_to_cnf(normalize(a.in.get()), a.size);
  if (!a.dimacs.empty()) {
    std::ostringstream buf;
    write_dimacs(c, buf);
    write_file(a.dimacs, buf.str());
  }
  if (a.json) {
    ordered_json j{{"vars", c.var_count},
                   {"clauses", c.clauses.size()},
                   {"size", c.n}};
    if (!a.dimacs.empty()) j["written"] = a.dimacs;
    out << dump(j);
  } else if (a.dimacs.empty()) {
    write_dimacs(c, out);
  }
  return kYes;
}

int cmd_shrink(const std::string& structure_path, const FormulaInput& in,
               bool json, std::ostream& out) {
  NormalForm nf = normalize(in.get());
  Structure s = expand_with_definitions(nf, structure_from_json(
                                                read_file(structure_path)));
  ShrinkReport report = shrink(s, nf);
  if (json)
    out << shrink_report_to_json(report, TypeSpace(nf.sig));
  else
    out << structure_to_json(report.output);
  return report.verified ? kYes : kNo;
}

struct InvarianceArgs {
  FormulaInput in;
  int cap = 0;
  int jobs = 1;
  bool complete = false;
  bool json = false;
  std::string out_prefix;
};

int cmd_check_invariance(const InvarianceArgs& a, std::ostream& out) {
  InvarianceVerdict v =
      check_order_invariance(a.in.get(), a.cap, SearchOptions{a.jobs});

  if (v.kind == InvarianceVerdict::Kind::NotInvariant && !a.out_prefix.empty())
    for (int i = 0; i < 2; ++i)
      write_file(a.out_prefix + ".ord" + std::to_string(i) + ".json",
                 structure_to_json(v.counterexample->ordered(i)));

  if (a.json) {
    const char* verdict =
        v.kind == InvarianceVerdict::Kind::NotInvariant ? "not-invariant"
        : v.kind == InvarianceVerdict::Kind::Invariant  ? "invariant"
                                                        : "invariant-up-to-cap";
    ordered_json j{
        {"verdict", verdict},
        {"cap", v.cap},
        {"bound", v.bound.overflow ? ordered_json() : ordered_json(v.bound.value)},
        {"bound-overflow", v.bound.overflow}};
    if (v.counterexample)
      j["counterexample"] = counterexample_json(*v.counterexample);
    out << dump(j);
  } else if (v.kind == InvarianceVerdict::Kind::NotInvariant) {
    const Counterexample& cx = *v.counterexample;
    ordered_json base = structure_json(cx.base());
    base.erase("orders");
    out << "not invariant\n";
    out << "size: " << cx.base().n << "\n";
    out << "base: " << base.dump() << "\n";
    out << "ord0: " << ordered_json(cx.ord0()).dump() << "\n";
    out << "ord1: " << ordered_json(cx.ord1()).dump() << "\n";
  } else {
    const bool complete = v.kind == InvarianceVerdict::Kind::Invariant;
    out << (complete ? "invariant\n" : "invariant up to cap\n");
    out << "cap: " << v.cap << "\n";
    if (v.bound.overflow)
      out << "bound: overflow\n";
    else
      out << "bound: " << v.bound.value << "\n";
  }

  switch (v.kind) {
    case InvarianceVerdict::Kind::NotInvariant:
      return kNo;
    case InvarianceVerdict::Kind::Invariant:
      return kYes;
    case InvarianceVerdict::Kind::InvariantUpTo:
      return a.complete ? kIncomplete : kYes;
  }
  return kInternal;
}

struct ValidityArgs {
  FormulaInput in;
  int cap = 0;
  int jobs = 1;
  bool complete = false;
  bool json = false;
};

int cmd_reduce_validity(const ValidityArgs& a, std::ostream& out) {
  ValidityResult r = reduce_validity(a.in.get(), a.cap, SearchOptions{a.jobs});
  if (a.json) {
    ordered_json j{{"valid", r.valid},
                   {"complete", r.complete},
                   {"cap", r.cap},
                   {"corner-case", r.corner_case_fired}};
    if (r.countermodel) j["countermodel"] = structure_json(*r.countermodel);
    out << dump(j);
  } else if (r.valid) {
    out << "valid\n";
    out << "complete: " << (r.complete ? "true" : "false") << "\n";
    out << "cap: " << r.cap << "\n";
  } else {
    out << "not valid\n";
    out << "corner-case: " << (r.corner_case_fired ? "true" : "false") << "\n";
    out << "countermodel: " << structure_json(*r.countermodel).dump() << "\n";
  }
  if (!r.valid) return kNo;
  return a.complete && !r.complete ? kIncomplete : kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"two-variable logic order-invariance toolkit"};
  app.require_subcommand(1);

  FormulaInput parse_in;
  bool parse_json = false;
  auto* sub_parse = app.add_subcommand("parse", "parse and print a formula");
  add_formula_args(sub_parse, parse_in);
  sub_parse->add_flag("--json", parse_json, "JSON report");

  FormulaInput norm_in;
  bool norm_json = false;
  auto* sub_norm =
      app.add_subcommand("normalize", "print the two-order normal form");
  add_formula_args(sub_norm, norm_in);
  sub_norm->add_flag("--json", norm_json, "JSON report");

  std::string mc_structure;
  FormulaInput mc_in;
  bool mc_json = false;
  auto* sub_mc =
      app.add_subcommand("model-check", "evaluate a sentence on a structure");
  sub_mc->add_option("structure", mc_structure, "structure JSON file")
      ->required();
  add_formula_args(sub_mc, mc_in);
  sub_mc->add_flag("--json", mc_json, "JSON report");

  FindModelArgs fm;
  auto* sub_fm = app.add_subcommand(
      "find-model", "search for a model of the two-order normal form");
  add_formula_args(sub_fm, fm.in);
  sub_fm->add_option("--size", fm.size, "exact universe size");
  sub_fm->add_option("--cap", fm.cap, "try sizes 1..cap");
  sub_fm->add_option("--jobs", fm.jobs, "parallel workers");
  sub_fm->add_flag("--complete", fm.complete,
                   "demand a complete verdict (exit 2 if the cap is short)");
  sub_fm->add_flag("--json", fm.json, "JSON report");

  GroundArgs gr;
  auto* sub_gr =
      app.add_subcommand("ground", "compile a fixed-size search to CNF");
  add_formula_args(sub_gr, gr.in);
  sub_gr->add_option("--size", gr.size, "universe size")->required();
  sub_gr->add_option("--dimacs", gr.dimacs, "write DIMACS to this file");
  sub_gr->add_flag("--json", gr.json, "JSON summary instead of DIMACS");

  std::string sh_structure;
  FormulaInput sh_in;
  bool sh_json = false;
  auto* sub_sh = app.add_subcommand(
      "shrink", "shrink a model of the two-order normal form");
  sub_sh->add_option("structure", sh_structure, "structure JSON file")
      ->required();
  add_formula_args(sub_sh, sh_in);
  sub_sh->add_flag("--json", sh_json, "full report instead of the structure");

  InvarianceArgs inv;
  auto* sub_inv =
      app.add_subcommand("check-invariance", "bounded order-invariance check");
  add_formula_args(sub_inv, inv.in);
  sub_inv->add_option("--cap", inv.cap, "largest counterexample size tried")
      ->required();
  sub_inv->add_option("--jobs", inv.jobs, "parallel workers");
  sub_inv->add_flag("--complete", inv.complete,
                    "demand a complete verdict (exit 2 if the cap is short)");
  sub_inv->add_flag("--json", inv.json, "JSON report");
  sub_inv->add_option("--out-prefix", inv.out_prefix,
                      "write counterexample structures to <prefix>.ord{0,1}.json");

  ValidityArgs val;
  auto* sub_val = app.add_subcommand(
      "reduce-validity", "decide validity through order-invariance");
  add_formula_args(sub_val, val.in);
  sub_val->add_option("--cap", val.cap, "invariance search cap")->required();
  sub_val->add_option("--jobs", val.jobs, "parallel workers");
  sub_val->add_flag("--complete", val.complete,
                    "demand a complete verdict (exit 2 if the cap is short)");
  sub_val->add_flag("--json", val.json, "JSON report");

  FormulaInput bd_in;
  bool bd_json = false;
  auto* sub_bd =
      app.add_subcommand("bound", "print the small-model bound arithmetic");
  add_formula_args(sub_bd, bd_in);
  sub_bd->add_flag("--json", bd_json, "JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests carry exit code 0 and print to out; real usage errors
    // print to err and map onto the usage code.
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (app.got_subcommand(sub_parse))
      return cmd_parse(parse_in, parse_json, out);
    if (app.got_subcommand(sub_norm))
      return cmd_normalize(norm_in, norm_json, out);
    if (app.got_subcommand(sub_mc))
      return cmd_model_check(mc_structure, mc_in, mc_json, out);
    if (app.got_subcommand(sub_fm)) return cmd_find_model(fm, out, err);
    if (app.got_subcommand(sub_gr)) return cmd_ground(gr, out);
    if (app.got_subcommand(sub_sh))
      return cmd_shrink(sh_structure, sh_in, sh_json, out);
    if (app.got_subcommand(sub_inv)) return cmd_check_invariance(inv, out);
    if (app.got_subcommand(sub_val)) return cmd_reduce_validity(val, out);
    if (app.got_subcommand(sub_bd)) return cmd_bound(bd_in, bd_json, out);
    err << "no subcommand\n";
    return kUsage;
  } catch (const FileError& e) {
    err << e.message << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace oinv2::cli
