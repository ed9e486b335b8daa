#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oinv2/structure_io.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = oinv2::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch directory for file-based arguments, wiped per construction.
struct TempDir {
  std::filesystem::path dir;

  TempDir() {
    dir = std::filesystem::temp_directory_path() / "oinv2_cli_tests";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
  }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kWitnessMax = "exists x. (P(x) & forall y. (y <= x))";

}  // namespace

TEST_CASE("usage errors exit with 64") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"parse"}).code == 64);                 // no formula at all
  CHECK(run({"check-invariance", "P(x)"}).code == 64);  // --cap is required
  CHECK(run({"reduce-validity", "P(x)"}).code == 64);
  CHECK(run({"ground", "P(x)"}).code == 64);            // --size is required
  CHECK(run({"model-check"}).code == 64);

  const Run r = run({"parse", "P(x)", "--file", "also.txt"});
  CHECK(r.code == 64);
  CHECK(r.err.find("not both") != std::string::npos);

  CHECK(run({"parse", "--file", "/nonexistent/x.txt"}).code == 64);
}

TEST_CASE("help prints to stdout and succeeds") {
  const Run top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("check-invariance") != std::string::npos);
  const Run sub = run({"find-model", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--cap") != std::string::npos);
}

TEST_CASE("parse echoes the canonical rendering") {
  const Run r = run({"parse", "P(x)&Q(x)|R(x,y)"});
  CHECK(r.code == 0);
  CHECK(r.out == "P(x) & Q(x) | R(x,y)\n");

  const Run j = run({"parse", "--json", "forall x. P(x)"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"text\": \"forall x. (P(x))\"") != std::string::npos);
  CHECK(j.out.find("\"sentence\": true") != std::string::npos);
  CHECK(j.out.find("\"P\": 1") != std::string::npos);
}

TEST_CASE("formula rejections exit with 65") {
  const Run r = run({"parse", "P("});
  CHECK(r.code == 65);
  CHECK(r.err.rfind("parse error: ", 0) == 0);
  CHECK(run({"normalize", "P(x)"}).code == 65);  // not a sentence
  CHECK(run({"normalize", "exists x. x <=0 x"}).code == 65);
}

TEST_CASE("formulas can come from files") {
  TempDir tmp;
  const std::string path = tmp.file("f.txt", kWitnessMax);
  const Run r = run({"parse", "--file", path});
  CHECK(r.code == 0);
  CHECK(r.out == "exists x. (P(x) & forall y. (y <= x))\n");
}

TEST_CASE("normalize prints the matrices and counts") {
  const Run r = run({"normalize", kWitnessMax});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "chi0: !_S0(x) | y <=0 x\n"
        "chi1: (!_S1(x) | y <=1 x) & (!(P(y) & _S1(y)) | _S2(x)) & !_S2(y)\n"
        "gamma0[0]: !y <=0 x | _S0(x)\n"
        "gamma0[1]: P(y) & _S0(y)\n"
        "gamma1[0]: !y <=1 x | _S1(x)\n"
        "gamma1[1]: !_S2(x) | P(y) & _S1(y)\n"
        "m0: 2\n"
        "m1: 2\n");

  const Run j = run({"normalize", "--json", kWitnessMax});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"definitions\"") != std::string::npos);
  CHECK(j.out.find("\"_S2\"") != std::string::npos);
}

TEST_CASE("bound prints the arithmetic") {
  const Run r = run({"bound", "forall x. forall y. (x <= y | y <= x)"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "m: 2\n"
        "one-type-bits: 2\n"
        "bound: 7168\n"
        "sentence-size: 38\n"
        "coarse-bound: 3378614514202181632\n");

  const Run j = run({"bound", "--json", kWitnessMax});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"bound\": 28672") != std::string::npos);
  CHECK(j.out.find("\"coarse-bound\": null") != std::string::npos);
  CHECK(j.out.find("\"coarse-overflow\": true") != std::string::npos);
}

TEST_CASE("model-check reports truth and maps it onto the exit code") {
  TempDir tmp;
  const std::string path = tmp.file(
      "s.json",
      R"({"n": 2, "unary": {"P": [0]}, "orders": {"leq": [0, 1]}})");

  const Run yes = run({"model-check", path, "exists x. P(x)"});
  CHECK(yes.code == 0);
  CHECK(yes.out == "true\n");

  const Run no = run({"model-check", path, "forall x. P(x)"});
  CHECK(no.code == 1);
  CHECK(no.out == "false\n");

  const Run j = run({"model-check", path, "--json", "exists x. P(x)"});
  CHECK(j.code == 0);
  CHECK(j.out == "{\n  \"holds\": true\n}\n");

  const Run bad = run({"model-check", tmp.file("bad.json", "{"), "P(x)"});
  CHECK(bad.code == 65);
  CHECK(bad.err.rfind("parse error: ", 0) == 0);

  CHECK(run({"model-check", tmp.path("missing.json"), "P(x)"}).code == 64);

  // A formula symbol the structure lacks is a semantic rejection.
  const Run sem = run({"model-check", path, "exists x. Q(x)"});
  CHECK(sem.code == 65);
  CHECK(sem.err.rfind("error: ", 0) == 0);
}

TEST_CASE("find-model needs exactly one size selector") {
  CHECK(run({"find-model", kWitnessMax}).code == 64);
  CHECK(run({"find-model", "--size", "2", "--cap", "3", kWitnessMax}).code ==
        64);
  CHECK(run({"find-model", "--size", "2", "--complete", kWitnessMax}).code ==
        64);
}

TEST_CASE("find-model prints the canonical structure") {
  const Run r = run({"find-model", "--size", "2", kWitnessMax});
  CHECK(r.code == 0);
  const oinv2::Structure s = oinv2::structure_from_json(r.out);
  CHECK(s.n == 2);
  CHECK(s.has_order(oinv2::OrderSym::Leq0));
  CHECK(s.has_order(oinv2::OrderSym::Leq1));

  const Run miss = run({"find-model", "--size", "1", kWitnessMax});
  CHECK(miss.code == 1);
  CHECK(miss.out == "no model of size 1\n");

  const Run capped = run({"find-model", "--cap", "3", kWitnessMax});
  CHECK(capped.code == 0);
  CHECK(oinv2::structure_from_json(capped.out).n == 2);

  const Run none =
      run({"find-model", "--cap", "3", "forall x. forall y. (x <= y | y <= x)"});
  CHECK(none.code == 1);
  CHECK(none.out == "no model up to size 3\n");
}

TEST_CASE("a demanded complete verdict under a short cap exits with 2") {
  const Run inc = run({"find-model", "--cap", "3", "--complete",
                       "forall x. forall y. (x <= y | y <= x)"});
  CHECK(inc.code == 2);

  const Run inv = run({"check-invariance", "--cap", "3", "--complete",
                       "forall x. forall y. (x <= y | y <= x)"});
  CHECK(inv.code == 2);

  const Run val = run({"reduce-validity", "--cap", "3", "--complete",
                       "forall x. (P(x) | !P(x))"});
  CHECK(val.code == 2);

  // A found model answers the question, complete or not.
  const Run hit =
      run({"find-model", "--cap", "3", "--complete", kWitnessMax});
  CHECK(hit.code == 0);
}

TEST_CASE("find-model output is deterministic and jobs-insensitive") {
  const Run a = run({"find-model", "--size", "3", kWitnessMax});
  const Run b = run({"find-model", "--size", "3", kWitnessMax});
  const Run c = run({"find-model", "--size", "3", "--jobs", "4", kWitnessMax});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("ground emits dimacs on stdout or into a file") {
  TempDir tmp;
  const Run text = run({"ground", "--size", "2", kWitnessMax});
  CHECK(text.code == 0);
  CHECK(text.out.rfind("c map 1 ", 0) == 0);
  CHECK(text.out.find("p cnf ") != std::string::npos);

  const std::string path = tmp.path("out.cnf");
  const Run filed = run({"ground", "--size", "2", "--dimacs", path, kWitnessMax});
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == text.out);

  const Run j = run({"ground", "--size", "2", "--json", "--dimacs", path,
                     kWitnessMax});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"vars\"") != std::string::npos);
  CHECK(j.out.find("\"written\"") != std::string::npos);

  CHECK(run({"ground", "--size", "0", kWitnessMax}).code == 65);
}

TEST_CASE("check-invariance narrates the counterexample") {
  const Run r = run({"check-invariance", "--cap", "3", kWitnessMax});
  CHECK(r.code == 1);
  CHECK(r.out ==
        "not invariant\n"
        "size: 2\n"
        "base: {\"n\":2,\"unary\":{\"P\":[1]},\"binary\":{}}\n"
        "ord0: [0,1]\n"
        "ord1: [1,0]\n");

  const Run inv =
      run({"check-invariance", "--cap", "3", "forall x. (x <= x)"});
  CHECK(inv.code == 0);
  CHECK(inv.out ==
        "invariant up to cap\n"
        "cap: 3\n"
        "bound: 448\n");

  const Run j = run({"check-invariance", "--cap", "3", "--json", kWitnessMax});
  CHECK(j.code == 1);
  CHECK(j.out.find("\"verdict\": \"not-invariant\"") != std::string::npos);
  CHECK(j.out.find("\"ord0\"") != std::string::npos);
  CHECK(j.out.find("\"orders\"") == std::string::npos);
}

TEST_CASE("counterexample files round trip through model-check") {
  TempDir tmp;
  const std::string prefix = tmp.path("ce");
  const Run r = run({"check-invariance", "--cap", "3", "--out-prefix", prefix,
                     kWitnessMax});
  CHECK(r.code == 1);

  // The same base satisfies the sentence under one order and not the other.
  const Run under0 = run({"model-check", prefix + ".ord0.json", kWitnessMax});
  CHECK(under0.code == 0);
  CHECK(under0.out == "true\n");
  const Run under1 = run({"model-check", prefix + ".ord1.json", kWitnessMax});
  CHECK(under1.code == 1);
  CHECK(under1.out == "false\n");
}

TEST_CASE("reduce-validity narrates both outcomes") {
  const Run valid = run({"reduce-validity", "--cap", "3",
                         "forall x. (P(x) | !P(x))"});
  CHECK(valid.code == 0);
  CHECK(valid.out == "valid\ncomplete: false\ncap: 3\n");

  const Run corner = run({"reduce-validity", "--cap", "3", "forall x. P(x)"});
  CHECK(corner.code == 1);
  CHECK(corner.out ==
        "not valid\n"
        "corner-case: true\n"
        "countermodel: {\"n\":1,\"unary\":{\"P\":[]},\"binary\":{},"
        "\"orders\":{}}\n");

  const Run deep = run({"reduce-validity", "--cap", "3",
                        "forall x. forall y. (R(x,y) -> R(y,x))"});
  CHECK(deep.code == 1);
  CHECK(deep.out.find("corner-case: false\n") != std::string::npos);

  CHECK(run({"reduce-validity", "--cap", "3", "forall x. (x <= x)"}).code ==
        65);
}

TEST_CASE("shrink returns the verified small structure") {
  TempDir tmp;
  // A model of the split sentence, found by the tool itself.
  const Run model = run({"find-model", "--size", "2", kWitnessMax});
  REQUIRE(model.code == 0);
  const std::string path = tmp.file("model.json", model.out);

  const Run r = run({"shrink", path, kWitnessMax});
  CHECK(r.code == 0);
  CHECK(oinv2::structure_from_json(r.out).n == 2);

  const Run j = run({"shrink", path, "--json", kWitnessMax});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"early_exit\": true") != std::string::npos);
  CHECK(j.out.find("\"verified\": true") != std::string::npos);

  // A non-model is rejected up front.
  const std::string junk = tmp.file(
      "junk.json",
      R"({"n": 1, "unary": {"P": []}, "orders": {"leq0": [0], "leq1": [0]}})");
  const Run bad = run({"shrink", junk, kWitnessMax});
  CHECK(bad.code == 65);
  CHECK(bad.err.find("not a model") != std::string::npos);
}
