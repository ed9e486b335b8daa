#include "doctest.h"

#include "oinv2/errors.hpp"
#include "oinv2/structure_io.hpp"

using namespace oinv2;

TEST_CASE("json structures round trip through the canonical form") {
  const std::string text = R"({
    "n": 3,
    "unary": {"P": [2, 0]},
    "binary": {"R": [[1, 0], [0, 1]]},
    "orders": {"leq0": [2, 0, 1], "leq1": [0, 1, 2]}
  })";
  const Structure s = structure_from_json(text);
  CHECK(s.n == 3);
  CHECK(s.unary.at("P") == std::set<int>{0, 2});
  CHECK(s.binary.at("R") ==
        std::set<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(*s.rankings[1] == std::vector<int>{2, 0, 1});
  CHECK(*s.rankings[2] == std::vector<int>{0, 1, 2});

  const std::string canonical = structure_to_json(s);
  CHECK(structure_from_json(canonical) == s);
  CHECK(structure_to_json(structure_from_json(canonical)) == canonical);
}

TEST_CASE("canonical serialization is byte-exact") {
  Structure s;
  s.n = 2;
  s.unary["P"] = {1};
  s.rankings[0] = std::vector<int>{1, 0};
  CHECK(structure_to_json(s) ==
        "{\n"
        "  \"n\": 2,\n"
        "  \"unary\": {\n"
        "    \"P\": [\n"
        "      1\n"
        "    ]\n"
        "  },\n"
        "  \"binary\": {},\n"
        "  \"orders\": {\n"
        "    \"leq\": [\n"
        "      1,\n"
        "      0\n"
        "    ]\n"
        "  }\n"
        "}\n");
}

TEST_CASE("sections may be absent or empty") {
  const Structure bare = structure_from_json(R"({"n": 1})");
  CHECK(bare.n == 1);
  CHECK(bare.unary.empty());
  CHECK(bare.binary.empty());
  for (int o = 0; o < 3; ++o) CHECK(!bare.rankings[o].has_value());

  const Structure part =
      structure_from_json(R"({"n": 2, "orders": {"leq": [0, 1]}})");
  CHECK(part.has_order(OrderSym::Leq));
  CHECK(!part.has_order(OrderSym::Leq0));
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(structure_from_json("not json"), ParseError);
  CHECK_THROWS_AS(structure_from_json("[1, 2]"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"unary": {}})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"n": "two"})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"n": 1, "size": 1})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"n": 1, "unary": []})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"n": 1, "unary": {"P": 0}})"),
                  ParseError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "binary": {"R": [[0]]}})"), ParseError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "orders": {"less": [0, 1]}})"),
      ParseError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "unary": {"P": [0.5]}})"), ParseError);
}

TEST_CASE("range and bijection violations raise semantic errors") {
  CHECK_THROWS_AS(structure_from_json(R"({"n": 0})"), SemanticError);
  CHECK_THROWS_AS(structure_from_json(R"({"n": 1, "unary": {"P": [1]}})"),
                  SemanticError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "binary": {"R": [[0, 2]]}})"),
      SemanticError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "orders": {"leq": [0]}})"),
      SemanticError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "orders": {"leq": [0, 0]}})"),
      SemanticError);
  CHECK_THROWS_AS(
      structure_from_json(R"({"n": 2, "orders": {"leq": [0, 5]}})"),
      SemanticError);
}

TEST_CASE("shrink reports serialize with the type-keyed pools") {
  ShrinkReport r;
  r.input_size = 5;
  r.output.n = 1;
  r.output.unary["P"] = {0};
  r.verified = true;
  r.w0 = {0, 4};
  r.pools[OneType{1}] = {{{1}, {2}, {3}, {4}}};
  r.rewired.push_back({3, 2, 1, 0, 0});

  Signature sig;
  sig.predicates = {{"P", 1}};
  const TypeSpace types(sig);
  const std::string text = shrink_report_to_json(r, types);

  CHECK(text.find("\"report\"") != std::string::npos);
  CHECK(text.find("\"input_size\": 5") != std::string::npos);
  CHECK(text.find("\"verified\": true") != std::string::npos);
  CHECK(text.find("\"P(x)\"") != std::string::npos);
  CHECK(text.find("\"old_witness\": 2") != std::string::npos);
  // The report rides along under its own key, so the document is not a
  // plain structure any more.
  CHECK_THROWS_AS(structure_from_json(text), ParseError);
}
