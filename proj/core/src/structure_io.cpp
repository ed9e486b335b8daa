#include "oinv2/structure_io.hpp"

#include "json.hpp"
#include "oinv2/errors.hpp"

namespace oinv2 {

namespace {

using nlohmann::ordered_json;

int as_element(const ordered_json& j, const char* where) {
  if (!j.is_number_integer())
    throw ParseError(std::string("expected an integer element in ") + where);
  return j.get<int>();
}

const char* order_key(OrderSym o) {
  switch (o) {
    case OrderSym::Leq: return "leq";
    case OrderSym::Leq0: return "leq0";
    case OrderSym::Leq1: return "leq1";
  }
  return "?";
}

}  // namespace

Structure structure_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("structure must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("structure needs an integer \"n\"");

  Structure s;
  s.n = j["n"].get<int>();
  if (s.n < 1) throw SemanticError("universe must be non-empty");

  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "unary" && key != "binary" && key != "orders")
      throw ParseError("unknown structure key \"" + key + "\"");
  }

  auto check_range = [&](int e, const std::string& where) {
    if (e < 0 || e >= s.n)
      throw SemanticError("element " + std::to_string(e) + " in " + where +
                          " is out of range");
  };

  if (j.contains("unary")) {
    if (!j["unary"].is_object())
      throw ParseError("\"unary\" must be an object");
    for (const auto& [name, arr] : j["unary"].items()) {
      if (!arr.is_array())
        throw ParseError("unary \"" + name + "\" must be an array");
      auto& set = s.unary[name];
      for (const auto& e : arr) {
        int v = as_element(e, "unary");
        check_range(v, "\"" + name + "\"");
        set.insert(v);
      }
    }
  }
  if (j.contains("binary")) {
    if (!j["binary"].is_object())
      throw ParseError("\"binary\" must be an object");
    for (const auto& [name, arr] : j["binary"].items()) {
      if (!arr.is_array())
        throw ParseError("binary \"" + name + "\" must be an array of pairs");
      auto& set = s.binary[name];
      for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("binary \"" + name + "\" entries must be pairs");
        int a = as_element(pair[0], "binary");
        int b = as_element(pair[1], "binary");
        check_range(a, "\"" + name + "\"");
        check_range(b, "\"" + name + "\"");
        set.insert({a, b});
      }
    }
  }
  if (j.contains("orders")) {
    if (!j["orders"].is_object())
      throw ParseError("\"orders\" must be an object");
    for (const auto& [name, arr] : j["orders"].items()) {
      OrderSym o;
      if (name == "leq") o = OrderSym::Leq;
      else if (name == "leq0") o = OrderSym::Leq0;
      else if (name == "leq1") o = OrderSym::Leq1;
      else throw ParseError("unknown order key \"" + name + "\"");
      if (!arr.is_array())
        throw ParseError("order \"" + name + "\" must be a ranking array");
      std::vector<int> rank;
      for (const auto& e : arr) rank.push_back(as_element(e, "orders"));
      if (static_cast<int>(rank.size()) != s.n)
        throw SemanticError("ranking for " + name + " has " +
                            std::to_string(rank.size()) +
                            " entries, expected " + std::to_string(s.n));
      std::vector<bool> seen(s.n, false);
      for (int v : rank) {
        if (v < 0 || v >= s.n)
          throw SemanticError("ranking for " + name +
                              " is out of range: " + std::to_string(v));
        if (seen[v])
          throw SemanticError("ranking for " + name +
                              " is not a bijection: rank " +
                              std::to_string(v) + " repeats");
        seen[v] = true;
      }
      s.rankings[static_cast<int>(o)] = std::move(rank);
    }
  }
  return s;
}

namespace {

ordered_json structure_json(const Structure& s) {
  ordered_json j;
  j["n"] = s.n;
  ordered_json unary = ordered_json::object();
  for (const auto& [name, elems] : s.unary)
    unary[name] = std::vector<int>(elems.begin(), elems.end());
  j["unary"] = std::move(unary);
  ordered_json binary = ordered_json::object();
  for (const auto& [name, pairs] : s.binary) {
    ordered_json arr = ordered_json::array();
    for (auto [a, b] : pairs) arr.push_back({a, b});
    binary[name] = std::move(arr);
  }
  j["binary"] = std::move(binary);
  ordered_json orders = ordered_json::object();
  for (OrderSym o : {OrderSym::Leq, OrderSym::Leq0, OrderSym::Leq1})
    if (s.has_order(o)) orders[order_key(o)] = s.ranking(o);
  j["orders"] = std::move(orders);
  return j;
}

}  // namespace

std::string structure_to_json(const Structure& s) {
  return structure_json(s).dump(2) + "\n";
}

std::string shrink_report_to_json(const ShrinkReport& r,
                                  const TypeSpace& types) {
  ordered_json j = structure_json(r.output);
  ordered_json rep;
  rep["input_size"] = r.input_size;
  rep["output_size"] = r.output.n;
  rep["early_exit"] = r.early_exit;
  rep["verified"] = r.verified;
  rep["w0"] = r.w0;
  rep["w1"] = r.w1;
  rep["w2"] = r.w2;
  rep["w3"] = r.w3;
  ordered_json pools = ordered_json::object();
  for (const auto& [t, banks] : r.pools) {
    ordered_json four = ordered_json::array();
    for (const auto& bank : banks) four.push_back(bank);
    pools[render(types.one_type_formula(t))] = std::move(four);
  }
  rep["pools"] = std::move(pools);
  ordered_json rewired = ordered_json::array();
  for (const RewireEntry& e : r.rewired) {
    ordered_json entry;
    entry["subject"] = e.subject;
    entry["old_witness"] = e.old_witness;
    entry["new_witness"] = e.new_witness;
    entry["half"] = e.half;
    entry["conjunct"] = e.conjunct;
    rewired.push_back(std::move(entry));
  }
  rep["rewired"] = std::move(rewired);
  j["report"] = std::move(rep);
  return j.dump(2) + "\n";
}

}  // namespace oinv2
