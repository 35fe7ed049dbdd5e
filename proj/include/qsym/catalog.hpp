#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "qsym/satake.hpp"

#ifndef QSYM_CATALOG_PATH
#define QSYM_CATALOG_PATH "data/satake_catalog.json"
#endif

namespace qsym {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Bindings = std::map<std::string, long>;

/// Integer expressions over named parameters: + - * / %, comparisons, && and ||.
class IndexExpr {
 public:
  static long eval(const std::string& text, const Bindings& vars) {
    IndexExpr p(text, vars);
    const long v = p.parse_or();
    p.skip();
    if (p.pos_ != text.size()) p.fail("unexpected trailing input");
    return v;
  }

 private:
  const std::string& s_;
  const Bindings& vars_;
  std::size_t pos_ = 0;

  IndexExpr(const std::string& s, const Bindings& v) : s_(s), vars_(v) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw CatalogError("expression '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const char* tok) {
    skip();
    const std::size_t len = std::char_traits<char>::length(tok);
    if (s_.compare(pos_, len, tok) == 0) {
      pos_ += len;
      return true;
    }
    return false;
  }
  long parse_or() {
    long v = parse_and();
    while (eat("||")) {
      const long r = parse_and();
      v = (v || r) ? 1 : 0;
    }
    return v;
  }
  long parse_and() {
    long v = parse_cmp();
    while (eat("&&")) {
      const long r = parse_cmp();
      v = (v && r) ? 1 : 0;
    }
    return v;
  }
  long parse_cmp() {
    const long v = parse_add();
    if (eat("==")) return v == parse_add();
    if (eat("!=")) return v != parse_add();
    if (eat("<=")) return v <= parse_add();
    if (eat(">=")) return v >= parse_add();
    if (eat("<")) return v < parse_add();
    if (eat(">")) return v > parse_add();
    return v;
  }
  long parse_add() {
    long v = parse_mul();
    for (;;) {
      if (eat("+")) v += parse_mul();
      else if (eat("-")) v -= parse_mul();
      else return v;
    }
  }
  long parse_mul() {
    long v = parse_unary();
    for (;;) {
      if (eat("*")) {
        v *= parse_unary();
      } else if (eat("/")) {
        const long d = parse_unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else if (eat("%")) {
        const long d = parse_unary();
        if (d == 0) fail("modulo by zero");
        v %= d;
      } else {
        return v;
      }
    }
  }
  long parse_unary() {
    if (eat("-")) return -parse_unary();
    return parse_primary();
  }
  long parse_primary() {
    skip();
    if (eat("(")) {
      const long v = parse_or();
      if (!eat(")")) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
      return v;
    }
    std::string name;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      name += s_[pos_++];
    if (name.empty()) fail("expected a number, a name or '('");
    auto it = vars_.find(name);
    if (it == vars_.end()) fail("unknown name '" + name + "'");
    return it->second;
  }
};

/// One family of Satake diagrams, parameterised by the rank n and optional extras.
struct CatalogFamily {
  std::string label;
  char type = 'A';
  std::vector<std::string> params;  // extra parameter names besides n
  std::string notes;
  nlohmann::json spec;
};

struct CatalogInstance {
  std::string label;
  long n = 0;
  Bindings params;
};

class Catalog {
 public:
  static Catalog load(const std::string& path = QSYM_CATALOG_PATH) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalogue file " + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw CatalogError(std::string("catalogue is not valid JSON: ") + e.what());
    }
    return from_json(j);
  }

  static Catalog from_json(const nlohmann::json& j) {
    Catalog c;
    if (!j.is_object() || !j.contains("families") || !j["families"].is_array())
      throw CatalogError("catalogue must be an object with a 'families' array");
    for (const auto& f : j["families"]) {
      CatalogFamily fam;
      fam.label = f.at("pair_label").get<std::string>();
      const std::string type = f.at("ambient_type").get<std::string>();
      if (type.size() != 1 || std::string("ABCDEFG").find(type[0]) == std::string::npos)
        throw CatalogError("family " + fam.label + ": bad type '" + type + "'");
      fam.type = type[0];
      if (f.contains("params")) fam.params = f["params"].get<std::vector<std::string>>();
      fam.notes = f.value("notes", "");
      fam.spec = f;
      c.families_.push_back(std::move(fam));
    }
    if (j.contains("instances"))
      for (const auto& s : j["instances"]) {
        CatalogInstance e;
        e.label = s.at("pair_label").get<std::string>();
        e.n = s.at("n").get<long>();
        for (const auto& [k, v] : s.items())
          if (k != "pair_label" && k != "n") e.params[k] = v.get<long>();
        c.instances_.push_back(std::move(e));
      }
    return c;
  }

  const std::vector<CatalogFamily>& families() const { return families_; }
  const std::vector<CatalogInstance>& instances() const { return instances_; }

  const CatalogFamily& family(const std::string& label) const {
    for (const auto& f : families_)
      if (f.label == label) return f;
    throw CatalogError("unknown Satake label '" + label + "'");
  }

  /// Instantiates a family at rank n with the given extra parameters.
  SatakeDatum datum(const std::string& label, long n, const Bindings& extra = {}) const {
    const CatalogFamily& fam = family(label);
    Bindings vars = extra;
    vars["n"] = n;
    for (const auto& p : fam.params)
      if (!vars.count(p)) throw CatalogError("family " + label + " needs parameter '" + p + "'");
    for (const auto& cond : fam.spec.value("constraints", std::vector<std::string>{}))
      if (!IndexExpr::eval(cond, vars))
        throw CatalogError("family " + label + " at n=" + std::to_string(n) + " violates '" + cond + "'");
    nlohmann::json body = fam.spec;
    if (fam.spec.contains("variants")) {
      bool found = false;
      for (const auto& v : fam.spec["variants"])
        if (IndexExpr::eval(v.at("when").get<std::string>(), vars)) {
          body = v;
          found = true;
          break;
        }
      if (!found) throw CatalogError("family " + label + ": no variant applies");
    }
    std::vector<int> black;
    for (long i : expand_set(body.value("theta_fixed", nlohmann::json::array()), vars)) black.push_back(check(i, n));
    std::vector<std::pair<int, int>> arrows;
    for (const auto& [a, b] : expand_pairs(body.value("perm", nlohmann::json::array()), vars))
      if (a != b) arrows.emplace_back(check(a, n), check(b, n));
    std::string name = label + "(" + std::string(1, fam.type) + std::to_string(n);
    for (const auto& p : fam.params) name += "," + p + "=" + std::to_string(vars.at(p));
    name += ")";
    return SatakeDatum::from_arrows(name, CartanDatum::standard(fam.type, static_cast<int>(n)), black, arrows);
  }

  SymmetricPair pair(const std::string& label, long n, const Bindings& extra = {}) const {
    return SymmetricPair(datum(label, n, extra));
  }

 private:
  std::vector<CatalogFamily> families_;
  std::vector<CatalogInstance> instances_;

  static int check(long i, long n) {
    if (i < 1 || i > n) throw CatalogError("node index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    return static_cast<int>(i - 1);
  }

  static long ev(const nlohmann::json& e, const Bindings& vars) {
    if (e.is_number_integer()) return e.get<long>();
    if (e.is_string()) return IndexExpr::eval(e.get<std::string>(), vars);
    throw CatalogError("index must be an integer or an expression string");
  }

  static std::vector<long> expand_set(const nlohmann::json& items, const Bindings& vars) {
    std::vector<long> out;
    for (const auto& it : items) {
      if (it.is_object()) {
        const long from = ev(it.at("from"), vars), to = ev(it.at("to"), vars);
        const long step = it.contains("step") ? ev(it["step"], vars) : 1;
        if (step <= 0) throw CatalogError("range step must be positive");
        for (long i = from; i <= to; i += step) out.push_back(i);
      } else {
        out.push_back(ev(it, vars));
      }
    }
    return out;
  }

  static std::vector<std::pair<long, long>> expand_pairs(const nlohmann::json& items, const Bindings& vars) {
    std::vector<std::pair<long, long>> out;
    for (const auto& it : items) {
      if (it.is_array()) {
        if (it.size() != 2) throw CatalogError("arrow must have two endpoints");
        out.emplace_back(ev(it[0], vars), ev(it[1], vars));
      } else if (it.is_object()) {
        const std::string var = it.at("for").get<std::string>();
        const long from = ev(it.at("from"), vars), to = ev(it.at("to"), vars);
        for (long i = from; i <= to; ++i) {
          Bindings local = vars;
          local[var] = i;
          out.emplace_back(ev(it.at("pair")[0], local), ev(it.at("pair")[1], local));
        }
      } else {
        throw CatalogError("arrow entries must be pairs or generators");
      }
    }
    return out;
  }
};

}  // namespace qsym
