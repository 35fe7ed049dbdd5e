// Command-line harness: catalog browser, pair dumps, lemma verification and suites.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qsym/verify.hpp"

namespace {

using qsym::Catalog;
using qsym::VerificationReport;
using qsym::VerifyParams;
using nlohmann::json;

constexpr int kUsage = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string rational_list(const qsym::RVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string vec_text(const qsym::Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

json pair_summary(const std::string& family, long n, const qsym::Bindings& extra, const qsym::SymmetricPair& pair) {
  const auto sets = pair.special_sets();
  const auto lc = pair.lattice_compare();
  json arrows = json::array();
  for (int i = 0; i < pair.rank(); ++i)
    if (!pair.is_black(i) && pair.datum().perm[i] > i) arrows.push_back({i + 1, pair.datum().perm[i] + 1});
  json black = json::array(), s_set = json::array(), d_set = json::array();
  for (int b : pair.datum().black) black.push_back(b + 1);
  for (int i : sets.s_set) s_set.push_back(i + 1);
  for (int i : sets.d_set) d_set.push_back(i + 1);
  json j{{"pair", family},          {"n", n},           {"label", pair.label()},      {"sigma", pair.sigma_label()},
         {"bc", pair.is_bc()},      {"theta_fixed", black}, {"arrows", arrows},       {"S", s_set},
         {"D", d_set},              {"plus_equal", lc.plus_equal}, {"full_equal", lc.full_equal}};
  for (const auto& [k, v] : extra) j[k] = v;
  return j;
}

std::string list_labels(const Catalog& cat) {
  std::string s;
  for (const auto& f : cat.families()) s += (s.empty() ? "" : ", ") + f.label;
  return s;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  out << text;
}

std::string render_reports(const std::vector<VerificationReport>& reports, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "[" << qsym::to_string(r.status) << "] " << r.lemma_id << " " << r.params.dump() << "\n";
    os << "  expected: " << r.expected.dump() << "\n";
    os << "  computed: " << r.computed.dump() << "\n";
    if (r.certificate) os << "  certificate: " << r.certificate->dump() << "\n";
    if (r.ms) os << "  ms: " << r.ms << "\n";
  }
  std::size_t pass = 0, fail = 0, inc = 0;
  for (const auto& r : reports)
    (r.status == qsym::Status::pass ? pass : r.status == qsym::Status::fail ? fail : inc)++;
  os << pass << " passed, " << fail << " failed, " << inc << " inconclusive\n";
  return os.str();
}

/// Line number (1-based) of the opening brace of each element of the top-level "runs" array.
std::vector<int> run_lines(const std::string& text) {
  std::vector<int> lines;
  int line = 1, depth = 0;
  bool in_string = false, escaped = false, in_runs = false;
  std::string last_key, token;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
        if (depth == 1) last_key = token;
      } else {
        token += c;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      token.clear();
    } else if (c == '{' || c == '[') {
      if (depth == 1 && c == '[' && last_key == "runs") in_runs = true;
      if (depth == 2 && in_runs && c == '{') lines.push_back(line);
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
      if (depth == 1) in_runs = false;
    }
  }
  return lines;
}

VerifyParams params_from_json(const json& j, const VerifyParams& base, const std::string& where) {
  static const std::vector<std::string> known{"lemma", "pair", "n", "p", "sigma", "r", "k", "i", "s", "all"};
  VerifyParams p = base;
  for (const auto& [key, val] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(where + ": unknown key '" + key + "'");
  auto integer = [&](const char* key) -> std::optional<long> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_integer()) throw ConfigError(where + ": '" + key + "' must be an integer");
    return j[key].get<long>();
  };
  auto string = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) throw ConfigError(where + ": '" + key + "' must be a string");
    return j[key].get<std::string>();
  };
  p.pair = string("pair");
  p.sigma = string("sigma");
  p.n = integer("n");
  p.p = integer("p");
  auto small = [&](const char* key) -> std::optional<int> {
    auto v = integer(key);
    return v ? std::optional<int>(static_cast<int>(*v)) : std::nullopt;
  };
  p.r = small("r");
  p.k = small("k");
  p.i = small("i");
  p.s = small("s");
  if (j.contains("all")) {
    if (!j["all"].is_boolean()) throw ConfigError(where + ": 'all' must be true or false");
    p.all = j["all"].get<bool>();
  }
  return p;
}

std::vector<VerificationReport> run_suite(const Catalog& cat, const std::string& path, const VerifyParams& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    for (std::size_t k = 0; k < std::min<std::size_t>(e.byte, text.size()); ++k)
      if (text[k] == '\n') ++line;
    throw ConfigError(path + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!cfg.is_object() || !cfg.contains("runs") || !cfg["runs"].is_array())
    throw ConfigError(path + ":1: config must be an object with a 'runs' array");
  for (const auto& [key, val] : cfg.items())
    if (key != "runs" && key != "max_n")
      throw ConfigError(path + ":1: unknown top-level key '" + key + "'");
  std::optional<long> max_n;
  if (cfg.contains("max_n")) {
    if (!cfg["max_n"].is_number_integer()) throw ConfigError(path + ":1: 'max_n' must be an integer");
    max_n = cfg["max_n"].get<long>();
  }
  const auto lines = run_lines(text);
  std::vector<VerificationReport> all;
  for (std::size_t idx = 0; idx < cfg["runs"].size(); ++idx) {
    const json& run = cfg["runs"][idx];
    const std::string where =
        path + ":" + std::to_string(idx < lines.size() ? lines[idx] : 1) + ": runs[" + std::to_string(idx) + "]";
    if (!run.is_object()) throw ConfigError(where + ": each run must be an object");
    if (!run.contains("lemma") || !run["lemma"].is_string()) throw ConfigError(where + ": missing string 'lemma'");
    const VerifyParams p = params_from_json(run, base, where);
    if (max_n && p.n && *p.n > *max_n) continue;
    std::vector<VerificationReport> reps;
    try {
      reps = qsym::verify(cat, run["lemma"].get<std::string>(), p);
    } catch (const qsym::UsageError& e) {
      throw ConfigError(where + ": " + e.what());
    }
    for (auto& r : reps) {
      if (max_n && r.params.contains("n") && r.params["n"].get<long>() > *max_n) continue;
      all.push_back(std::move(r));
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.lemma_id != b.lemma_id) return a.lemma_id < b.lemma_id;
    return a.params.dump() < b.params.dump();
  });
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric pairs, restricted roots and Harish-Chandra images"};
  app.require_subcommand(1);
  std::string catalog_path = QSYM_CATALOG_PATH, format = "human", out_path;
  VerifyParams prm;
  long seed = 0;
  app.add_option("--catalog", catalog_path, "Satake catalogue JSON");
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--out", out_path, "Write output to this file");
    sub->add_option("--seed", seed, "Accepted for reproducibility scripts; unused");
    sub->add_option("--max-orbit", prm.limits.max_orbit, "Largest Weyl orbit to enumerate");
    sub->add_option("--max-dim", prm.limits.max_dim_terms, "Largest orbit-point count of a character");
    sub->add_flag("--timing", prm.timing, "Record wall-clock milliseconds in reports");
  };

  auto* catalog_cmd = app.add_subcommand("catalog", "Browse the Satake catalogue");
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List catalogue instances with lattice verdicts");
  catalog_cmd->require_subcommand(1);
  add_common(list_cmd);

  auto* info_cmd = app.add_subcommand("pair_info", "Dump one symmetric pair");
  std::string info_label;
  long info_n = 0;
  std::optional<long> info_p;
  info_cmd->add_option("label", info_label, "Family label, e.g. AII")->required();
  info_cmd->add_option("rank", info_n, "Rank n")->required();
  info_cmd->add_option("--p", info_p, "Family parameter p");
  add_common(info_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check one lemma");
  std::string lemma;
  verify_cmd->add_option("lemma_id", lemma, "Lemma id")->required();
  verify_cmd->add_option("--pair", prm.pair, "Family label");
  verify_cmd->add_option("--n,--rank", prm.n, "Rank");
  verify_cmd->add_option("--p", prm.p, "Family parameter p");
  verify_cmd->add_option("--sigma", prm.sigma, "Abstract restricted type, e.g. A3 or C4");
  verify_cmd->add_option("--r", prm.r);
  verify_cmd->add_option("--k", prm.k);
  verify_cmd->add_option("--i", prm.i);
  verify_cmd->add_option("--s", prm.s);
  verify_cmd->add_flag("--all", prm.all, "Sweep every applicable catalogue instance or parameter");
  add_common(verify_cmd);

  auto* suite_cmd = app.add_subcommand("run_suite", "Run a JSON list of verifications");
  std::string config_path;
  suite_cmd->add_option("config", config_path, "Suite configuration")->required();
  add_common(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    const Catalog cat = Catalog::load(catalog_path);
    if (list_cmd->parsed()) {
      json rows = json::array();
      std::ostringstream os;
      for (const auto& inst : cat.instances()) {
        const auto pair = cat.pair(inst.label, inst.n, inst.params);
        rows.push_back(pair_summary(inst.label, inst.n, inst.params, pair));
      }
      if (format == "json") {
        os << rows.dump(2) << "\n";
      } else {
        for (const auto& r : rows)
          os << r["label"].get<std::string>() << "  sigma=" << r["sigma"].get<std::string>()
             << "  theta_fixed=" << r["theta_fixed"].dump() << "  arrows=" << r["arrows"].dump()
             << "  S=" << r["S"].dump() << "  D=" << r["D"].dump() << "  plus_equal=" << r["plus_equal"].dump()
             << "  full_equal=" << r["full_equal"].dump() << "\n";
      }
      emit(os.str(), out_path);
      return 0;
    }
    if (info_cmd->parsed()) {
      bool known = false;
      for (const auto& f : cat.families()) known = known || f.label == info_label;
      if (!known) {
        std::cerr << "unknown pair label '" << info_label << "'; available: " << list_labels(cat) << "\n";
        return kUsage;
      }
      qsym::Bindings extra;
      if (info_p) extra["p"] = *info_p;
      const auto pair = cat.pair(info_label, info_n, extra);
      json j = pair_summary(info_label, info_n, extra, pair);
      json roots = json::array();
      const auto& amb = pair.ambient();
      for (std::size_t k = 0; k < pair.pi_star().size(); ++k) {
        const int node = pair.pi_star()[k];
        const qsym::RVec& at = pair.restricted_simple_roots()[k];
        roots.push_back({{"node", node + 1},
                         {"case", pair.case_tag(static_cast<int>(k))},
                         {"simple_root_coordinates", rational_list(amb.to_simple_root({qsym::Basis::fundamental, at}).coords)},
                         {"theta_of_simple_root", vec_text(pair.theta_root_coords(node))}});
      }
      j["restricted_simple_roots"] = roots;
      json om = json::array();
      for (int i = 0; i < pair.rank(); ++i) om.push_back(vec_text(pair.omega_tilde(i)));
      j["omega_tilde"] = om;
      if (format == "json") {
        emit(j.dump(2) + "\n", out_path);
      } else {
        std::ostringstream os;
        for (const auto& [k, v] : j.items()) os << k << ": " << v.dump() << "\n";
        emit(os.str(), out_path);
      }
      return 0;
    }
    std::vector<VerificationReport> reports;
    if (verify_cmd->parsed()) reports = qsym::verify(cat, lemma, prm);
    if (suite_cmd->parsed()) reports = run_suite(cat, config_path, prm);
    emit(render_reports(reports, format), out_path);
    return qsym::exit_code(reports);
  } catch (const qsym::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const qsym::CatalogError& e) {
    std::cerr << "catalogue error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
