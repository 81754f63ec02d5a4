#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlchow/dlclass.hpp"
#include "dlchow/hecke.hpp"
#include "dlchow/schubert.hpp"
#include "dlchow/structure_cache.hpp"

namespace dlchow::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kHardCap = kMaxRank;
constexpr int kComfortCap = 6;

/// Thrown for bad values that got past CLI11 (permutations, expressions).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Text;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

Permutation parse_w(const std::string& text, int n) {
  try {
    return parse_permutation(text, n);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::string coeff_string(const QPoly& c) { return c.to_string("q"); }

void print_class(const CliConfig& cfg, const ClassReport& r, std::ostream& out) {
  switch (cfg.format) {
  case Format::Text: out << r.vector.to_string("q") << '\n'; break;
  case Format::Json: out << to_json(r) << '\n'; break;
  case Format::Csv:
    out << "w,basis_element,coefficient\n";
    for (const auto& [v, c] : r.vector.entries())
      out << csv_field(to_string(r.w)) << ',' << csv_field(to_string(v)) << ',' << csv_field(coeff_string(c)) << '\n';
    break;
  }
}

int cmd_class(const CliConfig& cfg, const std::string& w_text, const std::string& kind, const std::string& path,
              std::ostream& out) {
  Permutation w = parse_w(w_text, cfg.n);
  ClassReport r;
  try {
    r = make_class_report(w, cfg.twist, parse_class_kind(kind), parse_class_path(path));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (cfg.q) r = evaluated(r, *cfg.q);
  print_class(cfg, r, out);
  return kOk;
}

std::string group_members(const EqualityGroup& g, const std::string& sep) {
  std::string s;
  for (const auto& m : g.members) s += (s.empty() ? "" : sep) + to_string(m);
  return s;
}

int cmd_equal_classes(const CliConfig& cfg, std::ostream& out) {
  bool first = true;
  if (cfg.format == Format::Json) out << "[";
  if (cfg.format == Format::Csv) out << "group,w,explanation\n";
  std::size_t index = 0;
  auto emit = [&](const EqualityGroup& g) {
    switch (cfg.format) {
    case Format::Text: out << '{' << group_members(g, ", ") << "} " << to_string(g.reason) << '\n'; break;
    case Format::Json: {
      ordered_json j;
      j["members"] = ordered_json::array();
      for (const auto& m : g.members) j["members"].push_back(to_string(m));
      j["explanation"] = to_string(g.reason);
      out << (first ? "" : ",") << '\n' << j.dump();
      break;
    }
    case Format::Csv:
      for (const auto& m : g.members)
        out << index << ',' << csv_field(to_string(m)) << ',' << to_string(g.reason) << '\n';
      break;
    }
    first = false;
    ++index;
    out.flush();
  };
  equality_classes(cfg.n, emit, cfg.jobs);
  if (cfg.format == Format::Json) out << (first ? "]" : "\n]") << '\n';
  if (cfg.format == Format::Text && first) out << "no nontrivial groups\n";
  return kOk;
}

std::string det_string(const CliConfig& cfg, const QPoly& det) {
  if (cfg.q) return det.eval(*cfg.q).to_string();
  return "±" + to_string(factor_cyclotomic(det, 2 * cfg.n));
}

int cmd_transition(const CliConfig& cfg, std::ostream& out) {
  TransitionMatrix t = transition_matrix(cfg.n, cfg.twist, cfg.jobs);
  auto entry = [&](std::size_t i, std::size_t j) {
    const QPoly& c = t.entries[i][j];
    return cfg.q ? c.eval(*cfg.q).to_string() : coeff_string(c);
  };
  const std::size_t size = t.index.size();
  switch (cfg.format) {
  case Format::Text: {
    out << "columns:";
    for (const auto& w : t.index) out << " [X(" << to_string(w) << ")]";
    out << '\n';
    for (std::size_t i = 0; i < size; ++i) {
      out << '[' << to_string(t.index[i]) << "]:";
      for (std::size_t j = 0; j < size; ++j) out << ' ' << entry(i, j);
      out << '\n';
    }
    out << "det = " << det_string(cfg, t.det) << '\n';
    break;
  }
  case Format::Json: {
    ordered_json j;
    j["n"] = t.n;
    j["twist"] = to_string(t.twist);
    j["index"] = ordered_json::array();
    for (const auto& w : t.index) j["index"].push_back(to_string(w));
    j["matrix"] = ordered_json::array();
    for (std::size_t r = 0; r < size; ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < size; ++c) row.push_back(entry(r, c));
      j["matrix"].push_back(std::move(row));
    }
    j["det"] = cfg.q ? t.det.eval(*cfg.q).to_string() : coeff_string(t.det);
    j["det_factored"] = det_string(cfg, t.det);
    out << j.dump() << '\n';
    break;
  }
  case Format::Csv:
    out << "row,column,entry\n";
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c)
        if (!t.entries[r][c].is_zero())
          out << csv_field(to_string(t.index[r])) << ',' << csv_field(to_string(t.index[c])) << ','
              << csv_field(entry(r, c)) << '\n';
    break;
  }
  return kOk;
}

int cmd_components(const CliConfig& cfg, const std::string& w_text, const std::string& kind_text,
                   std::ostream& out) {
  Permutation w = parse_w(w_text, cfg.n);
  ClassKind kind = parse_class_kind(kind_text);
  QPoly count;
  switch (kind) {
  case ClassKind::DLFrobenius: count = components_X(w, cfg.twist); break;
  case ClassKind::RegSemisimple: count = QPoly(Rational(components_Y_ss(w))); break;
  case ClassKind::RegUnipotent: count = QPoly(1); break;
  }
  std::string text = cfg.q ? count.eval(*cfg.q).to_string() : coeff_string(count);
  switch (cfg.format) {
  case Format::Text: out << text << '\n'; break;
  case Format::Json: {
    ordered_json j;
    j["n"] = cfg.n;
    j["w"] = to_string(w);
    j["twist"] = to_string(cfg.twist);
    j["kind"] = to_string(kind);
    j["components"] = text;
    out << j.dump() << '\n';
    break;
  }
  case Format::Csv: out << "w,kind,components\n" << csv_field(to_string(w)) << ',' << to_string(kind) << ',' << csv_field(text) << '\n'; break;
  }
  return kOk;
}

int cmd_hecke(const CliConfig& cfg, const std::string& expr, std::ostream& out) {
  HeckeElement h(cfg.n);
  try {
    h = parse_hecke(expr, cfg.n);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  switch (cfg.format) {
  case Format::Text: out << h.to_string() << '\n'; break;
  case Format::Json: {
    ordered_json j;
    j["n"] = cfg.n;
    j["expr"] = expr;
    j["result"] = h.to_string();
    j["coords"] = ordered_json::array();
    for (const auto& [w, c] : h.coords()) j["coords"].push_back({{"T", to_string(w)}, {"coeff", c.to_string("x")}});
    out << j.dump() << '\n';
    break;
  }
  case Format::Csv:
    out << "basis_element,coefficient\n";
    for (const auto& [w, c] : h.coords()) out << csv_field(to_string(w)) << ',' << csv_field(c.to_string("x")) << '\n';
    break;
  }
  return kOk;
}

int cmd_schubert(const CliConfig& cfg, const std::string& w_text, std::ostream& out) {
  Permutation w = parse_w(w_text, cfg.n);
  std::string poly = schubert_poly(w).to_string();
  switch (cfg.format) {
  case Format::Text: out << poly << '\n'; break;
  case Format::Json: {
    ordered_json j;
    j["n"] = cfg.n;
    j["w"] = to_string(w);
    j["polynomial"] = poly;
    out << j.dump() << '\n';
    break;
  }
  case Format::Csv: out << "w,polynomial\n" << csv_field(to_string(w)) << ',' << csv_field(poly) << '\n'; break;
  }
  return kOk;
}

} // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("DLCHOW_CACHE"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(".dlchow-cache");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chow classes of Deligne-Lusztig varieties in type A", "dlchow"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  CliConfig cfg;
  std::string twist = "trivial", format = "text", cache_dir, q_text;
  std::string w_text, kind = "dl", path = "pairs", expr;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Rank: work in S_n")->required();
    sub->add_option("--twist", twist, "Frobenius action on W")->check(CLI::IsMember({"trivial", "w0"}));
    sub->add_option("--q", q_text, "Evaluate symbolic results at this value of q");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--cache-dir", cache_dir, "Structure-constant cache directory");
    sub->add_flag("--strict-cache", cfg.strictCache, "Exit with code 4 if a corrupt cache was rebuilt");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  };

  CLI::App* class_cmd = app.add_subcommand("class", "Class of a variety in the Schubert cycle basis");
  common(class_cmd);
  class_cmd->add_option("--w", w_text, "Permutation (word like \"s1 s2\" or one-line like 2,3,1)")->required();
  class_cmd->add_option("--kind", kind, "dl: X(w), ss: Y_{w,s}, unip: Y_{w,u}")
      ->check(CLI::IsMember({"dl", "ss", "unip"}));
  class_cmd->add_option("--path", path, "Computation route for dl classes")
      ->check(CLI::IsMember({"pairs", "divided-difference"}));

  CLI::App* equal_cmd = app.add_subcommand("equal-classes", "Groups of w with equal regular semisimple classes");
  common(equal_cmd);

  CLI::App* transition_cmd = app.add_subcommand("transition", "Transition matrix from cycles to DL classes");
  common(transition_cmd);

  CLI::App* components_cmd = app.add_subcommand("components", "Number of irreducible components");
  common(components_cmd);
  components_cmd->add_option("--w", w_text, "Permutation")->required();
  components_cmd->add_option("--kind", kind, "dl, ss or unip")->check(CLI::IsMember({"dl", "ss", "unip"}));

  CLI::App* hecke_cmd = app.add_subcommand("hecke", "Evaluate an expression in the Hecke algebra");
  common(hecke_cmd);
  hecke_cmd->add_option("--expr", expr, "Expression such as \"T[s1]*T[s1]\"")->required();

  CLI::App* schubert_cmd = app.add_subcommand("schubert", "Schubert polynomial of w");
  common(schubert_cmd);
  schubert_cmd->add_option("--w", w_text, "Permutation")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kParseError;
  }

  if (cfg.n > kHardCap) {
    err << "error: n = " << cfg.n << " exceeds the supported maximum " << kHardCap << '\n';
    return kResourceCap;
  }
  if (cfg.n < 1) {
    err << "error: n must be at least 1\n";
    return kParseError;
  }
  if (cfg.n > kComfortCap) err << "warning: n = " << cfg.n << " may take a very long time\n";

  try {
    cfg.twist = parse_twist(twist);
    cfg.format = parse_format(format);
    if (!q_text.empty()) cfg.q = Rational::parse(q_text);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  cfg.cacheDir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);

  CacheRegistry& registry = CacheRegistry::instance();
  registry.reset();
  registry.set_directory(cfg.cacheDir);
  struct RegistryGuard {
    CacheRegistry& r;
    ~RegistryGuard() {
      r.reset();
      r.clear_directory();
    }
  } guard{registry};

  int rc = kOk;
  try {
    registry.cache(cfg.n);
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == class_cmd) rc = cmd_class(cfg, w_text, kind, path, out);
    else if (chosen == equal_cmd) rc = cmd_equal_classes(cfg, out);
    else if (chosen == transition_cmd) rc = cmd_transition(cfg, out);
    else if (chosen == components_cmd) rc = cmd_components(cfg, w_text, kind, out);
    else if (chosen == hecke_cmd) rc = cmd_hecke(cfg, expr, out);
    else rc = cmd_schubert(cfg, w_text, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  bool rebuilt = false;
  for (const auto& [n, report] : registry.reports()) {
    if (!report.corruption_detected) continue;
    rebuilt = true;
    err << "warning: structure-constant cache for n = " << n << " was corrupt and has been rebuilt ("
        << report.discarded_lines << " line(s) discarded)\n";
  }
  if (rebuilt && cfg.strictCache && rc == kOk) return kCacheRebuilt;
  return rc;
}

} // namespace dlchow::cli
