#include "runconfig.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>

#include "CLI11.hpp"
#include "qkzr/chain.hpp"
#include "version.hpp"

namespace qkzr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  size_t start = 0;
  for (;;) {
    const size_t comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

long long parse_integer(const std::string& text, const std::string& message) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError(message);
  return v;
}

uint64_t parse_seed(const std::string& text, const std::string& message) {
  const std::string t = trim(text);
  uint64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ConfigError(message);
  return v;
}

Rational parse_rational_field(const std::string& text, const std::string& message) {
  try {
    return parse_rational(trim(text));
  } catch (const std::exception&) {
    throw ConfigError(message);
  }
}

Suite parse_suite(const std::string& s) {
  static const std::map<std::string, Suite> table = {
      {"r-axioms", Suite::RAxioms},     {"omega", Suite::Omega},
      {"chain", Suite::Chain},          {"correspondence", Suite::Correspondence},
      {"det-identity", Suite::DetIdentity}, {"degeneracy", Suite::Degeneracy},
      {"sign-flip", Suite::SignFlip},   {"all", Suite::All},
  };
  const auto it = table.find(trim(s));
  if (it == table.end())
    throw ConfigError("unknown suite \"" + s +
                      "\" (expected r-axioms, omega, chain, correspondence, det-identity, "
                      "degeneracy, sign-flip or all)");
  return it->second;
}

Backend parse_backend(const std::string& s) {
  const std::string t = trim(s);
  if (t == "exact") return Backend::Exact;
  if (t == "float") return Backend::Float;
  throw ConfigError("unknown backend \"" + s + "\" (expected exact or float)");
}

RFamily parse_family(const std::string& s) {
  static const std::map<std::string, RFamily> table = {
      {"rational-plus", RFamily::RationalPlus},
      {"rational-minus", RFamily::RationalMinus},
      {"trig-plus", RFamily::TrigPlus},
      {"trig-minus", RFamily::TrigMinus},
  };
  const auto it = table.find(trim(s));
  if (it == table.end())
    throw ConfigError("unknown family \"" + s +
                      "\" (expected rational-plus, rational-minus, trig-plus or trig-minus)");
  return it->second;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "suite", "K",       "grading", "n",       "weights", "twist",      "family",
      "eta",   "hbar",    "q",       "w",       "kappa",   "positions",  "samples",
      "seed",  "backend", "output",  "golden-dir", "timings",
  };
  return keys;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file " + path + " line " + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (!known_keys().count(key)) throw ConfigError("unknown config key \"" + key + "\"");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

// The families whose pole structure the fixed positions must avoid, given
// what the suite is going to run.
std::vector<RFamily> position_check_families(Suite s, RFamily f) {
  const std::vector<RFamily> rational = {RFamily::RationalPlus, RFamily::RationalMinus};
  const std::vector<RFamily> trig = {RFamily::TrigPlus, RFamily::TrigMinus};
  switch (s) {
    case Suite::RAxioms:
    case Suite::Omega:
      return {};
    case Suite::Chain:
    case Suite::All:
      return {RFamily::RationalPlus, RFamily::RationalMinus, RFamily::TrigPlus,
              RFamily::TrigMinus};
    case Suite::Correspondence:
    case Suite::Degeneracy:
      return is_rational_family(f) ? rational : trig;
    case Suite::DetIdentity:
      return rational;
    case Suite::SignFlip:
      return trig;
  }
  return {};
}

void check_positions(const RunConfig& cfg) {
  for (RFamily f : position_check_families(cfg.suite, cfg.family)) {
    ChainConfig<Rational> cc;
    cc.grading = make_grading(cfg.K, {});
    cc.positions = cfg.positions;
    cc.twist = cfg.twist;
    cc.params = is_rational_family(f) ? RParams<Rational>{cfg.eta, cfg.hbar}
                                      : RParams<Rational>{cfg.q, cfg.w};
    cc.kappa = cfg.kappa;
    try {
      validate_chain_config(cc, f);
    } catch (const SingularSpectralParameter& e) {
      throw ConfigError(std::string("positions are singular for ") + family_name(f) + ": " +
                        e.what());
    }
  }
}

}  // namespace

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::RAxioms: return "r-axioms";
    case Suite::Omega: return "omega";
    case Suite::Chain: return "chain";
    case Suite::Correspondence: return "correspondence";
    case Suite::DetIdentity: return "det-identity";
    case Suite::Degeneracy: return "degeneracy";
    case Suite::SignFlip: return "sign-flip";
    case Suite::All: return "all";
  }
  return "?";
}

const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

std::string family_flag(RFamily f) {
  switch (f) {
    case RFamily::RationalPlus: return "rational-plus";
    case RFamily::RationalMinus: return "rational-minus";
    case RFamily::TrigPlus: return "trig-plus";
    case RFamily::TrigMinus: return "trig-minus";
  }
  return "?";
}

std::string RunConfig::grading_str() const {
  if (grading_sweep) return "sweep";
  std::string s = "bosons=";
  bool first = true;
  for (int b : bosons) {
    if (!first) s += ",";
    s += std::to_string(b);
    first = false;
  }
  return s;
}

std::vector<Rational> default_positions(int n, const Rational& eta, const Rational& hbar,
                                        const Rational& q, const Rational& w) {
  const auto valid = [&](const std::vector<Rational>& pos) {
    ChainConfig<Rational> cc;
    cc.grading = make_grading(1, {1});
    cc.twist = {Rational(1)};
    cc.positions = pos;
    for (RFamily f : {RFamily::RationalPlus, RFamily::RationalMinus, RFamily::TrigPlus,
                      RFamily::TrigMinus}) {
      cc.params = is_rational_family(f) ? RParams<Rational>{eta, hbar} : RParams<Rational>{q, w};
      try {
        validate_chain_config(cc, f);
      } catch (const SingularSpectralParameter&) {
        return false;
      }
    }
    return true;
  };

  std::vector<Rational> candidates = {Rational(2), Rational(7, 2), Rational(5), Rational(8)};
  for (int k = 9; k <= 500; ++k) candidates.push_back(Rational(k));

  std::vector<Rational> out;
  for (const Rational& c : candidates) {
    if (static_cast<int>(out.size()) == n) break;
    std::vector<Rational> trial = out;
    trial.push_back(c);
    if (valid(trial)) out = std::move(trial);
  }
  if (static_cast<int>(out.size()) != n)
    throw ConfigError("could not find default positions for these couplings; pass --positions");
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{
      "Checks the graded R-matrix, covector and spin-chain identities and writes a JSON "
      "report."};
  app.name(kToolName);

  std::map<std::string, std::string> raw;
  for (const std::string& key : known_keys()) raw[key];
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file; flags override its entries");
  app.add_option("--suite", raw["suite"],
                 "r-axioms|omega|chain|correspondence|det-identity|degeneracy|sign-flip|all");
  app.add_option("--K", raw["K"], "number of letters (1..6)");
  app.add_option("--grading", raw["grading"],
                 "\"sweep\" or \"bosons=1,2\"; letters not listed are fermions");
  app.add_option("--n", raw["n"], "number of chain sites (1..8)");
  app.add_option("--weights", raw["weights"],
                 "comma-separated letter multiplicities summing to n; empty sweeps all");
  app.add_option("--twist", raw["twist"], "comma-separated rational twist values g_a");
  app.add_option("--family", raw["family"],
                 "rational-plus|rational-minus|trig-plus|trig-minus");
  app.add_option("--eta", raw["eta"], "coupling of the rational families");
  app.add_option("--hbar", raw["hbar"], "shift of the rational families");
  app.add_option("--q", raw["q"], "multiplicative coupling of the trig families");
  app.add_option("--w", raw["w"], "multiplicative shift of the trig families");
  app.add_option("--kappa", raw["kappa"], "Gaudin coupling");
  app.add_option("--positions", raw["positions"], "comma-separated rational site positions");
  app.add_option("--samples", raw["samples"], "random sample count per check group");
  app.add_option("--seed", raw["seed"], "RNG seed; QKZR_SEED supplies the default");
  app.add_option("--backend", raw["backend"], "exact|float");
  app.add_option("--output", raw["output"], "write the JSON report here instead of stdout");
  app.add_option("--golden-dir", raw["golden-dir"],
                 "directory holding covector coefficient tables");
  bool timings_flag = false;
  app.add_flag("--timings", timings_flag, "record wall clock per check in the report");

  std::vector<const char*> argv;
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::map<std::string, std::string> file_vals;
  if (!config_path.empty()) file_vals = load_config_file(config_path);

  const auto has = [&](const std::string& key) {
    return app.count("--" + key) > 0 || file_vals.count(key) > 0;
  };
  const auto value = [&](const std::string& key) -> std::string {
    if (app.count("--" + key) > 0) return raw[key];
    const auto it = file_vals.find(key);
    return it == file_vals.end() ? std::string() : it->second;
  };

  RunConfig cfg;
#ifdef QKZR_DEFAULT_GOLDEN_DIR
  cfg.golden_dir = QKZR_DEFAULT_GOLDEN_DIR;
#endif

  if (has("suite")) cfg.suite = parse_suite(value("suite"));
  if (has("backend")) cfg.backend = parse_backend(value("backend"));
  if (has("family")) cfg.family = parse_family(value("family"));

  if (has("K")) {
    const long long k = parse_integer(value("K"), "K must be an integer");
    if (k < 1 || k > 6) throw ConfigError("K must be between 1 and 6");
    cfg.K = static_cast<int>(k);
  }
  if (has("n")) {
    const long long n = parse_integer(value("n"), "n must be an integer");
    if (n < 1 || n > 8) throw ConfigError("n must be between 1 and 8");
    cfg.n = static_cast<int>(n);
  }

  if (has("grading")) {
    const std::string g = trim(value("grading"));
    if (g == "sweep") {
      cfg.grading_sweep = true;
    } else if (g.rfind("bosons=", 0) == 0) {
      cfg.grading_sweep = false;
      cfg.bosons.clear();
      for (const std::string& item : split_list(g.substr(7))) {
        const long long b =
            parse_integer(item, "grading must be \"sweep\" or \"bosons=<comma-separated letters>\"");
        if (b < 1 || b > cfg.K) throw ConfigError("grading bosons must lie in 1..K");
        cfg.bosons.insert(static_cast<int>(b));
      }
    } else {
      throw ConfigError("grading must be \"sweep\" or \"bosons=<comma-separated letters>\"");
    }
  }

  if (has("weights") && !trim(value("weights")).empty()) {
    cfg.weights.clear();
    long long sum = 0;
    for (const std::string& item : split_list(value("weights"))) {
      const long long m =
          parse_integer(item, "weights must be a comma-separated list of integers");
      if (m < 0) throw ConfigError("weights must be non-negative");
      cfg.weights.push_back(static_cast<int>(m));
      sum += m;
    }
    if (static_cast<int>(cfg.weights.size()) != cfg.K)
      throw ConfigError("weights must list K entries");
    if (sum != cfg.n) throw ConfigError("weights must sum to n");
  }

  if (has("twist") && !trim(value("twist")).empty()) {
    cfg.twist.clear();
    for (const std::string& item : split_list(value("twist")))
      cfg.twist.push_back(
          parse_rational_field(item, "twist entries must be rationals like 3 or 7/2"));
    if (static_cast<int>(cfg.twist.size()) != cfg.K)
      throw ConfigError("twist must list K entries");
  } else {
    static const long primes[] = {2, 3, 5, 7, 11, 13};
    cfg.twist.clear();
    for (int a = 0; a < cfg.K; ++a) cfg.twist.push_back(Rational(primes[a]));
  }

  if (has("eta")) cfg.eta = parse_rational_field(value("eta"), "eta must be a rational like 1 or 7/2");
  if (sgn(cfg.eta) == 0) throw ConfigError("eta must be nonzero");
  if (has("hbar"))
    cfg.hbar = parse_rational_field(value("hbar"), "hbar must be a rational like 3 or 7/2");
  if (has("q")) cfg.q = parse_rational_field(value("q"), "q must be a rational like 2 or 5/3");
  if (sgn(cfg.q) == 0 || cfg.q == 1 || cfg.q == -1)
    throw ConfigError("q must be nonzero and distinct from 1 and -1");
  if (has("w")) cfg.w = parse_rational_field(value("w"), "w must be a rational like 3 or 7/2");
  if (sgn(cfg.w) == 0) throw ConfigError("w must be nonzero");
  if (has("kappa"))
    cfg.kappa = parse_rational_field(value("kappa"), "kappa must be a rational like 1 or 1/2");

  if (has("samples")) {
    const long long s = parse_integer(value("samples"), "samples must be an integer");
    if (s < 1) throw ConfigError("samples must be at least 1");
    if (s > 100) throw ConfigError("samples must be at most 100");
    cfg.samples = static_cast<int>(s);
  }

  if (has("seed")) {
    cfg.seed = parse_seed(value("seed"), "seed must be a non-negative integer");
  } else if (const char* env = std::getenv("QKZR_SEED")) {
    cfg.seed = parse_seed(env, "QKZR_SEED must be a non-negative integer");
  }

  if (has("output")) cfg.output = trim(value("output"));
  if (has("golden-dir")) cfg.golden_dir = trim(value("golden-dir"));
  cfg.timings = timings_flag || (file_vals.count("timings") && [&] {
                  const std::string t = trim(file_vals.at("timings"));
                  if (t == "true" || t == "1") return true;
                  if (t == "false" || t == "0") return false;
                  throw ConfigError("timings must be true or false");
                }());

  if (has("positions") && !trim(value("positions")).empty()) {
    cfg.positions.clear();
    for (const std::string& item : split_list(value("positions")))
      cfg.positions.push_back(
          parse_rational_field(item, "positions entries must be rationals like 3 or 7/2"));
    if (static_cast<int>(cfg.positions.size()) != cfg.n)
      throw ConfigError("positions must list n values");
  } else {
    cfg.positions = default_positions(cfg.n, cfg.eta, cfg.hbar, cfg.q, cfg.w);
  }
  check_positions(cfg);

  return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_config(args);
}

}  // namespace qkzr::cli
