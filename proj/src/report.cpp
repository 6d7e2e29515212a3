#include "report.hpp"

#include <cmath>
#include <ctime>

#include "json.hpp"
#include "version.hpp"

namespace qkzr::cli {

using ordered_json = nlohmann::ordered_json;

int ReportDocument::passed() const {
  int c = 0;
  for (const auto& e : checks) c += e.passed ? 1 : 0;
  return c;
}

int ReportDocument::failed() const { return total() - passed(); }

int ReportDocument::skipped() const {
  int c = 0;
  for (const auto& e : checks) c += e.skipped ? 1 : 0;
  return c;
}

std::string current_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_report(const ReportDocument& doc) {
  const RunConfig& cfg = doc.config;
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["timestamp"] = doc.timestamp;

  ordered_json c;
  c["suite"] = suite_name(cfg.suite);
  c["backend"] = backend_name(cfg.backend);
  c["K"] = cfg.K;
  c["n"] = cfg.n;
  c["grading"] = cfg.grading_str();
  if (cfg.weights.empty())
    c["weights"] = "sweep";
  else
    c["weights"] = cfg.weights;
  {
    ordered_json t = ordered_json::array();
    for (const Rational& g : cfg.twist) t.push_back(rational_str(g));
    c["twist"] = t;
  }
  c["family"] = family_flag(cfg.family);
  c["eta"] = rational_str(cfg.eta);
  c["hbar"] = rational_str(cfg.hbar);
  c["q"] = rational_str(cfg.q);
  c["w"] = rational_str(cfg.w);
  c["kappa"] = rational_str(cfg.kappa);
  {
    ordered_json p = ordered_json::array();
    for (const Rational& x : cfg.positions) p.push_back(rational_str(x));
    c["positions"] = p;
  }
  c["samples"] = cfg.samples;
  c["seed"] = cfg.seed;
  c["golden_dir"] = cfg.golden_dir;
  c["output"] = cfg.output;
  c["timings"] = cfg.timings;
  j["config"] = c;

  ordered_json checks = ordered_json::array();
  for (const ReportEntry& e : doc.checks) {
    ordered_json k;
    k["name"] = e.name;
    k["passed"] = e.passed;
    if (e.skipped) k["skipped"] = true;
    k["residual"] = e.residual;
    k["detail"] = e.detail;
    if (cfg.timings) k["wall_ms"] = std::round(e.wall_ms * 1000.0) / 1000.0;
    checks.push_back(std::move(k));
  }
  j["checks"] = checks;

  ordered_json s;
  s["total"] = doc.total();
  s["passed"] = doc.passed();
  s["failed"] = doc.failed();
  s["skipped"] = doc.skipped();
  j["summary"] = s;

  return j.dump(2) + "\n";
}

std::string summary_line(const ReportDocument& doc) {
  std::string s = std::string(kToolName) + ": " + std::to_string(doc.total()) + " checks, " +
                  std::to_string(doc.passed()) + " passed, " + std::to_string(doc.failed()) +
                  " failed";
  if (doc.skipped() > 0) s += " (" + std::to_string(doc.skipped()) + " skipped)";
  return s;
}

}  // namespace qkzr::cli
