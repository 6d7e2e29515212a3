#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qkzr/chain.hpp"
#include "qkzr/correspondence.hpp"
#include "qkzr/omega.hpp"
#include "qkzr/rmatrix.hpp"
#include "qkzr/sampling.hpp"

namespace qkzr::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr RFamily kAllFamilies[] = {RFamily::RationalPlus, RFamily::RationalMinus,
                                    RFamily::TrigPlus, RFamily::TrigMinus};

std::string weights_str(const std::vector<int>& M) {
  std::string s = "M=(";
  for (size_t a = 0; a < M.size(); ++a) {
    if (a) s += ",";
    s += std::to_string(M[a]);
  }
  return s + ")";
}

class Collector {
 public:
  explicit Collector(std::vector<ReportEntry>& out) : out_(out) {}

  void push(ReportEntry e) { out_.push_back(std::move(e)); }

  void info(std::string name, std::string detail) {
    push({std::move(name), true, false, "", std::move(detail), 0.0});
  }

  void fail(std::string name, std::string detail) {
    push({std::move(name), false, false, "", std::move(detail), 0.0});
  }

  void add(const CheckResult& r, const std::string& suffix) {
    push({r.name + suffix, r.passed, false, r.residual, r.detail, 0.0});
  }

  void add(const CheckReport& rep, const std::string& suffix) {
    for (const CheckResult& r : rep.results()) add(r, suffix);
  }

  template <class S>
  void add(const CorrespondenceResult<S>& r, const std::string& suffix) {
    const CheckResult c = to_check_result(r);
    push({c.name + suffix, c.passed, r.skipped, c.residual, c.detail, 0.0});
  }

  // Runs fn and stamps every entry it appended with the measured wall
  // clock. An exception becomes one failed entry instead of a crash.
  template <class Fn>
  void timed(const std::string& error_name, Fn&& fn) {
    const size_t first = out_.size();
    const auto t0 = Clock::now();
    try {
      fn();
    } catch (const std::exception& e) {
      fail(error_name, std::string("error: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    for (size_t i = first; i < out_.size(); ++i) out_[i].wall_ms = ms;
  }

 private:
  std::vector<ReportEntry>& out_;
};

// ---------------------------------------------------------------------------
// Golden covector tables: JSON files listing every coefficient of one
// invariant covector as (word, sign, q_power). The comparison evaluates at
// q = 2, where sign and exponent determine the value uniquely, and runs in
// exact arithmetic regardless of the configured backend.

struct GoldenEntry {
  MultiIndex word;
  int sign = 0;
  int q_power = 0;
};

struct GoldenTable {
  OmegaKind kind = OmegaKind::SymPlus;
  int K = 0;
  int n = 0;
  std::set<int> bosons;
  std::vector<int> weights;
  std::vector<GoldenEntry> entries;
};

OmegaKind parse_kind(const std::string& s) {
  if (s == "SymPlus") return OmegaKind::SymPlus;
  if (s == "SymMinus") return OmegaKind::SymMinus;
  if (s == "QPlus") return OmegaKind::QPlus;
  if (s == "QMinus") return OmegaKind::QMinus;
  throw std::runtime_error("unknown covector kind '" + s + "'");
}

GoldenTable load_golden_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden table " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  GoldenTable t;
  t.kind = parse_kind(j.at("kind").get<std::string>());
  t.K = j.at("K").get<int>();
  t.n = j.at("n").get<int>();
  for (const auto& b : j.at("bosons")) t.bosons.insert(b.get<int>());
  t.weights = j.at("weights").get<std::vector<int>>();
  for (const auto& e : j.at("entries")) {
    GoldenEntry ge;
    ge.word = e.at("word").get<std::vector<int>>();
    ge.sign = e.at("sign").get<int>();
    ge.q_power = e.at("q_power").get<int>();
    t.entries.push_back(std::move(ge));
  }
  return t;
}

void check_golden_tables(const std::string& dir, Collector& col) {
  namespace fs = std::filesystem;
  if (dir.empty()) {
    col.info("omega/golden", "no golden directory configured");
    return;
  }
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
    if (it->path().extension() == ".json") files.push_back(it->path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    col.fail("omega/golden", "no golden tables found in '" + dir + "'");
    return;
  }
  for (const fs::path& p : files) {
    const std::string name = "omega/golden/" + p.stem().string();
    col.timed(name, [&] {
      const GoldenTable t = load_golden_table(p);
      const Grading g = make_grading(t.K, t.bosons);
      const TensorSpace space(g, t.n);
      const Rational q(2);
      const Covector<Rational> om = build_omega(t.kind, g, t.weights, t.n, q);
      size_t bad = 0;
      std::string first;
      std::set<size_t> listed;
      for (const GoldenEntry& e : t.entries) {
        const size_t idx = space.encode(e.word);
        listed.insert(idx);
        const Rational expect = Rational(e.sign) * pow_int(q, e.q_power);
        if (om.coefficient(idx) != expect) {
          ++bad;
          if (first.empty()) first = "coefficient of " + multiindex_str(e.word);
        }
      }
      for (const MultiIndex& J : weight_basis(space, t.weights))
        if (!listed.count(space.encode(J))) {
          ++bad;
          if (first.empty()) first = multiindex_str(J) + " missing from table";
        }
      ReportEntry e;
      e.name = name;
      e.passed = bad == 0;
      e.residual = bad == 0 ? "0/1" : "";
      e.detail = std::string(omega_kind_name(t.kind)) + " " + g.str() + " " +
                 weights_str(t.weights) + ", " + std::to_string(t.entries.size()) +
                 " coefficients";
      if (bad)
        e.detail += "; " + std::to_string(bad) + " mismatches, first: " + first;
      else
        e.detail += ", all match";
      col.push(std::move(e));
    });
  }
}

// ---------------------------------------------------------------------------

template <class S>
class Runner {
 public:
  Runner(const RunConfig& cfg, Collector& col) : cfg_(cfg), col_(col), sampler_(cfg.seed) {
    if (cfg_.grading_sweep)
      gradings_ = all_gradings(cfg_.K);
    else
      gradings_ = {make_grading(cfg_.K, cfg_.bosons)};
    if (cfg_.weights.empty())
      weight_scope_ = all_weights(cfg_.K, cfg_.n);
    else
      weight_scope_ = {cfg_.weights};
  }

  void run() {
    switch (cfg_.suite) {
      case Suite::RAxioms: r_axioms(); break;
      case Suite::Omega: omega(); break;
      case Suite::Chain: chain(); break;
      case Suite::Correspondence: correspondence(); break;
      case Suite::DetIdentity: det_identity(); break;
      case Suite::Degeneracy: degeneracy(); break;
      case Suite::SignFlip: sign_flip(); break;
      case Suite::All:
        r_axioms();
        omega();
        chain();
        correspondence();
        det_identity();
        degeneracy();
        sign_flip();
        break;
    }
  }

 private:
  static S val(const Rational& r) { return ScalarTraits<S>::from_rational(r); }

  Rational coupling_of(RFamily f) const { return is_rational_family(f) ? cfg_.eta : cfg_.q; }
  Rational shift_of(RFamily f) const { return is_rational_family(f) ? cfg_.hbar : cfg_.w; }

  ChainConfig<S> chain_config(RFamily f, const Grading& g) const {
    ChainConfig<S> cc;
    cc.grading = g;
    cc.positions = to_scalar<S>(cfg_.positions);
    cc.twist = to_scalar<S>(cfg_.twist);
    cc.params = RParams<S>{val(coupling_of(f)), val(shift_of(f))};
    cc.kappa = val(cfg_.kappa);
    return cc;
  }

  ChainConfig<S> draw_config(const ChainDraw& d, const Grading& g) const {
    ChainConfig<S> cc;
    cc.grading = g;
    cc.positions = to_scalar<S>(d.positions);
    cc.twist = to_scalar<S>(d.twist);
    cc.params = RParams<S>{val(d.coupling), val(d.shift)};
    cc.kappa = val(d.kappa);
    return cc;
  }

  std::vector<RFamily> realm_of(RFamily f) const {
    if (is_rational_family(f)) return {RFamily::RationalPlus, RFamily::RationalMinus};
    return {RFamily::TrigPlus, RFamily::TrigMinus};
  }

  const std::vector<int>* first_admissible(OmegaKind k, const Grading& g) const {
    for (const auto& M : weight_scope_)
      if (omega_weight_admissible(k, g, M)) return &M;
    return nullptr;
  }

  void r_axioms() {
    for (RFamily f : kAllFamilies)
      for (const Grading& g : gradings_) {
        const std::string sfx = "/" + g.str();
        col_.timed(std::string("rmatrix/") + family_name(f) + "/error" + sfx, [&] {
          const auto pts = sampler_.spectral_samples(f, coupling_of(f), cfg_.samples);
          const CheckReport rep =
              validate_r_axioms(f, g, to_scalar<S>(pts),
                                RParams<S>{val(coupling_of(f)), val(shift_of(f))},
                                to_scalar<S>(cfg_.twist));
          col_.add(rep, sfx);
        });
      }
  }

  void omega() {
    bool any = false;
    for (OmegaKind k :
         {OmegaKind::SymPlus, OmegaKind::SymMinus, OmegaKind::QPlus, OmegaKind::QMinus})
      for (const Grading& g : gradings_)
        for (const auto& M : weight_scope_) {
          if (!omega_weight_admissible(k, g, M)) continue;
          any = true;
          const std::string sfx = "/" + g.str() + "/" + weights_str(M);
          col_.timed(std::string("omega/") + omega_kind_name(k) + "/error" + sfx, [&] {
            const S qv = val(cfg_.q);
            const Covector<S> om = build_omega(k, g, M, cfg_.n, qv);
            std::vector<S> args;
            if (omega_is_q_kind(k))
              args = to_scalar<S>(
                  sampler_.spectral_samples(omega_family(k), cfg_.q, cfg_.samples));
            col_.add(validate_omega(om, k, qv, args), sfx);
          });
        }
    if (!any) col_.info("omega/scope", "no admissible weight blocks in scope");
    check_golden_tables(cfg_.golden_dir, col_);
  }

  void chain() {
    for (RFamily f : kAllFamilies)
      for (const Grading& g : gradings_) {
        const std::string sfx = "/" + g.str();
        col_.timed(std::string("chain/") + family_name(f) + "/error" + sfx, [&] {
          col_.add(validate_chain_identities(chain_config(f, g), f), sfx);
        });
      }
  }

  void correspondence() {
    const RFamily f = cfg_.family;
    const bool rational = is_rational_family(f);
    const OmegaKind kind = omega_kind_for_family(f);

    for (const Grading& g : gradings_)
      for (const auto& M : weight_scope_) {
        const std::string sfx = "/" + weights_str(M);
        if (omega_weight_admissible(kind, g, M)) {
          const int dmax = rational ? cfg_.n : 1;
          for (int d = 1; d <= dmax; ++d)
            col_.timed("correspondence/macdonald/error/" + g.str() + sfx, [&] {
              col_.add(check_qkz_macdonald(f, d, g, M, chain_config(f, g)), sfx);
            });
          if (cfg_.n >= 2)
            col_.timed("correspondence/macdonald/order-probe/error/" + g.str() + sfx, [&] {
              col_.add(qkz_order_probe(f, g, M, chain_config(f, g)), sfx);
            });
        }
        col_.timed("correspondence/kz-calogero/error/" + g.str() + sfx, [&] {
          for (const auto& r :
               check_kz_calogero(g, M, chain_config(RFamily::RationalPlus, g)))
            col_.add(r, sfx);
        });
      }

    // Random configurations: one per sample index, checked at every grading
    // in scope over the first admissible weight block.
    for (int t = 0; t < cfg_.samples; ++t) {
      const ChainDraw dr = sampler_.chain_draw(cfg_.n, cfg_.K, realm_of(f));
      const ChainDraw drc =
          rational ? dr
                   : sampler_.chain_draw(cfg_.n, cfg_.K,
                                         {RFamily::RationalPlus, RFamily::RationalMinus});
      const std::string rand_sfx = "/rand" + std::to_string(t);
      for (const Grading& g : gradings_) {
        if (const std::vector<int>* M = first_admissible(kind, g))
          col_.timed("correspondence/macdonald/error/" + g.str() + rand_sfx, [&] {
            col_.add(check_qkz_macdonald(f, 1, g, *M, draw_config(dr, g)),
                     "/" + weights_str(*M) + rand_sfx);
          });
        col_.timed("correspondence/kz-calogero/error/" + g.str() + rand_sfx, [&] {
          for (const auto& r : check_kz_calogero(g, weight_scope_.front(), draw_config(drc, g)))
            col_.add(r, "/" + weights_str(weight_scope_.front()) + rand_sfx);
        });
      }
    }
  }

  void det_identity() {
    const RFamily f = is_rational_family(cfg_.family) ? cfg_.family : RFamily::RationalPlus;
    for (const Grading& g : gradings_)
      for (const auto& M : weight_scope_) {
        const std::string sfx = "/" + weights_str(M);
        col_.timed("correspondence/determinant/error/" + g.str() + sfx, [&] {
          col_.add(check_det_identity(g, M, chain_config(f, g), f), sfx);
        });
      }
    for (int t = 0; t < cfg_.samples; ++t) {
      const ChainDraw dr =
          sampler_.chain_draw(cfg_.n, cfg_.K, {RFamily::RationalPlus, RFamily::RationalMinus});
      const Grading& g = gradings_.front();
      const auto& M = weight_scope_.front();
      const std::string sfx = "/" + weights_str(M) + "/rand" + std::to_string(t);
      col_.timed("correspondence/determinant/error/" + g.str() + sfx, [&] {
        col_.add(check_det_identity(g, M, draw_config(dr, g), f), sfx);
      });
    }
  }

  void degeneracy() {
    for (const auto& M : weight_scope_) {
      const std::string sfx = "/" + weights_str(M);
      col_.timed("correspondence/degeneracy/error" + sfx, [&] {
        const ChainConfig<S> cc = chain_config(cfg_.family, make_grading(cfg_.K, {}));
        for (const auto& r : degeneracy_sweep(M, cc, cfg_.family)) col_.add(r, sfx);
      });
    }
  }

  void sign_flip() {
    for (const Grading& g : gradings_)
      col_.timed("correspondence/sign-flip/error/" + g.str(), [&] {
        const ChainConfig<S> cc = chain_config(RFamily::TrigPlus, g);
        for (const auto& r : check_sign_flip_map(g, cc)) col_.add(r, "");
      });
  }

  const RunConfig& cfg_;
  Collector& col_;
  Sampler sampler_;
  std::vector<Grading> gradings_;
  std::vector<std::vector<int>> weight_scope_;
};

}  // namespace

int run_suites(const RunConfig& cfg, ReportDocument& doc) {
  doc.config = cfg;
  doc.timestamp = current_timestamp_utc();
  Collector col(doc.checks);
  if (cfg.backend == Backend::Exact) {
    Runner<Rational> r(cfg, col);
    r.run();
  } else {
    Runner<Complex> r(cfg, col);
    r.run();
  }
  return doc.failed() == 0 ? 0 : 1;
}

}  // namespace qkzr::cli
