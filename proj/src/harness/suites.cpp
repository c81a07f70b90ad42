#include "sympspec/harness/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "sympspec/error.hpp"
#include "sympspec/extremal/extremal.hpp"
#include "sympspec/geometry/basis.hpp"
#include "sympspec/geometry/chains.hpp"
#include "sympspec/harness/matrix_io.hpp"
#include "sympspec/inequalities/majorization.hpp"
#include "sympspec/inequalities/noncommuting.hpp"
#include "sympspec/symplectic/generators.hpp"

namespace sympspec::harness {

using inequalities::Direction;
using linalg::Matrix;
using linalg::Vector;
using nlohmann::json;
using symplectic::PositiveDefiniteMatrix;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "williamson",  "maxmin",      "wielandt",     "lidskii-add", "lidskii-mult",
      "phi-extremal", "det-product", "construction", "majorization"};
  return names;
}

void SuiteConfig::validate() const {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  if (n_min < 1 || n_min > n_max) throw ValidationError("need 1 <= nmin <= nmax");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (jobs < 1) throw ValidationError("jobs must be at least 1");
  const auto& names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ValidationError("unknown suite '" + suite + "'");
  }
}

Check ge_check(std::string name, double lhs, double rhs, double tol, double scale) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.direction = Direction::GreaterEqual;
  c.slack = lhs - rhs;
  c.scale = scale;
  c.passed = c.slack >= -tol * scale;
  return c;
}

Check le_check(std::string name, double lhs, double rhs, double tol, double scale) {
  Check c = ge_check(std::move(name), rhs, lhs, tol, scale);
  std::swap(c.lhs, c.rhs);
  c.direction = Direction::LessEqual;
  return c;
}

Check count_check(std::string name, std::size_t count) {
  Check c = le_check(std::move(name), static_cast<double>(count), 0.0, 0.0);
  c.is_count = true;
  return c;
}

bool TrialResult::passed() const {
  return error.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t SuiteRun::failed_trials() const {
  return static_cast<std::size_t>(std::count_if(
      trials.begin(), trials.end(), [](const TrialResult& t) { return !t.passed(); }));
}

namespace {

double rel_scale(double v) { return std::max(1.0, std::abs(v)); }

json index_json(const std::vector<std::size_t>& idx) { return json(idx); }

PositiveDefiniteMatrix draw_pd(Rng& rng, std::size_t n, Vector* prescribed = nullptr) {
  if (rng.uniform() < 0.5) return symplectic::random_pd_wishart(rng, n);
  Vector d = symplectic::random_spectrum(rng, n, 0.5, 5.0);
  if (prescribed) *prescribed = d;
  return symplectic::random_pd_prescribed(rng, d);
}

extremal::ExtremalOptions extremal_options(const SuiteConfig& cfg) {
  extremal::ExtremalOptions o;
  o.samples = cfg.samples;
  o.chains = cfg.chains;
  o.tol = cfg.tol;
  return o;
}

void add_certificate(TrialResult& r, const extremal::ExtremalCertificate& c, double tol,
                     double equality_tol) {
  const double scale = rel_scale(c.claimed_value);
  const std::string k = c.kind + ":";
  if (c.samples > 0) {
    r.checks.push_back(ge_check(k + "lower", c.sampled_min, c.claimed_value, tol, scale));
  }
  r.checks.push_back(le_check(k + "equality", c.equality_gap, 0.0, equality_tol, scale));
  if (c.witnesses > 0) {
    r.checks.push_back(le_check(k + "upper", c.witness_max, c.claimed_value, tol, scale));
  }
  if (c.witnesses + c.failed_witnesses > 0) {
    r.checks.push_back(count_check(k + "witness-failures", c.failed_witnesses));
  }
  for (const auto& [name, value] : c.metrics) {
    if (name.rfind("max_", 0) == 0) {
      // Informational; never fails a trial.
      Check info;
      info.name = k + name;
      info.lhs = value;
      info.is_count = true;
      info.note = "informational";
      r.checks.push_back(std::move(info));
    } else if (name == "worst_trace_gap") {
      r.checks.push_back(le_check(k + name, value, 1e-9, 0.0));
    } else if (name == "worst_log_det_excess") {
      r.checks.push_back(ge_check(k + name, value, std::log1p(-1e-8), 0.0));
    } else {
      r.checks.push_back(ge_check(k + name, value, 0.0, tol));
    }
  }
  Check contract = count_check(k + "certificate", c.violations.size());
  for (const auto& v : c.violations) contract.note += (contract.note.empty() ? "" : "; ") + v;
  r.checks.push_back(std::move(contract));

  if (!c.passed()) {
    json w;
    w["kind"] = c.kind;
    w["claimed_value"] = c.claimed_value;
    w["sampled_min"] = c.sampled_min;
    w["achieved_at"] = c.achieved_at;
    w["eigen_tuple"] = matrix_to_json(c.witness.matrix());
    if (c.worst_upper_witness) w["worst_upper_witness"] = matrix_to_json(c.worst_upper_witness->matrix());
    w["violations"] = c.violations;
    r.witness[c.kind] = std::move(w);
  }
}

std::vector<std::size_t> random_index_set_max(std::size_t n, std::size_t kmax, Rng& rng) {
  const std::size_t k = rng.uniform_index(1, std::min(n, kmax));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 1);
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[rng.uniform_index(i, n - 1)]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

void trial_williamson(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  Vector prescribed;
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n, &prescribed);
  r.instance["a"] = matrix_to_json(a.matrix());
  // Loose tolerances here so the residuals are recorded instead of thrown.
  const auto w = symplectic::williamson(a, {1e100, 1e100});
  r.checks.push_back(le_check("residual-a", w.residual_a, 1e-8, 0.0));
  r.checks.push_back(le_check("residual-j", w.residual_j, 1e-9, 0.0));

  const Vector d1 = symplectic::symplectic_eigenvalues(a, symplectic::EigenMethod::SkewCanonical);
  const Vector d2 = symplectic::symplectic_eigenvalues(a, symplectic::EigenMethod::JaEigen);
  double agree = 0.0;
  for (std::size_t j = 0; j < r.n; ++j) {
    const double ref = std::max({d1[j], d2[j], w.d[j]});
    agree = std::max({agree, std::abs(d1[j] - d2[j]) / ref, std::abs(d1[j] - w.d[j]) / ref,
                      std::abs(d2[j] - w.d[j]) / ref});
  }
  r.checks.push_back(le_check("method-agreement", agree, 1e-8, 0.0));
  if (!prescribed.empty()) {
    double rec = 0.0;
    for (std::size_t j = 0; j < r.n; ++j) rec = std::max(rec, std::abs(w.d[j] - prescribed[j]) / prescribed[j]);
    r.checks.push_back(le_check("prescribed-recovery", rec, 1e-9, 0.0));
    r.instance["prescribed"] = vector_to_json(prescribed);
  }
}

void trial_maxmin(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n);
  const std::size_t k = rng.uniform_index(1, r.n);
  r.index_set = {k};
  r.instance["a"] = matrix_to_json(a.matrix());
  const auto opts = extremal_options(cfg);
  add_certificate(r, extremal::maxmin_check(a, k, rng, opts), cfg.tol, opts.equality_tol);
}

void trial_wielandt(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n);
  r.index_set = geometry::random_index_set(r.n, rng);
  r.instance["a"] = matrix_to_json(a.matrix());
  const auto opts = extremal_options(cfg);
  add_certificate(r, extremal::wielandt_certify(a, r.index_set, rng, opts), cfg.tol,
                  opts.equality_tol);
}

void add_inequality(TrialResult& r, const inequalities::InequalityRecord& rec, double tol) {
  Check c;
  c.name = rec.name;
  c.lhs = rec.lhs;
  c.rhs = rec.rhs;
  c.direction = rec.direction;
  c.slack = rec.slack;
  c.scale = rec.scale;
  c.passed = !rec.violated(tol);
  if (rec.digest.index_set != r.index_set) {
    c.note = "k = " + std::to_string(rec.digest.index_set.empty() ? 0 : rec.digest.index_set.front());
  }
  r.checks.push_back(std::move(c));
}

void trial_lidskii(const SuiteConfig& cfg, const std::string& suite, TrialResult& r) {
  const auto inst =
      inequalities::draw_lidskii_instance(cfg.seed, suite, r.trial, cfg.n_min, cfg.n_max);
  r.n = inst.digest.n;
  r.index_set = inst.index_set;
  r.instance["a"] = matrix_to_json(inst.a);
  r.instance["b"] = matrix_to_json(inst.b);
  const PositiveDefiniteMatrix a(inst.a), b(inst.b);
  if (suite == "lidskii-add") {
    for (const auto& rec : inequalities::additive_lidskii_records(a, b, inst.index_set, inst.digest)) {
      add_inequality(r, rec, cfg.tol);
    }
    return;
  }
  for (const auto& rec :
       inequalities::multiplicative_lidskii_records(a, b, inst.index_set, inst.digest)) {
    add_inequality(r, rec, cfg.tol);
  }
  r.checks.push_back(le_check("polar-factor", inequalities::polar_factor_check(a, b), 1e-8, 0.0));
  r.checks.push_back(le_check("congruence-invariance",
                              inequalities::congruence_reduction_gap(a, b, inst.index_set), 1e-8,
                              0.0));
}

void trial_phi(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n);
  r.index_set = geometry::random_index_set(r.n, rng);
  r.instance["a"] = matrix_to_json(a.matrix());
  const auto opts = extremal_options(cfg);
  double sum_claimed = 0.0;
  for (const char* name : {"sum", "product", "min"}) {
    const auto cert =
        extremal::phi_extremal_check(a, r.index_set, extremal::functional_by_name(name), rng, opts);
    add_certificate(r, cert, cfg.tol, cfg.tol);
    if (std::string(name) == "sum") sum_claimed = cert.claimed_value;
  }
  extremal::ExtremalOptions none = opts;
  none.samples = 0;
  none.chains = 0;
  const double wielandt = extremal::wielandt_certify(a, r.index_set, rng, none).claimed_value;
  r.checks.push_back(le_check("sum-matches-wielandt", std::abs(sum_claimed - wielandt), 0.0, 1e-12,
                              rel_scale(wielandt)));
}

void trial_det(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n);
  r.index_set = geometry::random_index_set(r.n, rng);
  r.instance["a"] = matrix_to_json(a.matrix());
  add_certificate(r, extremal::det_product_check(a, r.index_set, rng, extremal_options(cfg)), 1e-8,
                  1e-8);
}

void trial_construction(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  const PositiveDefiniteMatrix a = draw_pd(rng, r.n);
  r.index_set = random_index_set_max(r.n, 4, rng);
  r.instance["a"] = matrix_to_json(a.matrix());
  const geometry::SymplecticBasis b(symplectic::williamson(a).m);
  const auto inc = geometry::random_increasing_chain(r.n, r.index_set, rng);
  const auto dec = geometry::random_decreasing_chain(r.n, r.index_set, rng);
  const auto res = geometry::dual_chain_construct(inc, dec, b, rng);
  r.checks.push_back(le_check("v-orthosymplectic", res.v_defect, 1e-8, 0.0));
  r.checks.push_back(le_check("w-orthosymplectic", res.w_defect, 1e-8, 0.0));
  r.checks.push_back(le_check("span-angle", res.span_angle, 1e-8, 0.0));
  r.checks.push_back(le_check("sharp-membership", res.membership, 1e-8, 0.0));
  const auto tc = geometry::same_span_trace_check(a.matrix(), geometry::complement_tuple(res.w, b),
                                                  geometry::complement_tuple(res.v, b), b);
  r.checks.push_back(le_check("trace-equality", tc.relative_gap(), 1e-9, 0.0));
  if (!r.passed()) {
    r.witness["v"] = matrix_to_json(Matrix::from_columns(res.v, 2 * r.n));
    r.witness["w"] = matrix_to_json(Matrix::from_columns(res.w, 2 * r.n));
  }
}

// Independent reference for the partial-sum relations: each k-th sum is
// recomputed from a fresh partial sort.
bool brute_supermajorize(const std::vector<double>& a, const std::vector<double>& b,
                         double tol = 0.0) {
  for (std::size_t k = 1; k <= a.size(); ++k) {
    std::vector<double> x = a, y = b;
    std::partial_sort(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
    std::partial_sort(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k), y.end());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      sx += x[i];
      sy += y[i];
    }
    if (sx + tol < sy) return false;
  }
  return true;
}

bool brute_majorize(const std::vector<double>& a, const std::vector<double>& b) {
  double ta = 0.0, tb = 0.0;
  for (double x : a) ta += x;
  for (double x : b) tb += x;
  const double tol = 1e-12 * std::max({std::abs(ta), std::abs(tb), 1e-300});
  return std::abs(ta - tb) <= tol && brute_supermajorize(a, b, tol);
}

inline constexpr std::size_t kMajorizationPairsPerTrial = 20;
inline constexpr std::size_t kLemmaPairsPerTrial = 2;

void trial_majorization(const SuiteConfig& cfg, Rng& rng, TrialResult& r) {
  r.n = rng.uniform_index(cfg.n_min, cfg.n_max);
  std::size_t mismatches = 0;
  for (std::size_t p = 0; p < kMajorizationPairsPerTrial; ++p) {
    std::vector<double> a, b;
    const double mode = rng.uniform();
    if (mode < 0.3) {
      // Small integers make ties and exact equalities common.
      for (std::size_t i = 0; i < r.n; ++i) {
        a.push_back(static_cast<double>(rng.uniform_index(0, 5)));
        b.push_back(static_cast<double>(rng.uniform_index(0, 5)));
      }
    } else if (mode < 0.55) {
      std::tie(a, b) = inequalities::random_majorization_pair(r.n, rng);
    } else if (mode < 0.8) {
      std::tie(a, b) = inequalities::random_supermajorization_pair(r.n, rng);
    } else {
      for (std::size_t i = 0; i < r.n; ++i) {
        a.push_back(rng.uniform(0.0, 3.0));
        b.push_back(rng.uniform(0.0, 3.0));
      }
    }
    if (rng.uniform() < 0.5) std::swap(a, b);
    const inequalities::MajorizationVector ma(a), mb(b);
    const bool ok = inequalities::supermajorize(ma, mb) == brute_supermajorize(a, b) &&
                    inequalities::majorize(ma, mb) == brute_majorize(a, b);
    if (!ok) {
      ++mismatches;
      r.witness["mismatch"].push_back({{"alpha", a}, {"beta", b}});
    }
  }
  r.checks.push_back(count_check("brute-force-agreement", mismatches));
  for (const auto& phi : extremal::shipped_functionals()) {
    const auto res = inequalities::schur_concave_monotone_check(phi, kLemmaPairsPerTrial, rng);
    Check c = count_check("lemma:" + phi.name, res.passed ? 0 : 1);
    if (!res.passed) {
      c.note = res.failed_property;
      r.witness["lemma:" + phi.name] = {{"alpha", res.alpha}, {"beta", res.beta},
                                        {"phi_alpha", res.phi_alpha}, {"phi_beta", res.phi_beta}};
    }
    r.checks.push_back(std::move(c));
  }
}

}  // namespace

TrialResult run_trial(const SuiteConfig& cfg, const std::string& suite, std::uint64_t trial) {
  TrialResult r;
  r.suite = suite;
  r.trial = trial;
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ValidationError("unknown suite '" + suite + "'");
  }
  Rng rng = Rng::stream(cfg.seed, suite, trial);
  try {
    if (suite == "williamson") {
      trial_williamson(cfg, rng, r);
    } else if (suite == "maxmin") {
      trial_maxmin(cfg, rng, r);
    } else if (suite == "wielandt") {
      trial_wielandt(cfg, rng, r);
    } else if (suite == "lidskii-add" || suite == "lidskii-mult") {
      trial_lidskii(cfg, suite, r);
    } else if (suite == "phi-extremal") {
      trial_phi(cfg, rng, r);
    } else if (suite == "det-product") {
      trial_det(cfg, rng, r);
    } else if (suite == "construction") {
      trial_construction(cfg, rng, r);
    } else {
      trial_majorization(cfg, rng, r);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

SuiteRun run_suite(const SuiteConfig& cfg, const std::string& suite) {
  SuiteRun run;
  run.suite = suite;
  run.trials.resize(cfg.trials);
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < cfg.trials; t = next++) run.trials[t] = run_trial(cfg, suite, t);
  };
  const std::size_t jobs = std::min(cfg.jobs, cfg.trials);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

bool SuiteReport::passed() const {
  return std::all_of(runs.begin(), runs.end(), [](const SuiteRun& r) { return r.failed_trials() == 0; });
}

json trial_to_json(const TrialResult& t, bool with_instance) {
  json j;
  j["suite"] = t.suite;
  j["trial"] = t.trial;
  j["n"] = t.n;
  j["index_set"] = index_json(t.index_set);
  j["passed"] = t.passed();
  json checks = json::array();
  for (const auto& c : t.checks) {
    json cj{{"name", c.name},
            {"lhs", c.lhs},
            {"rhs", c.rhs},
            {"direction", std::string(inequalities::direction_symbol(c.direction))},
            {"slack", c.slack},
            {"passed", c.passed}};
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (!t.error.empty()) j["error"] = t.error;
  if (with_instance) {
    j["instance"] = t.instance;
    j["witness"] = t.witness;
  }
  return j;
}

json SuiteReport::to_json() const {
  json out;
  out["version"] = kArtifactVersion;
  out["config"] = {{"suite", config.suite},   {"trials", config.trials},
                   {"nmin", config.n_min},    {"nmax", config.n_max},
                   {"seed", config.seed},     {"tol", config.tol},
                   {"samples", config.samples}, {"chains", config.chains}};
  json records = json::array();
  json failures = json::array();
  json suites = json::object();
  std::size_t trials = 0, failed = 0, checks = 0, failed_checks = 0;
  double worst_all = std::numeric_limits<double>::infinity();
  for (const auto& run : runs) {
    double worst = std::numeric_limits<double>::infinity();
    std::string worst_name;
    std::size_t run_checks = 0, run_failed_checks = 0;
    for (const auto& t : run.trials) {
      records.push_back(trial_to_json(t, false));
      for (const auto& c : t.checks) {
        ++run_checks;
        if (!c.passed) ++run_failed_checks;
        if (c.is_count) continue;
        const double rel = c.slack / (c.scale > 0.0 ? c.scale : 1.0);
        if (std::isfinite(rel) && rel < worst) {
          worst = rel;
          worst_name = c.name;
        }
      }
      if (!t.passed()) {
        json f = trial_to_json(t, true);
        f["seed"] = config.seed;
        f["replay"] = "sympspec verify --suite " + t.suite + " --replay " + std::to_string(t.trial) +
                      " --seed " + std::to_string(config.seed) + " --nmin " +
                      std::to_string(config.n_min) + " --nmax " + std::to_string(config.n_max) +
                      " --samples " + std::to_string(config.samples) + " --chains " +
                      std::to_string(config.chains);
        failures.push_back(std::move(f));
      }
    }
    const std::size_t rf = run.failed_trials();
    suites[run.suite] = {{"trials", run.trials.size()},
                         {"failed_trials", rf},
                         {"checks", run_checks},
                         {"failed_checks", run_failed_checks},
                         {"worst_relative_slack", worst},
                         {"worst_check", worst_name},
                         {"passed", rf == 0}};
    trials += run.trials.size();
    failed += rf;
    checks += run_checks;
    failed_checks += run_failed_checks;
    worst_all = std::min(worst_all, worst);
  }
  out["records"] = std::move(records);
  out["aggregate"] = {{"passed", passed()},
                      {"trials", trials},
                      {"failed_trials", failed},
                      {"checks", checks},
                      {"failed_checks", failed_checks},
                      {"worst_relative_slack", worst_all},
                      {"suites", std::move(suites)}};
  out["failures"] = std::move(failures);
  out["observations"] = observations.is_null() ? json::object() : observations;

  // Everything that may differ between two runs of the same config.
  json timing;
  for (const auto& run : runs) timing["suites"][run.suite] = run.seconds;
  timing["jobs"] = config.jobs;
  timing["report_path"] = config.report_path;
  timing["generated_at"] = static_cast<std::int64_t>(std::time(nullptr));
  out["timing"] = std::move(timing);
  return out;
}

SuiteReport run_report(const SuiteConfig& cfg) {
  cfg.validate();
  SuiteReport report;
  report.config = cfg;
  const std::vector<std::string> list =
      cfg.suite == "all" ? suite_names() : std::vector<std::string>{cfg.suite};
  for (const auto& s : list) report.runs.push_back(run_suite(cfg, s));
  if (cfg.suite == "all" || cfg.suite == "lidskii-mult") {
    const auto asym = inequalities::search_sqrt_product_asymmetry(cfg.seed, 2, 100);
    json o{{"found", asym.found}};
    if (asym.found) {
      o["trial"] = asym.trial;
      o["a"] = matrix_to_json(asym.a);
      o["b"] = matrix_to_json(asym.b);
      o["d_sqrtA_B_sqrtA"] = vector_to_json(asym.d_ab);
      o["d_sqrtB_A_sqrtB"] = vector_to_json(asym.d_ba);
      o["relative_gap"] = asym.relative_gap;
    }
    report.observations["sqrt_product_asymmetry"] = std::move(o);
  }
  return report;
}

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace sympspec::harness
