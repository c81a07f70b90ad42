// sympspec: symplectic spectra, Williamson decompositions, geometric means
// and the seeded verification suites.
//
// Exit codes: 0 ok, 1 suite violation or repro mismatch, 2 unreadable
// input, 3 invalid input, 4 numerical contract failure.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympspec/error.hpp"
#include "sympspec/harness/matrix_io.hpp"
#include "sympspec/harness/suites.hpp"
#include "sympspec/inequalities/lidskii.hpp"
#include "sympspec/inequalities/noncommuting.hpp"
#include "sympspec/symplectic/williamson.hpp"

namespace {

using namespace sympspec;
using harness::matrix_to_json;
using harness::vector_to_json;
using nlohmann::json;

enum Exit { kOk = 0, kViolation = 1, kParse = 2, kValidation = 3, kNumerical = 4 };

// 15 digits after the point; values that are integers up to roundoff print
// as integers.
std::string format_value(double v) {
  const double r = std::round(v);
  char buf[64];
  if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) {
    std::snprintf(buf, sizeof buf, "%.0f", r);
  } else {
    std::snprintf(buf, sizeof buf, "%.15f", v);
  }
  return buf;
}

std::string join(const linalg::Vector& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + format_value(v[i]);
  return s;
}

symplectic::PositiveDefiniteMatrix load_pd(const std::string& path) {
  return symplectic::PositiveDefiniteMatrix(harness::read_matrix(path));
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    harness::write_text(path, text);
  }
}

int cmd_eig(const std::string& input, const std::string& method) {
  const auto a = load_pd(input);
  std::cout << join(symplectic::symplectic_eigenvalues(a, symplectic::parse_method(method))) << "\n";
  return kOk;
}

int cmd_williamson(const std::string& input, const std::string& output) {
  const auto a = load_pd(input);
  const auto w = symplectic::williamson(a);
  json j{{"d", vector_to_json(w.d)},
         {"m", matrix_to_json(w.m)},
         {"residual_a", w.residual_a},
         {"residual_j", w.residual_j},
         {"condition_number", w.condition_number},
         {"warnings", w.warnings}};
  emit(j, output);
  return kOk;
}

int cmd_mean(const std::string& pa, const std::string& pb) {
  const auto a = load_pd(pa);
  const auto b = load_pd(pb);
  const auto g = inequalities::geometric_mean(a, b);
  json j = matrix_to_json(g.matrix());
  j["d"] = vector_to_json(symplectic::symplectic_eigenvalues(g));
  j["polar_residual"] = inequalities::polar_factor_check(a, b);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_compress(const std::string& pa, const std::string& pt) {
  const auto a = load_pd(pa);
  const auto tuple = symplectic::SymplecticTupleSet::from_matrix(harness::read_matrix(pt));
  const auto c = symplectic::compress(a, tuple);
  json j{{"a_m", matrix_to_json(c.a_m)}, {"d_m", vector_to_json(c.d_m)}, {"log_det", c.log_det}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_repro() {
  const auto r = inequalities::factor_order_spectra(inequalities::closing_example_factor());
  auto close = [](const linalg::Vector& d, double x, double y) {
    return d.size() == 2 && std::abs(d[0] - x) <= 1e-10 && std::abs(d[1] - y) <= 1e-10;
  };
  const bool ok_ata = close(r.d_ata, 2.0, 2.0);
  const bool ok_aat = close(r.d_aat, 1.0, 4.0);
  const bool ok_det = std::abs(r.det_ata - 16.0) <= 1e-9 && std::abs(r.det_aat - 16.0) <= 1e-9;
  const bool ok_res = r.max_residual <= 1e-10;

  std::printf("A = [[A1, 0], [0, A2]], A1 = diag(1, 2), A2 = [[0, 1], [2, 0]]\n");
  std::printf("d(AᵀA) = (%s); d(AAᵀ) = (%s)\n", join(r.d_ata, ", ").c_str(),
              join(r.d_aat, ", ").c_str());
  std::printf("%-28s %-24s %-10s %s\n", "quantity", "computed", "expected", "status");
  auto row = [](const char* q, const std::string& v, const char* e, bool ok) {
    std::printf("%-28s %-24s %-10s %s\n", q, v.c_str(), e, ok ? "ok" : "MISMATCH");
  };
  row("d(A^T A)", join(r.d_ata, ","), "2,2", ok_ata);
  row("d(A A^T)", join(r.d_aat, ","), "1,4", ok_aat);
  row("det(A^T A), det(A A^T)", format_value(r.det_ata) + "," + format_value(r.det_aat), "16,16", ok_det);
  char res[32];
  std::snprintf(res, sizeof res, "%.2e", r.max_residual);
  row("max Williamson residual", res, "<=1e-10", ok_res);

  const auto asym = inequalities::search_sqrt_product_asymmetry(1, 2, 100);
  if (asym.found) {
    std::printf("\nrandom pair (trial %llu, n = 2): d(A^½BA^½) = (%s), d(B^½AB^½) = (%s)\n",
                static_cast<unsigned long long>(asym.trial), join(asym.d_ab, ", ").c_str(),
                join(asym.d_ba, ", ").c_str());
  }
  return ok_ata && ok_aat && ok_det && ok_res ? kOk : kViolation;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SYMPSPEC_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (errno != 0 || *end != '\0' || std::string(env).find('-') != std::string::npos) {
    throw ValidationError(std::string("SYMPSPEC_SEED is not an unsigned integer: ") + env);
  }
  return v;
}

int cmd_verify(harness::SuiteConfig cfg, std::optional<std::uint64_t> seed_flag,
               std::optional<std::uint64_t> replay) {
  cfg.seed = seed_flag ? *seed_flag : default_seed();
  cfg.validate();
  if (replay) {
    if (cfg.suite == "all") throw ValidationError("--replay needs a single --suite");
    const auto t = harness::run_trial(cfg, cfg.suite, *replay);
    std::cout << harness::trial_to_json(t, true).dump(2) << "\n";
    return t.passed() ? kOk : kViolation;
  }
  const auto report = harness::run_report(cfg);
  const json j = report.to_json();
  harness::write_text(cfg.report_path, j.dump(2) + "\n");

  std::printf("%-14s %7s %7s %14s %9s  %s\n", "suite", "trials", "failed", "worst slack",
              "seconds", "status");
  for (const auto& run : report.runs) {
    const auto& s = j["aggregate"]["suites"][run.suite];
    char worst[32] = "-";
    if (s["worst_relative_slack"].is_number()) {
      const double w = s["worst_relative_slack"].get<double>();
      if (std::isfinite(w)) std::snprintf(worst, sizeof worst, "%.3e", w);
    }
    std::printf("%-14s %7zu %7zu %14s %9.2f  %s\n", run.suite.c_str(), run.trials.size(),
                run.failed_trials(), worst, run.seconds, run.failed_trials() ? "FAIL" : "PASS");
  }
  std::printf("report: %s (seed %llu)\n", cfg.report_path.c_str(),
              static_cast<unsigned long long>(cfg.seed));
  return report.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic eigenvalues, Williamson decompositions and inequality suites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(harness::kArtifactVersion));

  std::string input, output, method = "skew-canonical", second;

  auto* eig = app.add_subcommand("eig", "Print ascending symplectic eigenvalues");
  eig->add_option("input", input, "Matrix file (JSON or CSV)")->required();
  eig->add_option("--method", method, "skew-canonical | ja-eigen | williamson")
      ->capture_default_str();

  auto* will = app.add_subcommand("williamson", "Write the Williamson decomposition as JSON");
  will->add_option("input", input, "Matrix file (JSON or CSV)")->required();
  will->add_option("-o,--output", output, "Output path (default stdout)");

  auto* mean = app.add_subcommand("mean", "Geometric mean A#B and its symplectic spectrum");
  mean->add_option("a", input, "First matrix")->required();
  mean->add_option("b", second, "Second matrix")->required();

  auto* comp = app.add_subcommand("compress", "Compression of A to the span of a tuple");
  comp->add_option("a", input, "Matrix file")->required();
  comp->add_option("tuple", second, "2n x 2k matrix with columns x_1..x_k, y_1..y_k")->required();

  harness::SuiteConfig cfg;
  cfg.report_path = "sympspec-report.json";
  std::optional<std::uint64_t> seed, replay;
  auto* ver = app.add_subcommand("verify", "Run seeded verification suites");
  ver->add_option("--suite", cfg.suite, "Suite id or 'all'")->capture_default_str();
  ver->add_option("--trials", cfg.trials, "Trials per suite")->capture_default_str();
  ver->add_option("--nmin", cfg.n_min, "Smallest half-dimension")->capture_default_str();
  ver->add_option("--nmax", cfg.n_max, "Largest half-dimension")->capture_default_str();
  ver->add_option("--seed", seed, "Master seed (default $SYMPSPEC_SEED or 0)");
  ver->add_option("--tol", cfg.tol, "Slack tolerance")->capture_default_str();
  ver->add_option("--report", cfg.report_path, "Report path")->capture_default_str();
  ver->add_option("--samples", cfg.samples, "Chain samples per extremal trial")->capture_default_str();
  ver->add_option("--chains", cfg.chains, "Constructed witnesses per extremal trial")
      ->capture_default_str();
  ver->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  ver->add_option("--replay", replay, "Rerun one trial of --suite and print it");

  auto* rep = app.add_subcommand("repro", "Reproduce d(AᵀA) != d(AAᵀ)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*eig) return cmd_eig(input, method);
    if (*will) return cmd_williamson(input, output);
    if (*mean) return cmd_mean(input, second);
    if (*comp) return cmd_compress(input, second);
    if (*ver) return cmd_verify(cfg, seed, replay);
    if (*rep) return cmd_repro();
  } catch (const harness::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
