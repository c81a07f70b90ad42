#pragma once
// Seeded verification suites. Every trial draws its instance from
// Rng::stream(seed, suite, trial), so a trial can be rerun on its own and
// the report does not depend on how many threads ran it.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympspec/inequalities/lidskii.hpp"

namespace sympspec::harness {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct SuiteConfig {
  std::string suite = "all";
  std::size_t trials = 50;
  std::size_t n_min = 1;
  std::size_t n_max = 5;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string report_path;
  /// Extremal suites: canonical-chain samples and constructed witnesses per
  /// trial.
  std::size_t samples = 200;
  std::size_t chains = 100;
  std::size_t jobs = 1;

  /// ValidationError unless trials >= 1, 1 <= n_min <= n_max, tol > 0 and
  /// the suite name is known.
  void validate() const;
};

/// Suite ids in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// One inequality or contract inside a trial.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  inequalities::Direction direction = inequalities::Direction::GreaterEqual;
  double slack = 0.0;
  double scale = 1.0;
  bool passed = true;
  /// Counts (violations, failed constructions, mismatches) rather than
  /// slacks; left out of the worst-slack aggregate.
  bool is_count = false;
  std::string note;
};

/// lhs >= rhs (resp. <=) allowing tol * scale.
Check ge_check(std::string name, double lhs, double rhs, double tol, double scale = 1.0);
Check le_check(std::string name, double lhs, double rhs, double tol, double scale = 1.0);
/// Passes when count == 0.
Check count_check(std::string name, std::size_t count);

struct TrialResult {
  std::string suite;
  std::uint64_t trial = 0;
  std::size_t n = 0;
  std::vector<std::size_t> index_set;
  std::vector<Check> checks;
  /// Instance data for replay (matrices, index set); only serialised for
  /// failing trials.
  nlohmann::json instance;
  /// Witness data for failing trials (tuples, descriptions).
  nlohmann::json witness;
  std::string error;

  bool passed() const;
};

/// Runs a single trial of a single suite (not "all").
TrialResult run_trial(const SuiteConfig& cfg, const std::string& suite, std::uint64_t trial);

struct SuiteRun {
  std::string suite;
  std::vector<TrialResult> trials;
  double seconds = 0.0;

  std::size_t failed_trials() const;
};

/// Runs cfg.trials trials of one suite on cfg.jobs threads; results in
/// trial order.
SuiteRun run_suite(const SuiteConfig& cfg, const std::string& suite);

struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteRun> runs;
  nlohmann::json observations;

  bool passed() const;
  /// config, records, aggregate, failures, observations, version, and a
  /// separate "timing" object that is the only run-dependent part.
  nlohmann::json to_json() const;
};

/// Runs cfg.suite ("all" expands to every suite).
SuiteReport run_report(const SuiteConfig& cfg);

/// Report JSON with the "timing" object removed, for determinism checks.
nlohmann::json strip_timing(nlohmann::json report);

nlohmann::json trial_to_json(const TrialResult& t, bool with_instance);

}  // namespace sympspec::harness
