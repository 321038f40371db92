#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sst/generators.hpp"
#include "sst/isotonic.hpp"
#include "sst/mle.hpp"
#include "sst/svt.hpp"

namespace sst {

struct EstimatorSpec {
  enum class Kind { svt, mle, two_stage, lse_bruteforce };
  std::string id;
  Kind kind = Kind::svt;
  SvtConfig svt;
  MleConfig mle;
  FasConfig fas{FasConfig::Strategy::insertion_local_search, 4, 0};
  IsotonicConfig iso;
};

struct ExperimentSpec {
  GeneratorSpec generator;  // template; n and seed are overridden per cell
  std::vector<int> n_grid;
  std::vector<EstimatorSpec> estimators;
  int trials = 20;
  std::optional<double> p_obs;  // absent = full observations
  std::uint64_t base_seed = 0;
};

struct TrialRecord {
  std::string generator;
  int n = 0;
  int trial = 0;
  std::string estimator;
  int estimator_index = 0;
  std::optional<double> mse;  // absent when skipped or failed
  double seconds = 0.0;
  bool converged = true;
  bool skipped = false;
  std::string error;
  std::uint64_t seed = 0;
};

// Per-cell seed: base_seed XOR a hash of (n, trial), so any cell can be
// reproduced in isolation.
std::uint64_t cell_seed(std::uint64_t base_seed, int n, int trial);

// Runs every (n, trial, estimator) cell. Estimator failures are captured in
// the record, never thrown; the brute-force LSE is skipped (with a marked
// record) when n > 8, and the two-stage estimator when observations are
// partial. Records come back sorted by (n, trial, estimator); identical
// specs produce identical records apart from the seconds field.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers = 1);

void write_records_jsonl(const std::string& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_jsonl(const std::string& path);

struct SummaryRow {
  std::string generator;
  std::string estimator;
  int n = 0;
  double mean_mse = 0.0;
  double stderr_mse = 0.0;
  double slope_overall = 0.0;  // OLS slope of log(mean mse) vs log(n)
};

// Per-cell means with standard errors plus one log-log slope per
// (generator, estimator) group. Cells without a finite mean are dropped, and
// groups with fewer than two cells report slope 0.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

// Least-squares slope/intercept of log(y) on log(x); used by summarize and
// exposed for rate checks.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

// JSON spec file schema (see README for an example):
//   generator: {kind, level?, mixture?}, n_grid, trials, base_seed, p_obs?,
//   estimators: [{id, type: svt|mle|two_stage|lse_bruteforce, ...}]
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::string& path);

}  // namespace sst
