#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sst/harness.hpp"

using namespace sst;

namespace {

ExperimentSpec tiny_spec() {
  ExperimentSpec spec;
  spec.generator.kind = GeneratorSpec::Kind::noiseless;
  spec.n_grid = {4, 6};
  spec.trials = 2;
  spec.base_seed = 77;
  EstimatorSpec two_stage;
  two_stage.id = "two_stage";
  two_stage.kind = EstimatorSpec::Kind::two_stage;
  two_stage.fas.strategy = FasConfig::Strategy::exhaustive;
  EstimatorSpec svt;
  svt.id = "svt_soft";
  svt.kind = EstimatorSpec::Kind::svt;
  spec.estimators = {two_stage, svt};
  return spec;
}

}  // namespace

TEST_CASE("noiseless two-stage cells have zero error") {
  const auto records = run_experiment(tiny_spec());
  REQUIRE(records.size() == 8);
  for (const auto& r : records) {
    if (r.estimator != "two_stage") continue;
    REQUIRE(r.mse.has_value());
    CHECK(*r.mse == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(*r.mse >= 0.0);
    CHECK(*r.mse <= 1.0);
  }
}

TEST_CASE("reruns produce identical records apart from wall time") {
  const auto a = run_experiment(tiny_spec());
  const auto b = run_experiment(tiny_spec(), 2);  // workers must not change results
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].generator == b[i].generator);
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].trial == b[i].trial);
    CHECK(a[i].estimator == b[i].estimator);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].skipped == b[i].skipped);
    REQUIRE(a[i].mse.has_value() == b[i].mse.has_value());
    if (a[i].mse) CHECK(*a[i].mse == *b[i].mse);
  }
}

TEST_CASE("brute-force cells skip above n = 8 with a marked record") {
  ExperimentSpec spec = tiny_spec();
  spec.n_grid = {6, 12};
  EstimatorSpec lse;
  lse.id = "lse";
  lse.kind = EstimatorSpec::Kind::lse_bruteforce;
  spec.estimators = {lse};
  const auto records = run_experiment(spec);
  for (const auto& r : records) {
    if (r.n == 6) {
      CHECK(!r.skipped);
      CHECK(r.mse.has_value());
    } else {
      CHECK(r.skipped);
      CHECK(!r.mse.has_value());
    }
  }
}

TEST_CASE("cell isolation: a failing estimator never poisons other cells") {
  ExperimentSpec spec = tiny_spec();
  spec.p_obs = 0.5;  // two_stage unsupported on partial data -> skipped records
  const auto records = run_experiment(spec);
  int skipped = 0, fine = 0;
  for (const auto& r : records) {
    if (r.estimator == "two_stage") {
      CHECK(r.skipped);
      ++skipped;
    } else {
      CHECK(r.mse.has_value());
      ++fine;
    }
  }
  CHECK(skipped == 4);
  CHECK(fine == 4);
}

TEST_CASE("jsonl round trip") {
  const auto records = run_experiment(tiny_spec());
  const std::string path = (std::filesystem::temp_directory_path() / "sst_records.jsonl").string();
  write_records_jsonl(path, records);
  const auto back = read_records_jsonl(path);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].estimator == records[i].estimator);
    CHECK(back[i].seed == records[i].seed);
    if (records[i].mse) CHECK(*back[i].mse == *records[i].mse);
  }
  std::remove(path.c_str());
}

TEST_CASE("log-log fits recover exact power laws") {
  std::vector<double> ns = {16, 32, 64, 128};
  std::vector<double> inv_n, inv_sqrt;
  for (double n : ns) {
    inv_n.push_back(3.0 / n);
    inv_sqrt.push_back(0.2 / std::sqrt(n));
  }
  CHECK(fit_log_log(ns, inv_n).slope == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(fit_log_log(ns, inv_sqrt).slope == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("summaries drop empty cells and carry the group slope") {
  std::vector<TrialRecord> records;
  for (int n : {10, 20, 40}) {
    for (int t = 0; t < 3; ++t) {
      TrialRecord r;
      r.generator = "synthetic";
      r.estimator = "est";
      r.n = n;
      r.trial = t;
      r.mse = 1.0 / n;
      records.push_back(r);
    }
  }
  TrialRecord skipped;
  skipped.generator = "synthetic";
  skipped.estimator = "est";
  skipped.n = 80;
  skipped.skipped = true;
  records.push_back(skipped);

  const auto rows = summarize(records);
  REQUIRE(rows.size() == 3);  // the n=80 cell is absent, not NaN
  for (const auto& row : rows) {
    CHECK(row.mean_mse == doctest::Approx(1.0 / row.n));
    CHECK(row.stderr_mse == doctest::Approx(0.0));
    CHECK(row.slope_overall == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("experiment spec JSON parsing") {
  const std::string text = R"({
    "generator": {"kind": "high_snr", "level": 0.8},
    "n_grid": [8, 16],
    "trials": 3,
    "base_seed": 11,
    "estimators": [
      {"id": "svt", "type": "svt", "mode": "soft", "lambda": "auto"},
      {"id": "mle", "type": "mle", "cdf": "logistic"},
      {"id": "ts", "type": "two_stage", "fas": "local", "restarts": 2}
    ]
  })";
  const ExperimentSpec spec = parse_experiment_spec(text);
  CHECK(spec.generator.kind == GeneratorSpec::Kind::high_snr);
  CHECK(spec.generator.level == 0.8);
  CHECK(spec.n_grid == std::vector<int>{8, 16});
  CHECK(spec.trials == 3);
  CHECK(spec.estimators.size() == 3);
  CHECK(spec.estimators[1].mle.cdf == Cdf::logistic);
  CHECK(!spec.p_obs.has_value());

  CHECK_THROWS_AS(parse_experiment_spec("{"), Error);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"generator": {"kind": "nope"},
    "n_grid": [4], "estimators": [{"id": "x", "type": "svt"}]})"),
                  Error);
}

TEST_CASE("cell seeds decouple cells") {
  CHECK(cell_seed(1, 16, 0) != cell_seed(1, 16, 1));
  CHECK(cell_seed(1, 16, 0) != cell_seed(1, 32, 0));
  CHECK(cell_seed(1, 16, 3) == cell_seed(1, 16, 3));
}
