#include "sst/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "sst/metrics.hpp"
#include "sst/observation.hpp"
#include "sst/rng.hpp"

namespace sst {

using nlohmann::json;

std::uint64_t cell_seed(std::uint64_t base_seed, int n, int trial) {
  const std::uint64_t h =
      mix64(mix64(static_cast<std::uint64_t>(n)) ^
            mix64(static_cast<std::uint64_t>(trial) * 0x100000001B3ull));
  return base_seed ^ h;
}

namespace {

struct Cell {
  int n;
  int trial;
};

std::vector<TrialRecord> run_cell(const ExperimentSpec& spec, const Cell& cell) {
  std::vector<TrialRecord> records;
  const std::uint64_t seed = cell_seed(spec.base_seed, cell.n, cell.trial);

  GeneratorSpec gen = spec.generator;
  gen.n = cell.n;
  gen.seed = seed;

  TrialRecord base;
  base.generator = kind_name(spec.generator.kind);
  base.n = cell.n;
  base.trial = cell.trial;
  base.seed = seed;

  std::optional<ProbabilityMatrix> truth;
  std::optional<ObservationMatrix> obs;
  std::string setup_error;
  try {
    truth = generate(gen);
    obs = spec.p_obs ? sample_partial(*truth, *spec.p_obs, seed) : sample_full(*truth, seed);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  for (std::size_t e = 0; e < spec.estimators.size(); ++e) {
    const EstimatorSpec& est = spec.estimators[e];
    TrialRecord rec = base;
    rec.estimator = est.id;
    rec.estimator_index = static_cast<int>(e);
    if (!setup_error.empty()) {
      rec.skipped = true;
      rec.error = setup_error;
      records.push_back(std::move(rec));
      continue;
    }
    if (est.kind == EstimatorSpec::Kind::lse_bruteforce && cell.n > 8) {
      rec.skipped = true;
      rec.error = "lse_bruteforce excluded for n > 8";
      records.push_back(std::move(rec));
      continue;
    }
    if (est.kind == EstimatorSpec::Kind::two_stage && spec.p_obs) {
      rec.skipped = true;
      rec.error = "two_stage unsupported for partial observations";
      records.push_back(std::move(rec));
      continue;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
      std::optional<ProbabilityMatrix> estimate;
      switch (est.kind) {
        case EstimatorSpec::Kind::svt: {
          SvtConfig cfg = est.svt;
          cfg.clip_to_box = true;  // the harness measures the projected output
          estimate = spec.p_obs ? svt_estimate(linearize_partial(*obs), cfg).estimate()
                                : svt_estimate(*obs, cfg).estimate();
          break;
        }
        case EstimatorSpec::Kind::mle: {
          MleResult fit = mle_fit(*obs, est.mle);
          rec.converged = fit.converged;
          estimate = induce_matrix(fit.weights, est.mle.cdf);
          break;
        }
        case EstimatorSpec::Kind::two_stage: {
          FasConfig fas = est.fas;
          if (fas.strategy == FasConfig::Strategy::exhaustive && cell.n > 10) {
            fas.strategy = FasConfig::Strategy::insertion_local_search;
          }
          fas.seed = seed;
          TwoStageResult two = two_stage_estimate(*obs, fas, est.iso);
          rec.converged = two.converged;
          estimate = std::move(two.matrix);
          break;
        }
        case EstimatorSpec::Kind::lse_bruteforce: {
          LseResult lse = spec.p_obs
                              ? lse_sst_bruteforce(linearize_partial(*obs).values, est.iso)
                              : lse_sst_bruteforce(*obs, est.iso);
          rec.converged = lse.converged;
          estimate = std::move(lse.matrix);
          break;
        }
      }
      rec.mse = normalized_mse(*estimate, *truth);
    } catch (const std::exception& ex) {
      rec.error = ex.what();
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records.push_back(std::move(rec));
  }
  return records;
}

std::string format_seed(std::uint64_t v) { return std::to_string(v); }

json record_to_json(const TrialRecord& r) {
  json j;
  j["generator"] = r.generator;
  j["n"] = r.n;
  j["trial"] = r.trial;
  j["estimator"] = r.estimator;
  j["estimator_index"] = r.estimator_index;
  if (r.mse) {
    j["mse"] = *r.mse;
  } else {
    j["mse"] = nullptr;
  }
  j["seconds"] = r.seconds;
  j["converged"] = r.converged;
  j["skipped"] = r.skipped;
  j["error"] = r.error;
  j["seed"] = format_seed(r.seed);
  return j;
}

TrialRecord record_from_json(const json& j) {
  TrialRecord r;
  r.generator = j.at("generator").get<std::string>();
  r.n = j.at("n").get<int>();
  r.trial = j.at("trial").get<int>();
  r.estimator = j.at("estimator").get<std::string>();
  r.estimator_index = j.value("estimator_index", 0);
  if (!j.at("mse").is_null()) r.mse = j.at("mse").get<double>();
  r.seconds = j.value("seconds", 0.0);
  r.converged = j.value("converged", true);
  r.skipped = j.value("skipped", false);
  r.error = j.value("error", std::string());
  r.seed = std::stoull(j.value("seed", std::string("0")));
  return r;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers) {
  if (spec.n_grid.empty() || spec.trials < 1) {
    throw Error(Errc::InvalidConfig, "experiment needs a nonempty n_grid and trials >= 1");
  }
  std::vector<Cell> cells;
  for (int n : spec.n_grid)
    for (int t = 0; t < spec.trials; ++t) cells.push_back({n, t});

  std::vector<std::vector<TrialRecord>> slots(cells.size());
  if (workers <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) slots[c] = run_cell(spec, cells[c]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= cells.size()) return;
        slots[c] = run_cell(spec, cells[c]);
      }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(cells.size()));
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<TrialRecord> records;
  for (auto& slot : slots)
    for (auto& r : slot) records.push_back(std::move(r));
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.trial != b.trial) return a.trial < b.trial;
    return a.estimator_index < b.estimator_index;
  });
  return records;
}

void write_records_jsonl(const std::string& path, const std::vector<TrialRecord>& records) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
  for (const auto& r : records) os << record_to_json(r).dump() << '\n';
}

std::vector<TrialRecord> read_records_jsonl(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(json::parse(line)));
  }
  return records;
}

LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) return {0.0, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return {0.0, sy / m};
  LogLogFit fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  // Group key: (generator, estimator) in first-seen order, then n ascending.
  struct Group {
    std::string generator, estimator;
    std::vector<int> ns;
    std::vector<double> means, stderrs;
  };
  std::vector<Group> groups;
  auto find_group = [&](const std::string& g, const std::string& e) -> Group& {
    for (auto& grp : groups)
      if (grp.generator == g && grp.estimator == e) return grp;
    groups.push_back({g, e, {}, {}, {}});
    return groups.back();
  };

  auto cell_samples = [&](const Group& grp, int n) {
    std::vector<double> v;
    for (const auto& r : records) {
      if (r.skipped || !r.mse) continue;
      if (r.generator == grp.generator && r.estimator == grp.estimator && r.n == n) {
        v.push_back(*r.mse);
      }
    }
    return v;
  };

  for (const auto& r : records) {
    if (r.skipped || !r.mse) continue;
    Group& grp = find_group(r.generator, r.estimator);
    if (std::find(grp.ns.begin(), grp.ns.end(), r.n) == grp.ns.end()) grp.ns.push_back(r.n);
  }

  std::vector<SummaryRow> rows;
  for (auto& grp : groups) {
    std::sort(grp.ns.begin(), grp.ns.end());
    std::vector<double> xs, ys;
    for (int n : grp.ns) {
      const std::vector<double> v = cell_samples(grp, n);
      if (v.empty()) continue;
      double mean = 0.0;
      for (double s : v) mean += s;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double s : v) var += (s - mean) * (s - mean);
      const double sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
      grp.means.push_back(mean);
      grp.stderrs.push_back(sd / std::sqrt(static_cast<double>(v.size())));
      if (mean > 0.0) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(mean);
      }
    }
    const double slope = fit_log_log(xs, ys).slope;
    std::size_t k = 0;
    for (int n : grp.ns) {
      if (cell_samples(grp, n).empty()) continue;
      rows.push_back({grp.generator, grp.estimator, n, grp.means[k], grp.stderrs[k], slope});
      ++k;
    }
  }
  return rows;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
  os << "generator,estimator,n,mean_mse,stderr,slope_overall\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.12g,%.12g,%.12g\n", r.generator.c_str(),
                  r.estimator.c_str(), r.n, r.mean_mse, r.stderr_mse, r.slope_overall);
    os << buf;
  }
}

namespace {

SvtConfig parse_svt(const json& j) {
  SvtConfig cfg;
  const std::string mode = j.value("mode", std::string("soft"));
  if (mode == "soft") {
    cfg.mode = SvtConfig::Mode::soft;
  } else if (mode == "hard") {
    cfg.mode = SvtConfig::Mode::hard;
  } else {
    throw Error(Errc::InvalidConfig, "svt mode must be soft or hard");
  }
  if (j.contains("lambda") && !j["lambda"].is_string()) {
    cfg.lambda = j["lambda"].get<double>();
  }
  cfg.clip_to_box = j.value("clip", true);
  return cfg;
}

MleConfig parse_mle(const json& j) {
  MleConfig cfg;
  const std::string cdf = j.value("cdf", std::string("gaussian"));
  if (cdf == "gaussian") {
    cfg.cdf = Cdf::gaussian;
  } else if (cdf == "logistic") {
    cfg.cdf = Cdf::logistic;
  } else {
    throw Error(Errc::InvalidConfig, "cdf must be gaussian or logistic");
  }
  cfg.grad_tol = j.value("grad_tol", cfg.grad_tol);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.step = j.value("step", cfg.step);
  return cfg;
}

FasConfig parse_fas(const json& j) {
  FasConfig cfg;
  const std::string s = j.value("fas", std::string("local"));
  if (s == "exhaustive") {
    cfg.strategy = FasConfig::Strategy::exhaustive;
  } else if (s == "rowsum") {
    cfg.strategy = FasConfig::Strategy::row_sum_heuristic;
  } else if (s == "local") {
    cfg.strategy = FasConfig::Strategy::insertion_local_search;
  } else {
    throw Error(Errc::InvalidConfig, "fas must be exhaustive, rowsum or local");
  }
  cfg.restarts = j.value("restarts", cfg.restarts);
  return cfg;
}

IsotonicConfig parse_iso(const json& j) {
  IsotonicConfig cfg;
  cfg.tol = j.value("tol", cfg.tol);
  cfg.max_iters = j.value("iso_max_iters", cfg.max_iters);
  return cfg;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, std::string("bad spec JSON: ") + e.what());
  }
  ExperimentSpec spec;
  const json& g = j.at("generator");
  spec.generator.kind = kind_from_name(g.at("kind").get<std::string>());
  spec.generator.level = g.value("level", 0.9);
  if (g.contains("mixture")) {
    for (const auto& item : g["mixture"]) {
      spec.generator.mixture.emplace_back(
          Permutation::from_ranks_one_based(item.at("ranks").get<std::vector<int>>()),
          item.at("prob").get<double>());
    }
  }
  spec.n_grid = j.at("n_grid").get<std::vector<int>>();
  spec.trials = j.value("trials", 20);
  spec.base_seed = j.value("base_seed", 0ull);
  if (j.contains("p_obs") && !j["p_obs"].is_null()) spec.p_obs = j["p_obs"].get<double>();

  for (const auto& ej : j.at("estimators")) {
    EstimatorSpec est;
    est.id = ej.at("id").get<std::string>();
    const std::string type = ej.at("type").get<std::string>();
    if (type == "svt") {
      est.kind = EstimatorSpec::Kind::svt;
      est.svt = parse_svt(ej);
    } else if (type == "mle") {
      est.kind = EstimatorSpec::Kind::mle;
      est.mle = parse_mle(ej);
    } else if (type == "two_stage") {
      est.kind = EstimatorSpec::Kind::two_stage;
      est.fas = parse_fas(ej);
      est.iso = parse_iso(ej);
    } else if (type == "lse_bruteforce") {
      est.kind = EstimatorSpec::Kind::lse_bruteforce;
      est.iso = parse_iso(ej);
    } else {
      throw Error(Errc::InvalidConfig, "unknown estimator type '" + type + "'");
    }
    spec.estimators.push_back(std::move(est));
  }
  if (spec.estimators.empty()) {
    throw Error(Errc::InvalidConfig, "spec lists no estimators");
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_experiment_spec(text);
}

}  // namespace sst
