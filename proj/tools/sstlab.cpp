// Command-line front end for the pairwise-comparison toolkit: ground-truth
// generation, observation sampling, the SVT / least-squares / MLE estimators,
// error metrics, class certification, and the Monte Carlo harness.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sst/classes.hpp"
#include "sst/generators.hpp"
#include "sst/harness.hpp"
#include "sst/isotonic.hpp"
#include "sst/metrics.hpp"
#include "sst/mle.hpp"
#include "sst/observation.hpp"
#include "sst/svt.hpp"

namespace {

using nlohmann::json;

sst::ObservationMatrix load_observations(const std::string& path, double p_obs) {
  return sst::read_observation_csv_file(path, p_obs);
}

int cmd_generate(const std::string& kind, int n, std::uint64_t seed, double level,
                 const std::string& out) {
  sst::GeneratorSpec spec;
  spec.kind = sst::kind_from_name(kind);
  spec.n = n;
  spec.seed = seed;
  spec.level = level;
  const sst::ProbabilityMatrix m = sst::generate(spec);
  sst::write_matrix_csv_file(out, m.values());
  return 0;
}

int cmd_sample(const std::string& matrix_path, double p_obs, std::uint64_t seed,
               const std::string& out) {
  const sst::ProbabilityMatrix m =
      sst::validate_probability_matrix(sst::read_matrix_csv_file(matrix_path));
  const sst::ObservationMatrix y =
      p_obs < 1.0 ? sst::sample_partial(m, p_obs, seed) : sst::sample_full(m, seed);
  sst::write_observation_csv_file(out, y);
  return 0;
}

int cmd_estimate_svt(const std::string& in, const std::string& out, const std::string& mode,
                     const std::string& lambda, double p_obs, bool no_clip) {
  sst::SvtConfig cfg;
  cfg.mode = mode == "hard" ? sst::SvtConfig::Mode::hard : sst::SvtConfig::Mode::soft;
  if (lambda != "auto") cfg.lambda = std::stod(lambda);
  cfg.clip_to_box = !no_clip;
  const sst::ObservationMatrix y = load_observations(in, p_obs);
  const sst::SvtResult res = y.mode() == sst::ObservationMatrix::Mode::partial
                                 ? sst::svt_estimate(sst::linearize_partial(y), cfg)
                                 : sst::svt_estimate(y, cfg);
  sst::write_matrix_csv_file(out, no_clip ? res.raw : res.estimate().values());
  return 0;
}

int cmd_estimate_lse(const std::string& in, const std::string& out, const std::string& strategy,
                     const std::string& fas, double tol, int max_iters, double p_obs,
                     const std::string& perm_out) {
  sst::IsotonicConfig iso;
  iso.tol = tol;
  iso.max_iters = max_iters;
  const sst::ObservationMatrix y = load_observations(in, p_obs);
  if (strategy == "bruteforce") {
    const sst::LseResult res =
        y.mode() == sst::ObservationMatrix::Mode::partial
            ? sst::lse_sst_bruteforce(sst::linearize_partial(y).values, iso)
            : sst::lse_sst_bruteforce(y, iso);
    sst::write_matrix_csv_file(out, res.matrix.values());
    if (!perm_out.empty()) {
      std::ofstream os(perm_out);
      os << sst::permutation_to_string(res.permutation) << '\n';
    }
    return 0;
  }
  sst::FasConfig fcfg;
  if (fas == "exhaustive") {
    fcfg.strategy = sst::FasConfig::Strategy::exhaustive;
  } else if (fas == "rowsum") {
    fcfg.strategy = sst::FasConfig::Strategy::row_sum_heuristic;
  } else {
    fcfg.strategy = sst::FasConfig::Strategy::insertion_local_search;
  }
  const sst::TwoStageResult res = sst::two_stage_estimate(y, fcfg, iso);
  sst::write_matrix_csv_file(out, res.matrix.values());
  if (!perm_out.empty()) {
    std::ofstream os(perm_out);
    os << sst::permutation_to_string(res.permutation) << '\n';
  }
  return 0;
}

int cmd_estimate_mle(const std::string& in, const std::string& out, const std::string& cdf,
                     double grad_tol, int max_iters, double p_obs,
                     const std::string& weights_out) {
  sst::MleConfig cfg;
  cfg.cdf = cdf == "logistic" ? sst::Cdf::logistic : sst::Cdf::gaussian;
  cfg.grad_tol = grad_tol;
  cfg.max_iters = max_iters;
  const sst::ObservationMatrix y = load_observations(in, p_obs);
  const int n = y.size();
  if (p_obs < (std::log(n) * std::log(n)) / n) {
    std::cerr << "warning: p_obs below (log n)^2/n; the MLE guarantee does not apply\n";
  }
  const sst::MleResult fit = sst::mle_fit(y, cfg);
  if (!fit.converged) std::cerr << "warning: MLE did not reach grad_tol\n";
  sst::write_matrix_csv_file(out, sst::induce_matrix(fit.weights, cfg.cdf).values());
  if (!weights_out.empty()) {
    std::ofstream os(weights_out);
    for (int i = 0; i < fit.weights.size(); ++i) {
      os << (i ? "," : "") << fit.weights[i];
    }
    os << '\n';
  }
  return 0;
}

int cmd_metric(const std::string& a_path, const std::string& b_path, double eps) {
  const sst::ProbabilityMatrix a =
      sst::validate_probability_matrix(sst::read_matrix_csv_file(a_path), sst::kLooseTol);
  const sst::ProbabilityMatrix b =
      sst::validate_probability_matrix(sst::read_matrix_csv_file(b_path), sst::kLooseTol);
  json j;
  j["frobenius_sq"] = sst::frobenius_distance_sq(a, b);
  j["normalized_mse"] = sst::normalized_mse(a, b);
  j["kl"] = sst::kl_divergence(a, b, eps);
  j["kl_eps"] = eps;
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_classify(const std::string& in, double gamma) {
  const sst::ProbabilityMatrix m =
      sst::validate_probability_matrix(sst::read_matrix_csv_file(in), sst::kLooseTol);
  json j;
  const auto sst_v = sst::is_sst(m);
  j["sst"]["member"] = sst_v.member;
  if (sst_v.member) {
    j["sst"]["order"] = sst::permutation_to_string(*sst_v.order);
  } else {
    j["sst"]["witness"] = {sst_v.i, sst_v.j, sst_v.k};
  }
  const auto mst_v = sst::is_mst(m);
  j["mst"]["member"] = mst_v.member;
  if (!mst_v.member) j["mst"]["witness"] = {mst_v.i, mst_v.j, mst_v.k};
  const auto wst_v = sst::is_wst(m);
  j["wst"]["member"] = wst_v.member;
  if (!wst_v.member) j["wst"]["witness"] = {wst_v.i, wst_v.j, wst_v.k};
  const auto par = sst::parametric_necessary_check(m);
  j["parametric_necessary"]["pass"] = par.pass;
  if (!par.pass) j["parametric_necessary"]["witness"] = {par.i1, par.i2, par.i3, par.i4};
  const auto high = sst::is_high_snr(m, gamma);
  j["high_snr"]["gamma"] = gamma;
  j["high_snr"]["member"] = high.member;
  if (!high.member && high.i >= 0) j["high_snr"]["witness"] = {high.i, high.j};
  j["full_marginals"] =
      sst::full_class_refuter(m) == sst::FullRefutation::refuted ? "refuted" : "unknown";
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_run(const std::string& spec_path, const std::string& out_dir, int workers) {
  const sst::ExperimentSpec spec = sst::load_experiment_spec(spec_path);
  std::filesystem::create_directories(out_dir);
  const auto records = sst::run_experiment(spec, workers);
  const std::string jsonl = out_dir + "/records.jsonl";
  sst::write_records_jsonl(jsonl, records);
  sst::write_summary_csv(out_dir + "/summary.csv", sst::summarize(records));
  std::cout << "wrote " << records.size() << " records to " << jsonl << '\n';
  return 0;
}

int cmd_summarize(const std::string& in, const std::string& out) {
  sst::write_summary_csv(out, sst::summarize(sst::read_records_jsonl(in)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-comparison matrix estimation under stochastic transitivity"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a ground-truth matrix CSV");
  std::string g_kind = "uniform", g_out = "matrix.csv";
  int g_n = 16;
  std::uint64_t g_seed = 0;
  double g_level = 0.9;
  gen->add_option("--kind", g_kind,
                  "uniform|thurstone|btl|high_snr|independent_bands|bad_matrix|noiseless");
  gen->add_option("--n", g_n, "item count");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--level", g_level, "high_snr win probability");
  gen->add_option("--out", g_out, "output CSV path")->required();

  // sample
  auto* smp = app.add_subcommand("sample", "Sample an observation matrix");
  std::string s_matrix, s_out = "obs.csv";
  double s_pobs = 1.0;
  std::uint64_t s_seed = 0;
  smp->add_option("--matrix", s_matrix, "ground-truth CSV")->required();
  smp->add_option("--pobs", s_pobs, "pair observation probability");
  smp->add_option("--seed", s_seed, "sampling seed");
  smp->add_option("--out", s_out, "output CSV path")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "Run an estimator on observations");
  est->require_subcommand(1);
  std::string e_in, e_out = "estimate.csv", e_perm_out, e_weights_out;
  double e_pobs = 1.0;

  auto* esvt = est->add_subcommand("svt", "Singular value thresholding");
  std::string svt_mode = "soft", svt_lambda = "auto";
  bool svt_noclip = false;
  esvt->add_option("--in", e_in, "observation CSV")->required();
  esvt->add_option("--out", e_out, "output CSV");
  esvt->add_option("--mode", svt_mode, "soft|hard");
  esvt->add_option("--lambda", svt_lambda, "auto or a float");
  esvt->add_option("--pobs", e_pobs, "observation probability of the input");
  esvt->add_flag("--no-clip", svt_noclip, "emit the raw reconstruction");

  auto* else_ = est->add_subcommand("lse", "Constrained least squares over the SST class");
  std::string lse_strategy = "two-stage", lse_fas = "local";
  double lse_tol = 1e-8;
  int lse_max_iters = 20000;
  else_->add_option("--in", e_in, "observation CSV")->required();
  else_->add_option("--out", e_out, "output CSV");
  else_->add_option("--strategy", lse_strategy, "bruteforce|two-stage");
  else_->add_option("--fas", lse_fas, "exhaustive|rowsum|local");
  else_->add_option("--tol", lse_tol, "Dykstra convergence tolerance");
  else_->add_option("--max-iters", lse_max_iters, "Dykstra cycle cap");
  else_->add_option("--pobs", e_pobs, "observation probability of the input");
  else_->add_option("--perm-out", e_perm_out, "also write the fitted permutation");

  auto* emle = est->add_subcommand("mle", "Parametric maximum likelihood");
  std::string mle_cdf = "gaussian";
  double mle_grad_tol = 1e-7;
  int mle_max_iters = 5000;
  emle->add_option("--in", e_in, "observation CSV")->required();
  emle->add_option("--out", e_out, "output CSV");
  emle->add_option("--cdf", mle_cdf, "gaussian|logistic");
  emle->add_option("--grad-tol", mle_grad_tol, "gradient-mapping stop threshold");
  emle->add_option("--max-iters", mle_max_iters, "iteration cap");
  emle->add_option("--pobs", e_pobs, "observation probability of the input");
  emle->add_option("--weights-out", e_weights_out, "also write the fitted weights");

  // metric
  auto* met = app.add_subcommand("metric", "Compare two matrix CSVs");
  std::string m_a, m_b;
  double m_eps = 0.05;
  met->add_option("--a", m_a, "first matrix CSV")->required();
  met->add_option("--b", m_b, "second matrix CSV")->required();
  met->add_option("--eps", m_eps, "KL clip level");

  // classify
  auto* cls = app.add_subcommand("classify", "Class membership verdicts for a matrix CSV");
  std::string c_in;
  double c_gamma = 0.1;
  cls->add_option("--in", c_in, "matrix CSV")->required();
  cls->add_option("--gamma", c_gamma, "high-SNR margin");

  // run / summarize
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment spec");
  std::string r_spec, r_out = "results";
  int r_workers = 1;
  run->add_option("--spec", r_spec, "experiment spec JSON")->required();
  run->add_option("--out", r_out, "output directory");
  run->add_option("--workers", r_workers, "concurrent cells");

  auto* summ = app.add_subcommand("summarize", "Summarize a records JSONL into CSV");
  std::string su_in, su_out = "summary.csv";
  summ->add_option("--in", su_in, "records JSONL")->required();
  summ->add_option("--out", su_out, "summary CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(g_kind, g_n, g_seed, g_level, g_out);
    if (smp->parsed()) return cmd_sample(s_matrix, s_pobs, s_seed, s_out);
    if (est->parsed()) {
      if (esvt->parsed()) {
        return cmd_estimate_svt(e_in, e_out, svt_mode, svt_lambda, e_pobs, svt_noclip);
      }
      if (else_->parsed()) {
        return cmd_estimate_lse(e_in, e_out, lse_strategy, lse_fas, lse_tol, lse_max_iters,
                                e_pobs, e_perm_out);
      }
      if (emle->parsed()) {
        return cmd_estimate_mle(e_in, e_out, mle_cdf, mle_grad_tol, mle_max_iters, e_pobs,
                                e_weights_out);
      }
    }
    if (met->parsed()) return cmd_metric(m_a, m_b, m_eps);
    if (cls->parsed()) return cmd_classify(c_in, c_gamma);
    if (run->parsed()) return cmd_run(r_spec, r_out, r_workers);
    if (summ->parsed()) return cmd_summarize(su_in, su_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
