#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using svead::DetectorConfig;
using svead::cli::InputOptions;

struct DetectorFlags {
  std::string variant = "dual-factor";
  std::string normalize = "none";

  void apply(DetectorConfig& config) const {
    config.variant = svead::parse_variant(variant);
    config.normalize = svead::parse_normalize(normalize);
  }
};

struct InputFlags {
  std::string label;
  bool header = false;

  void apply(InputOptions& input) const {
    input.csv.has_header = header;
    input.csv.label = svead::LabelColumn::parse(label);
  }
};

void add_input(CLI::App* cmd, InputOptions& input, InputFlags& flags,
               const std::string& default_label) {
  flags.label = default_label;
  cmd->add_option("input", input.path, "CSV file of numeric rows")->required();
  cmd->add_flag("--header", flags.header, "Skip the first non-blank line");
  cmd->add_option("--label", flags.label,
                  "Label column: none, first, last or a 1-based number")
      ->capture_default_str();
}

void add_detector(CLI::App* cmd, DetectorConfig& config, DetectorFlags& flags,
                  bool with_m_t = true) {
  if (with_m_t) {
    cmd->add_option("--m", config.m, "Anchors per partition")->capture_default_str();
    cmd->add_option("--t", config.t, "Ensemble size")->capture_default_str();
  }
  cmd->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  cmd->add_option("--variant", flags.variant,
                  "dual-factor, position-only or mean-only")
      ->capture_default_str();
  cmd->add_option("--normalize", flags.normalize, "none or zscore")
      ->capture_default_str();
  cmd->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svead: anomaly scoring with ensembles of random Voronoi partitions"};
  app.require_subcommand(1);

  svead::cli::ScoreOptions score;
  InputFlags score_in;
  DetectorFlags score_det;
  auto* score_cmd = app.add_subcommand("score", "Score every row of a CSV file");
  add_input(score_cmd, score.input, score_in, "none");
  add_detector(score_cmd, score.config, score_det);
  score_cmd->add_option("--out", score.out, "Output path ('-' for stdout)")
      ->capture_default_str();

  svead::cli::EvalOptions eval;
  InputFlags eval_in;
  DetectorFlags eval_det;
  auto* eval_cmd = app.add_subcommand("eval", "AUC-ROC / AUC-PR over repeated runs");
  add_input(eval_cmd, eval.input, eval_in, "last");
  add_detector(eval_cmd, eval.config, eval_det);
  eval_cmd->add_option("--runs", eval.runs, "Repetitions")->capture_default_str();

  svead::cli::SweepOptions sweep;
  InputFlags sweep_in;
  DetectorFlags sweep_det;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate over an m x t grid");
  add_input(sweep_cmd, sweep.input, sweep_in, "last");
  add_detector(sweep_cmd, sweep.config, sweep_det, false);
  sweep_cmd->add_option("--m-grid", sweep.m_grid, "Comma-separated m values")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--t-grid", sweep.t_grid, "Comma-separated t values")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--runs", sweep.runs, "Repetitions")->capture_default_str();

  svead::cli::ContaminateOptions cont;
  InputFlags cont_in;
  DetectorFlags cont_det;
  auto* cont_cmd = app.add_subcommand(
      "contaminate", "Subsample anomalies to fixed rates and evaluate");
  add_input(cont_cmd, cont.input, cont_in, "last");
  add_detector(cont_cmd, cont.config, cont_det);
  cont_cmd->add_option("--rates", cont.rates, "Comma-separated anomaly rates")
      ->delimiter(',')
      ->capture_default_str();
  cont_cmd->add_option("--runs", cont.runs, "Repetitions")->capture_default_str();

  svead::cli::BenchOptions bench;
  DetectorFlags bench_det;
  auto* bench_cmd =
      app.add_subcommand("bench", "Time fit_score on uniform random data");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated row counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--d-list", bench.d_list, "Comma-separated dimensions")
      ->delimiter(',')
      ->capture_default_str();
  add_detector(bench_cmd, bench.config, bench_det);

  svead::cli::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic dataset as CSV");
  synth_cmd->add_option("--kind", synth.kind, "s1, s2, s3, two-density or uniform")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--normal", synth.sizes.normal, "Normal rows (s1-s3)")
      ->capture_default_str();
  synth_cmd->add_option("--anomaly", synth.sizes.anomaly, "Anomaly rows (s1-s3)")
      ->capture_default_str();
  synth_cmd->add_option("--n-dense", synth.n_dense, "Dense blob rows")
      ->capture_default_str();
  synth_cmd->add_option("--n-sparse", synth.n_sparse, "Sparse blob rows")
      ->capture_default_str();
  synth_cmd->add_option("--scale-ratio", synth.scale_ratio, "Sparse/dense sd ratio")
      ->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Rows (uniform)")->capture_default_str();
  synth_cmd->add_option("--d", synth.d, "Columns (uniform)")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output path ('-' for stdout)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (score_cmd->parsed()) {
      score_in.apply(score.input);
      score_det.apply(score.config);
      return svead::cli::cmd_score(score, std::cout, std::cerr);
    }
    if (eval_cmd->parsed()) {
      eval_in.apply(eval.input);
      eval_det.apply(eval.config);
      return svead::cli::cmd_eval(eval, std::cout, std::cerr);
    }
    if (sweep_cmd->parsed()) {
      sweep_in.apply(sweep.input);
      sweep_det.apply(sweep.config);
      return svead::cli::cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (cont_cmd->parsed()) {
      cont_in.apply(cont.input);
      cont_det.apply(cont.config);
      return svead::cli::cmd_contaminate(cont, std::cout, std::cerr);
    }
    if (bench_cmd->parsed()) {
      bench_det.apply(bench.config);
      return svead::cli::cmd_bench(bench, std::cout, std::cerr);
    }
    if (synth_cmd->parsed()) {
      return svead::cli::cmd_synth(synth, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
