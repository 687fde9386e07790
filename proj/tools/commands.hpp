#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "svead/core.hpp"
#include "svead/io.hpp"
#include "svead/synth.hpp"

// Command implementations behind the `svead` executable. Each returns the
// process exit status; tabular data goes to `out`, diagnostics to `err`.
namespace svead::cli {

struct InputOptions {
  std::string path;
  CsvOptions csv;
};

struct ScoreOptions {
  InputOptions input;
  DetectorConfig config;
  std::string out = "-";  // "-" writes to `out`
};

struct EvalOptions {
  InputOptions input;
  DetectorConfig config;
  std::size_t runs = 5;
};

struct SweepOptions {
  InputOptions input;
  DetectorConfig config;
  std::vector<std::size_t> m_grid{2, 4, 8, 16, 32, 64, 128, 256};
  std::vector<std::size_t> t_grid{100};
  std::size_t runs = 5;
};

struct ContaminateOptions {
  InputOptions input;
  DetectorConfig config;
  std::vector<double> rates{0.05, 0.10, 0.20, 0.30};
  std::size_t runs = 5;
};

struct BenchOptions {
  std::vector<std::size_t> n_list{62'500, 125'000, 250'000, 500'000};
  std::vector<std::size_t> d_list{10};
  DetectorConfig config;
};

struct SynthOptions {
  std::string kind = "s1";  // s1, s2, s3, two-density, uniform
  std::uint64_t seed = 0;
  SynthSizes sizes;
  std::size_t n_dense = 200;
  std::size_t n_sparse = 200;
  double scale_ratio = 4.0;
  std::size_t n = 1000;  // uniform
  std::size_t d = 10;    // uniform
  std::string out = "-";
};

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_contaminate(const ContaminateOptions& opts, std::ostream& out,
                    std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

struct ContaminationRow {
  double rate = 0.0;
  std::size_t anomalies = 0;  // anomalies kept in the subsample
  bool ok = false;
  double roc_mean = 0.0;
  double roc_std = 0.0;
  std::string error;
};

/// Keeps every normal row and a seeded subset of anomalies so that anomalies
/// make up `rate` of the result (rounded to the nearest count). Run r uses
/// detector seed derive_run_seed(config.seed, r), matching repeated_eval.
std::vector<ContaminationRow> contamination_study(const Dataset& dataset,
                                                  const DetectorConfig& config,
                                                  const std::vector<double>& rates,
                                                  std::size_t runs);

struct BenchRow {
  std::size_t n = 0;
  std::size_t d = 0;
  double seconds = 0.0;
};

std::vector<BenchRow> run_bench(const BenchOptions& opts);

/// Least-squares slope of log(y) against log(x). Needs two distinct x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace svead::cli
