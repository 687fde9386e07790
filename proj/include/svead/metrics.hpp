#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "svead/core.hpp"

namespace svead {

/// Area under the ROC curve as the Mann-Whitney statistic: the probability
/// that a random positive outscores a random negative, ties counting one
/// half. One sort, average ranks for tied scores.
///
/// Throws ConfigError on length mismatch and MetricError when only one class
/// is present.
double auc_roc(std::span<const double> scores,
               std::span<const std::uint8_t> labels);

/// Average precision. Rows are visited in descending score order; a block of
/// tied scores is treated as a single cut, so every positive in the block is
/// credited with the precision measured at the end of the block. Without ties
/// this is sum over positives of precision@rank / #positives.
double auc_pr(std::span<const double> scores,
              std::span<const std::uint8_t> labels);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for one value
};

Summary summarize(std::span<const double> values);

struct EvalReport {
  Summary roc;
  Summary pr;
  std::vector<double> roc_runs;
  std::vector<double> pr_runs;
};

enum class SeedPolicy {
  PerRun,  // run r uses derive_run_seed(config.seed, r)
  Fixed,   // every run reuses config.seed
};

/// Scores `dataset` `runs` times and summarizes both AUCs. Throws ConfigError
/// for unlabeled data or runs == 0.
EvalReport repeated_eval(const Dataset& dataset, const DetectorConfig& config,
                         std::size_t runs,
                         SeedPolicy policy = SeedPolicy::PerRun);

}  // namespace svead
