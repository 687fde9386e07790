#include "svead/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "svead/scorer.hpp"

namespace svead {

namespace {

struct ClassCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

ClassCounts check_inputs(std::span<const double> scores,
                         std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw ConfigError("scores and labels differ in length (" +
                      std::to_string(scores.size()) + " vs " +
                      std::to_string(labels.size()) + ")");
  }
  ClassCounts c;
  for (auto l : labels) (l ? c.positive : c.negative)++;
  if (c.positive == 0 || c.negative == 0) {
    throw MetricError("AUC is undefined when only one class is present");
  }
  return c;
}

std::vector<std::size_t> order_by_score(std::span<const double> scores,
                                        bool descending) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (descending) {
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return scores[a] > scores[b];
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return scores[a] < scores[b];
    });
  }
  return order;
}

}  // namespace

double auc_roc(std::span<const double> scores,
               std::span<const std::uint8_t> labels) {
  const ClassCounts c = check_inputs(scores, labels);
  const auto order = order_by_score(scores, false);
  // Sum of (1-based, tie-averaged) ranks of the positives.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    std::size_t pos_in_block = 0;
    for (std::size_t k = i; k < j; ++k) pos_in_block += labels[order[k]];
    rank_sum += avg_rank * static_cast<double>(pos_in_block);
    i = j;
  }
  const double np = static_cast<double>(c.positive);
  const double nn = static_cast<double>(c.negative);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * nn);
}

double auc_pr(std::span<const double> scores,
              std::span<const std::uint8_t> labels) {
  const ClassCounts c = check_inputs(scores, labels);
  const auto order = order_by_score(scores, true);
  double ap = 0.0;
  std::size_t true_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    std::size_t pos_in_block = 0;
    for (std::size_t k = i; k < j; ++k) pos_in_block += labels[order[k]];
    if (pos_in_block > 0) {
      true_pos += pos_in_block;
      const double precision =
          static_cast<double>(true_pos) / static_cast<double>(j);
      ap += static_cast<double>(pos_in_block) * precision;
    }
    i = j;
  }
  return ap / static_cast<double>(c.positive);
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

EvalReport repeated_eval(const Dataset& dataset, const DetectorConfig& config,
                         std::size_t runs, SeedPolicy policy) {
  if (!dataset.has_labels()) {
    throw ConfigError("evaluation needs a labeled dataset");
  }
  if (runs == 0) throw ConfigError("runs must be >= 1");
  const auto labels = dataset.labels();
  const std::size_t positives = dataset.count_positive();
  if (positives == 0 || positives == labels.size()) {
    throw MetricError("AUC is undefined when only one class is present");
  }
  EvalReport report;
  for (std::size_t r = 0; r < runs; ++r) {
    DetectorConfig run_config = config;
    if (policy == SeedPolicy::PerRun) {
      run_config.seed = derive_run_seed(config.seed, r);
    }
    const ScoreVector sv = fit_score(dataset, run_config);
    report.roc_runs.push_back(auc_roc(sv.scores, labels));
    report.pr_runs.push_back(auc_pr(sv.scores, labels));
  }
  report.roc = summarize(report.roc_runs);
  report.pr = summarize(report.pr_runs);
  return report;
}

}  // namespace svead
