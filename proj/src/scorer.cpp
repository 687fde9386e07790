#include "svead/scorer.hpp"

#include <cmath>
#include <string>

#include "parallel.hpp"

namespace svead {

namespace {

double cell_score(double delta, double cell_max, double cell_mean,
                  Variant variant) {
  switch (variant) {
    case Variant::DualFactor:
      return cell_max > 0.0 ? (delta / cell_max) * cell_mean : 0.0;
    case Variant::PositionOnly:
      return cell_max > 0.0 ? delta / cell_max : 0.0;
    case Variant::MeanOnly:
      return cell_mean;
  }
  return 0.0;
}

std::size_t clamp_m(const Dataset& dataset, const DetectorConfig& config,
                    Diagnostics* diag) {
  config.validate();
  const std::size_t m = config.effective_m(dataset.rows());
  if (m != config.m && diag) {
    diag->warnings.push_back("m clamped to " + std::to_string(m) + " (dataset has " +
                             std::to_string(dataset.rows()) + " rows)");
  }
  return m;
}

ScoreVector finish(std::vector<double> sums, std::vector<std::uint32_t> counts,
                   Diagnostics* diag) {
  std::size_t unscored = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (counts[i] == 0) {
      sums[i] = 0.0;
      ++unscored;
    } else {
      sums[i] /= static_cast<double>(counts[i]);
    }
  }
  if (unscored > 0 && diag) {
    diag->warnings.push_back(std::to_string(unscored) +
                             " point(s) were alone in their cell in every "
                             "partition and were given score 0");
  }
  return ScoreVector{std::move(sums), std::move(counts)};
}

}  // namespace

std::optional<double> partition_score(const VoronoiPartition& partition,
                                      std::size_t point_index, Variant variant) {
  const std::uint32_t c = partition.assignment.at(point_index);
  if (partition.cell_count[c] <= 1) return std::nullopt;
  return cell_score(partition.delta[point_index], partition.cell_max[c],
                    partition.cell_mean[c], variant);
}

FeatureScaler FeatureScaler::fit(const Dataset& dataset, Normalize mode) {
  FeatureScaler s;
  if (mode == Normalize::None) return s;
  const std::size_t n = dataset.rows();
  const std::size_t d = dataset.cols();
  s.mean_.assign(d, 0.0);
  s.inv_sd_.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = dataset.row(i);
    for (std::size_t k = 0; k < d; ++k) s.mean_[k] += r[k];
  }
  for (auto& v : s.mean_) v /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = dataset.row(i);
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = r[k] - s.mean_[k];
      var[k] += diff * diff;
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    const double sd = std::sqrt(var[k] / static_cast<double>(n));
    s.inv_sd_[k] = sd > 0.0 ? 1.0 / sd : 0.0;
  }
  return s;
}

Dataset FeatureScaler::transform(const Dataset& dataset) const {
  if (is_identity()) return dataset;
  const std::size_t d = dataset.cols();
  if (d != mean_.size()) {
    throw ConfigError("scaler fitted on " + std::to_string(mean_.size()) +
                      " features, got " + std::to_string(d));
  }
  auto src = dataset.features();
  std::vector<double> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t k = i % d;
    out[i] = (src[i] - mean_[k]) * inv_sd_[k];
  }
  std::optional<std::vector<std::uint8_t>> labels;
  if (dataset.has_labels()) {
    auto l = dataset.labels();
    labels.emplace(l.begin(), l.end());
  }
  return Dataset(std::move(out), dataset.rows(), d, std::move(labels),
                 dataset.name());
}

ScoreVector fit_score(const Dataset& input, const DetectorConfig& config,
                      Diagnostics* diag) {
  const std::size_t m = clamp_m(input, config, diag);
  const Dataset dataset =
      FeatureScaler::fit(input, config.normalize).transform(input);
  const std::size_t n = dataset.rows();

  std::vector<double> sums(n, 0.0);
  std::vector<std::uint32_t> counts(n, 0);
  VoronoiPartition p;
  for (std::size_t k = 0; k < config.t; ++k) {
    const auto anchors =
        sample_anchors(n, m, derive_partition_seed(config.seed, k));
    build_partition(dataset, anchors, p, config.threads);
    detail::parallel_for(n, config.threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        if (auto s = partition_score(p, i, config.variant)) {
          sums[i] += *s;
          ++counts[i];
        }
      }
    });
  }
  return finish(std::move(sums), std::move(counts), diag);
}

Ensemble Ensemble::fit(const Dataset& input, const DetectorConfig& config,
                       Diagnostics* diag) {
  const std::size_t m = clamp_m(input, config, diag);
  Ensemble e;
  e.config_ = config;
  e.dims_ = input.cols();
  e.scaler_ = FeatureScaler::fit(input, config.normalize);
  const Dataset dataset = e.scaler_.transform(input);
  e.members_.reserve(config.t);
  for (std::size_t k = 0; k < config.t; ++k) {
    const auto anchors =
        sample_anchors(dataset.rows(), m, derive_partition_seed(config.seed, k));
    VoronoiPartition p = build_partition(dataset, anchors, config.threads);
    e.members_.push_back(Member{AnchorSet(dataset, anchors),
                                std::move(p.cell_max), std::move(p.cell_mean),
                                std::move(p.cell_count)});
  }
  return e;
}

ScoreVector Ensemble::score(const Dataset& input) const {
  if (input.cols() != dims_) {
    throw ConfigError("ensemble was fitted on " + std::to_string(dims_) +
                      " features, got " + std::to_string(input.cols()));
  }
  const Dataset points = scaler_.transform(input);
  const std::size_t n = points.rows();
  std::vector<double> sums(n, 0.0);
  std::vector<std::uint32_t> counts(n, 0);
  for (const Member& member : members_) {
    detail::parallel_for(n, config_.threads, [&](std::size_t b, std::size_t e) {
      std::vector<double> scratch(member.anchors.scratch_size());
      for (std::size_t i = b; i < e; ++i) {
        const auto hit = member.anchors.nearest(points.row(i), scratch);
        if (member.cell_count[hit.cell] <= 1) continue;
        sums[i] += cell_score(std::sqrt(hit.squared_distance),
                              member.cell_max[hit.cell],
                              member.cell_mean[hit.cell], config_.variant);
        ++counts[i];
      }
    });
  }
  return finish(std::move(sums), std::move(counts), nullptr);
}

}  // namespace svead
