#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "svead/core.hpp"
#include "svead/voronoi.hpp"

namespace svead {

/// Non-fatal conditions met while fitting (clamped m, points never scored).
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// Score of one point within one partition, or nullopt when the point is the
/// only member of its cell. A multi-point cell whose members all coincide with
/// the anchor (delta_max == 0) scores 0.
std::optional<double> partition_score(const VoronoiPartition& partition,
                                      std::size_t point_index, Variant variant);

/// Per-feature affine map used by Normalize::ZScore. Population statistics;
/// features with zero variance map to 0.
class FeatureScaler {
 public:
  FeatureScaler() = default;
  static FeatureScaler fit(const Dataset& dataset, Normalize mode);

  bool is_identity() const noexcept { return mean_.empty(); }
  Dataset transform(const Dataset& dataset) const;

 private:
  std::vector<double> mean_;
  std::vector<double> inv_sd_;  // 0 for constant features
};

/// Transductive scoring: builds config.t partitions over `dataset` and scores
/// the same rows. f(x) is the mean over the partitions that scored x; a point
/// skipped by every partition scores 0 and is reported in `diag`.
///
/// Partition k draws its anchors with derive_partition_seed(config.seed, k)
/// and per-point sums are accumulated in ascending k, so the result is
/// bit-identical for any thread count.
ScoreVector fit_score(const Dataset& dataset, const DetectorConfig& config,
                      Diagnostics* diag = nullptr);

/// Fitted partitions kept for scoring points that were not part of the
/// fitting data (experimental). A new point is placed in the cell of its
/// nearest stored anchor and scored against that cell's stored statistics;
/// cells that held a single training point give no score.
class Ensemble {
 public:
  static Ensemble fit(const Dataset& dataset, const DetectorConfig& config,
                      Diagnostics* diag = nullptr);

  /// Throws ConfigError if the column count differs from the fitted data.
  ScoreVector score(const Dataset& points) const;

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dims() const noexcept { return dims_; }
  const DetectorConfig& config() const noexcept { return config_; }

 private:
  struct Member {
    AnchorSet anchors;
    std::vector<double> cell_max;
    std::vector<double> cell_mean;
    std::vector<std::size_t> cell_count;
  };

  DetectorConfig config_;
  FeatureScaler scaler_;
  std::size_t dims_ = 0;
  std::vector<Member> members_;
};

}  // namespace svead
