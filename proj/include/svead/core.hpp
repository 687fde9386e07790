#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svead {

/// Invalid hyperparameters or a dataset that cannot be used as requested.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A metric was requested that is undefined for the given labels
/// (for example AUC with a single class present).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Variant {
  DualFactor,    // (delta / delta_max) * delta_mean
  PositionOnly,  // delta / delta_max
  MeanOnly,      // delta_mean
};

enum class Normalize {
  None,
  ZScore,  // per-feature mean 0, sd 1; zero-variance features map to 0
};

std::string_view to_string(Variant v);
std::string_view to_string(Normalize n);
/// Accepts "dual-factor", "position-only", "mean-only". Throws ConfigError.
Variant parse_variant(std::string_view text);
/// Accepts "none", "zscore". Throws ConfigError.
Normalize parse_normalize(std::string_view text);

/// n x d feature matrix stored row-major, plus optional 0/1 labels.
///
/// The constructor enforces the invariants: n >= 1, d >= 1, every value
/// finite, labels (if any) of length n with values in {0, 1}. Instances are
/// immutable afterwards.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::size_t rows, std::size_t cols,
          std::optional<std::vector<std::uint8_t>> labels = std::nullopt,
          std::string name = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {features_.data() + i * cols_, cols_};
  }
  std::span<const double> features() const noexcept { return features_; }
  bool has_labels() const noexcept { return labels_.has_value(); }
  /// Throws ConfigError when the dataset is unlabeled.
  std::span<const std::uint8_t> labels() const;
  const std::string& name() const noexcept { return name_; }

  std::size_t count_positive() const;

  /// New dataset holding the given rows in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;
  Dataset with_name(std::string name) const;

 private:
  std::vector<double> features_;
  std::size_t rows_;
  std::size_t cols_;
  std::optional<std::vector<std::uint8_t>> labels_;
  std::string name_;
};

struct DetectorConfig {
  std::size_t m = 16;  // anchors per partition
  std::size_t t = 100; // ensemble size
  std::uint64_t seed = 0;
  Variant variant = Variant::DualFactor;
  Normalize normalize = Normalize::None;
  /// Worker threads for the point loops; 0 means hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 0;

  /// Throws ConfigError if m or t is zero.
  void validate() const;
  std::size_t effective_m(std::size_t n) const noexcept { return m < n ? m : n; }
};

/// One ensemble member: the sampled anchors, each point's cell and distance,
/// and per-cell statistics. Cell j belongs to anchor_indices[j].
struct VoronoiPartition {
  std::vector<std::size_t> anchor_indices;
  std::vector<std::uint32_t> assignment;
  std::vector<double> delta;
  std::vector<double> cell_max;
  std::vector<double> cell_mean;
  std::vector<std::size_t> cell_count;

  std::size_t num_cells() const noexcept { return anchor_indices.size(); }
  std::size_t num_points() const noexcept { return assignment.size(); }
};

struct ScoreVector {
  std::vector<double> scores;
  /// Number of partitions in which each point received a score.
  std::vector<std::uint32_t> contributions;

  std::size_t size() const noexcept { return scores.size(); }
};

/// Seed for partition `partition_index` of a run seeded with `master_seed`.
///
/// This is the (partition_index + 1)-th output of a SplitMix64 generator
/// started at `master_seed`:
///
///   z = master_seed + (partition_index + 1) * 0x9E3779B97F4A7C15  (mod 2^64)
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// The finalizer is a bijection on 64-bit words, so the map is injective in
/// partition_index for a fixed master seed. Do not change it: recorded
/// scores depend on it.
std::uint64_t derive_partition_seed(std::uint64_t master_seed,
                                    std::uint64_t partition_index) noexcept;

/// Master seed for repetition `run_index` of an evaluation. Uses the same
/// mix on a salted master so run seeds and partition seeds do not collide.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t run_index) noexcept;

}  // namespace svead
