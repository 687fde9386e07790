#include "svead/core.hpp"

#include <cmath>
#include <utility>

namespace svead {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kRunSalt = 0xD1B54A32D192ED03ULL;

std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_partition_seed(std::uint64_t master_seed,
                                    std::uint64_t partition_index) noexcept {
  return splitmix64_finalize(master_seed + (partition_index + 1) * kGolden);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t run_index) noexcept {
  return derive_partition_seed(master_seed ^ kRunSalt, run_index);
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::DualFactor:
      return "dual-factor";
    case Variant::PositionOnly:
      return "position-only";
    case Variant::MeanOnly:
      return "mean-only";
  }
  return "unknown";
}

std::string_view to_string(Normalize n) {
  switch (n) {
    case Normalize::None:
      return "none";
    case Normalize::ZScore:
      return "zscore";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  if (text == "dual-factor") return Variant::DualFactor;
  if (text == "position-only") return Variant::PositionOnly;
  if (text == "mean-only") return Variant::MeanOnly;
  throw ConfigError("unknown scoring variant '" + std::string(text) +
                    "' (expected dual-factor, position-only or mean-only)");
}

Normalize parse_normalize(std::string_view text) {
  if (text == "none") return Normalize::None;
  if (text == "zscore") return Normalize::ZScore;
  throw ConfigError("unknown normalization '" + std::string(text) +
                    "' (expected none or zscore)");
}

Dataset::Dataset(std::vector<double> features, std::size_t rows,
                 std::size_t cols,
                 std::optional<std::vector<std::uint8_t>> labels,
                 std::string name)
    : features_(std::move(features)),
      rows_(rows),
      cols_(cols),
      labels_(std::move(labels)),
      name_(std::move(name)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ConfigError("dataset must have at least one row and one column");
  }
  if (features_.size() != rows_ * cols_) {
    throw ConfigError("feature buffer has " + std::to_string(features_.size()) +
                      " values, expected " + std::to_string(rows_ * cols_));
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!std::isfinite(features_[i])) {
      throw ConfigError("non-finite feature at row " +
                        std::to_string(i / cols_) + ", column " +
                        std::to_string(i % cols_));
    }
  }
  if (labels_) {
    if (labels_->size() != rows_) {
      throw ConfigError("label vector has length " +
                        std::to_string(labels_->size()) + ", expected " +
                        std::to_string(rows_));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*labels_)[i] > 1) {
        throw ConfigError("label at row " + std::to_string(i) +
                          " is not 0 or 1");
      }
    }
  }
}

std::span<const std::uint8_t> Dataset::labels() const {
  if (!labels_) {
    throw ConfigError("dataset '" + name_ + "' has no labels");
  }
  return *labels_;
}

std::size_t Dataset::count_positive() const {
  std::size_t count = 0;
  for (auto l : labels()) count += l;
  return count;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> feats;
  feats.reserve(indices.size() * cols_);
  std::optional<std::vector<std::uint8_t>> labs;
  if (labels_) labs.emplace().reserve(indices.size());
  for (auto i : indices) {
    if (i >= rows_) throw ConfigError("subset index out of range");
    auto r = row(i);
    feats.insert(feats.end(), r.begin(), r.end());
    if (labs) labs->push_back((*labels_)[i]);
  }
  return Dataset(std::move(feats), indices.size(), cols_, std::move(labs),
                 name_);
}

Dataset Dataset::with_name(std::string name) const {
  Dataset copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

void DetectorConfig::validate() const {
  if (m == 0) throw ConfigError("m (anchors per partition) must be >= 1");
  if (t == 0) throw ConfigError("t (ensemble size) must be >= 1");
}

}  // namespace svead
