#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "svead/core.hpp"

namespace svead {

/// Draws min(m, n) distinct row indices uniformly at random (Floyd's
/// algorithm on a std::mt19937_64 seeded with `seed`). When m >= n every row
/// is returned in ascending order. Throws ConfigError for n == 0 or m == 0.
std::vector<std::size_t> sample_anchors(std::size_t n, std::size_t m,
                                        std::uint64_t seed);
std::vector<std::size_t> sample_anchors(const Dataset& dataset, std::size_t m,
                                        std::uint64_t seed);

/// Anchor coordinates prepared for nearest-anchor queries: a feature-major
/// copy (all anchors' feature 0, then feature 1, ...) for the vectorized
/// screening pass, and the original rows for exact distances.
class AnchorSet {
 public:
  AnchorSet() = default;
  AnchorSet(const Dataset& dataset, std::span<const std::size_t> anchor_indices);
  /// Anchors given directly as row-major coordinates (size() * dims values).
  AnchorSet(std::span<const double> row_major, std::size_t count,
            std::size_t dims);

  std::size_t size() const noexcept { return count_; }
  std::size_t dims() const noexcept { return dims_; }
  std::size_t scratch_size() const noexcept { return stride_; }

  struct Nearest {
    std::uint32_t cell;
    double squared_distance;
  };

  /// Nearest anchor to `point` by squared Euclidean distance; equal distances
  /// resolve to the lowest anchor position. `scratch` must hold
  /// scratch_size() values.
  Nearest nearest(std::span<const double> point, std::span<double> scratch) const;

  /// Row-major coordinates of anchor j.
  std::vector<double> anchor(std::size_t j) const;

 private:
  void prepare();

  std::size_t count_ = 0;
  std::size_t dims_ = 0;
  std::size_t stride_ = 0;      // count_ padded to the kernel block width
  std::vector<double> rows_;    // count_ x dims_, row-major
  std::vector<double> coords_;  // dims_ x stride_, zero padded
  std::vector<double> norms_;   // squared norms, +inf in padding slots
  double max_norm_ = 0.0;
};

/// Assigns every row to its nearest anchor and collects per-cell statistics.
/// Anchor indices must be distinct and in range (ConfigError otherwise).
/// Cells can only be empty when the data contain duplicate anchor
/// coordinates; such cells report count 0 and zero statistics.
VoronoiPartition build_partition(const Dataset& dataset,
                                 std::span<const std::size_t> anchor_indices,
                                 unsigned threads = 1);

/// Same as above, writing into `out` and reusing its storage.
void build_partition(const Dataset& dataset,
                     std::span<const std::size_t> anchor_indices,
                     VoronoiPartition& out, unsigned threads = 1);

}  // namespace svead
