#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "svead/core.hpp"
#include "svead/synth_constants.hpp"

namespace svead {

struct SynthSizes {
  std::size_t normal = synth_constants::kNormalCount;
  std::size_t anomaly = synth_constants::kAnomalyCount;
};

// Each regime generator returns a labeled 2-D dataset: `normal` rows
// (label 0) followed by `anomaly` rows (label 1). Output depends only on the
// seed and sizes.

/// Global anomalies: Gaussian normals at the origin, anomalies scattered on
/// a far annulus.
Dataset gen_global_s1(std::uint64_t seed, SynthSizes sizes = {});

/// Local anomalies: normals on two interleaved moons, anomalies in the gaps
/// between them.
Dataset gen_local_s2(std::uint64_t seed, SynthSizes sizes = {});

/// Dependency anomalies: normals follow y = x, anomalies y = -x, both over
/// the same x range.
Dataset gen_dependency_s3(std::uint64_t seed, SynthSizes sizes = {});

/// Two 2-D Gaussian blobs of different spread, unlabeled. Rows
/// [0, n_dense) belong to the dense blob (sd 1, centred at the origin), rows
/// [n_dense, n_dense + n_sparse) to the sparse blob (sd scale_ratio).
/// Requires n_dense, n_sparse >= 10 and scale_ratio >= 1.
Dataset gen_two_density(std::uint64_t seed, std::size_t n_dense,
                        std::size_t n_sparse, double scale_ratio);

/// Centre of the sparse blob produced by gen_two_density.
std::vector<double> two_density_sparse_center(double scale_ratio);

/// gen_two_density plus `n_boundary` points planted on each blob at
/// `radius_in_sd` of that blob's sd (uniform random directions). Labels mark
/// the sparse-blob boundary points with 1, everything else 0.
struct BoundaryFixture {
  Dataset data;
  std::vector<std::size_t> dense_boundary;
  std::vector<std::size_t> sparse_boundary;
};
BoundaryFixture gen_two_density_boundary(std::uint64_t seed,
                                         std::size_t n_dense,
                                         std::size_t n_sparse,
                                         double scale_ratio,
                                         std::size_t n_boundary,
                                         double radius_in_sd);

/// n x d uniform [0, 1) features, unlabeled. Used by the runtime benchmark.
Dataset gen_uniform(std::uint64_t seed, std::size_t n, std::size_t d);

}  // namespace svead
