#include "svead/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace svead {

namespace sc = synth_constants;

namespace {

using Rng = std::mt19937_64;

struct Builder {
  std::vector<double> features;
  std::vector<std::uint8_t> labels;

  void add(double x, double y, std::uint8_t label) {
    features.push_back(x);
    features.push_back(y);
    labels.push_back(label);
  }

  Dataset finish(std::string name) {
    const std::size_t n = labels.size();
    return Dataset(std::move(features), n, 2, std::move(labels),
                   std::move(name));
  }
};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double gaussian(Rng& rng, double sd) {
  return std::normal_distribution<double>(0.0, sd)(rng);
}

double angle(Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); }

// Distance from p to the half circle of radius r centred at (cx, cy): the
// upper half when `upper`, the lower half otherwise.
double distance_to_arc(double px, double py, double cx, double cy, double r,
                       bool upper) {
  const double dx = px - cx;
  const double dy = py - cy;
  const bool on_side = upper ? dy >= 0.0 : dy <= 0.0;
  if (on_side) return std::abs(std::hypot(dx, dy) - r);
  return std::min(std::hypot(dx - r, dy), std::hypot(dx + r, dy));
}

}  // namespace

Dataset gen_global_s1(std::uint64_t seed, SynthSizes sizes) {
  Rng rng(seed);
  Builder b;
  for (std::size_t i = 0; i < sizes.normal; ++i) {
    const double x = gaussian(rng, sc::kS1NormalSd);
    const double y = gaussian(rng, sc::kS1NormalSd);
    b.add(x, y, 0);
  }
  constexpr double r0 = sc::kS1AnnulusInner * sc::kS1AnnulusInner;
  constexpr double r1 = sc::kS1AnnulusOuter * sc::kS1AnnulusOuter;
  for (std::size_t i = 0; i < sizes.anomaly; ++i) {
    const double r = std::sqrt(uniform(rng, r0, r1));
    const double th = angle(rng);
    b.add(r * std::cos(th), r * std::sin(th), 1);
  }
  return b.finish("s1-global");
}

Dataset gen_local_s2(std::uint64_t seed, SynthSizes sizes) {
  Rng rng(seed);
  Builder b;
  const std::size_t outer = (sizes.normal + 1) / 2;
  for (std::size_t i = 0; i < sizes.normal; ++i) {
    const double th = uniform(rng, 0.0, std::numbers::pi);
    double x, y;
    if (i < outer) {
      x = sc::kS2Radius * std::cos(th);
      y = sc::kS2Radius * std::sin(th);
    } else {
      x = sc::kS2InnerShiftX - sc::kS2Radius * std::cos(th);
      y = sc::kS2VerticalOffset - sc::kS2Radius * std::sin(th);
    }
    const double jx = gaussian(rng, sc::kS2Jitter);
    const double jy = gaussian(rng, sc::kS2Jitter);
    b.add(x + jx, y + jy, 0);
  }
  for (std::size_t i = 0; i < sizes.anomaly;) {
    const double x = uniform(rng, sc::kS2BoxMinX, sc::kS2BoxMaxX);
    const double y = uniform(rng, sc::kS2BoxMinY, sc::kS2BoxMaxY);
    const double d_outer = distance_to_arc(x, y, 0.0, 0.0, sc::kS2Radius, true);
    const double d_inner =
        distance_to_arc(x, y, sc::kS2InnerShiftX, sc::kS2VerticalOffset,
                        sc::kS2Radius, false);
    if (std::min(d_outer, d_inner) < sc::kS2Clearance) continue;
    b.add(x, y, 1);
    ++i;
  }
  return b.finish("s2-local");
}

Dataset gen_dependency_s3(std::uint64_t seed, SynthSizes sizes) {
  Rng rng(seed);
  Builder b;
  for (std::size_t i = 0; i < sizes.normal; ++i) {
    const double x = uniform(rng, sc::kS3XMin, sc::kS3XMax);
    b.add(x, x + gaussian(rng, sc::kS3NoiseSd), 0);
  }
  for (std::size_t i = 0; i < sizes.anomaly; ++i) {
    const double x = uniform(rng, sc::kS3XMin, sc::kS3XMax);
    b.add(x, -x + gaussian(rng, sc::kS3NoiseSd), 1);
  }
  return b.finish("s3-dependency");
}

std::vector<double> two_density_sparse_center(double scale_ratio) {
  return {sc::kTwoDensitySeparation * scale_ratio, 0.0};
}

Dataset gen_two_density(std::uint64_t seed, std::size_t n_dense,
                        std::size_t n_sparse, double scale_ratio) {
  if (n_dense < sc::kTwoDensityMinCount || n_sparse < sc::kTwoDensityMinCount) {
    throw ConfigError("two-density blobs need at least " +
                      std::to_string(sc::kTwoDensityMinCount) + " points each");
  }
  if (!(scale_ratio >= 1.0) || !std::isfinite(scale_ratio)) {
    throw ConfigError("scale_ratio must be a finite value >= 1");
  }
  Rng rng(seed);
  std::vector<double> features;
  features.reserve(2 * (n_dense + n_sparse));
  for (std::size_t i = 0; i < n_dense; ++i) {
    features.push_back(gaussian(rng, sc::kTwoDensityDenseSd));
    features.push_back(gaussian(rng, sc::kTwoDensityDenseSd));
  }
  const auto center = two_density_sparse_center(scale_ratio);
  const double sd = sc::kTwoDensityDenseSd * scale_ratio;
  for (std::size_t i = 0; i < n_sparse; ++i) {
    features.push_back(center[0] + gaussian(rng, sd));
    features.push_back(center[1] + gaussian(rng, sd));
  }
  return Dataset(std::move(features), n_dense + n_sparse, 2, std::nullopt,
                 "two-density");
}

BoundaryFixture gen_two_density_boundary(std::uint64_t seed,
                                         std::size_t n_dense,
                                         std::size_t n_sparse,
                                         double scale_ratio,
                                         std::size_t n_boundary,
                                         double radius_in_sd) {
  const Dataset base = gen_two_density(seed, n_dense, n_sparse, scale_ratio);
  std::vector<double> features(base.features().begin(), base.features().end());
  const std::size_t n = base.rows();
  std::vector<std::uint8_t> labels(n, 0);
  BoundaryFixture out{base, {}, {}};

  Rng rng(derive_partition_seed(seed, 0x626f756e64ULL));
  const auto sparse_center = two_density_sparse_center(scale_ratio);
  auto plant = [&](double cx, double cy, double radius, std::uint8_t label,
                   std::vector<std::size_t>& indices) {
    for (std::size_t i = 0; i < n_boundary; ++i) {
      const double th = angle(rng);
      indices.push_back(labels.size());
      features.push_back(cx + radius * std::cos(th));
      features.push_back(cy + radius * std::sin(th));
      labels.push_back(label);
    }
  };
  plant(0.0, 0.0, radius_in_sd * sc::kTwoDensityDenseSd, 0, out.dense_boundary);
  plant(sparse_center[0], sparse_center[1],
        radius_in_sd * sc::kTwoDensityDenseSd * scale_ratio, 1,
        out.sparse_boundary);
  const std::size_t total = labels.size();
  out.data = Dataset(std::move(features), total, 2, std::move(labels),
                     "two-density-boundary");
  return out;
}

Dataset gen_uniform(std::uint64_t seed, std::size_t n, std::size_t d) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> features(n * d);
  for (auto& v : features) v = u(rng);
  return Dataset(std::move(features), n, d, std::nullopt, "uniform");
}

}  // namespace svead
