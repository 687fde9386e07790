#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "svead/synth.hpp"
#include "svead/synth_constants.hpp"

using namespace svead;

namespace {

constexpr std::uint64_t kSeed = 20240501;

double norm2(std::span<const double> r) { return std::hypot(r[0], r[1]); }

double correlation(const Dataset& d, std::uint8_t label) {
  double sx = 0, sy = 0, n = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d.labels()[i] != label) continue;
    sx += d.row(i)[0];
    sy += d.row(i)[1];
    n += 1;
  }
  const double mx = sx / n, my = sy / n;
  double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d.labels()[i] != label) continue;
    const double dx = d.row(i)[0] - mx, dy = d.row(i)[1] - my;
    cxy += dx * dy;
    cxx += dx * dx;
    cyy += dy * dy;
  }
  return cxy / std::sqrt(cxx * cyy);
}

double mean_nn_distance(const Dataset& d, std::size_t begin, std::size_t end) {
  double total = 0;
  for (std::size_t i = begin; i < end; ++i) {
    double best = INFINITY;
    for (std::size_t j = begin; j < end; ++j) {
      if (j != i) best = std::min(best, std::hypot(d.row(i)[0] - d.row(j)[0],
                                                   d.row(i)[1] - d.row(j)[1]));
    }
    total += best;
  }
  return total / static_cast<double>(end - begin);
}

double spread(const Dataset& d, std::size_t begin, std::size_t end) {
  double mx = 0, my = 0;
  for (std::size_t i = begin; i < end; ++i) {
    mx += d.row(i)[0];
    my += d.row(i)[1];
  }
  mx /= static_cast<double>(end - begin);
  my /= static_cast<double>(end - begin);
  double ss = 0;
  for (std::size_t i = begin; i < end; ++i) {
    ss += std::pow(d.row(i)[0] - mx, 2) + std::pow(d.row(i)[1] - my, 2);
  }
  return std::sqrt(ss / (2.0 * static_cast<double>(end - begin - 1)));
}

bool same_points(const Dataset& a, const Dataset& b) {
  return std::equal(a.features().begin(), a.features().end(), b.features().begin(),
                    b.features().end());
}

void check_regime(const std::function<Dataset(std::uint64_t)>& gen) {
  const Dataset a = gen(kSeed);
  CHECK(a.rows() == 300);
  CHECK(a.cols() == 2);
  CHECK(a.count_positive() == 30);
  for (std::size_t i = 0; i < 300; ++i) CHECK(a.labels()[i] == (i >= 270));
  for (double v : a.features()) CHECK(std::isfinite(v));
  CHECK(same_points(a, gen(kSeed)));
  const Dataset b = gen(kSeed + 1);
  CHECK_FALSE(same_points(a, b));
  CHECK(b.count_positive() == 30);
}

}  // namespace

TEST_CASE("regime generators share the sizing contract") {
  check_regime([](std::uint64_t s) { return gen_global_s1(s); });
  check_regime([](std::uint64_t s) { return gen_local_s2(s); });
  check_regime([](std::uint64_t s) { return gen_dependency_s3(s); });
}

TEST_CASE("custom sizes") {
  const Dataset d = gen_local_s2(1, {50, 7});
  CHECK(d.rows() == 57);
  CHECK(d.count_positive() == 7);
}

TEST_CASE("global anomalies sit outside the cluster") {
  const Dataset d = gen_global_s1(kSeed);
  double min_anomaly = INFINITY;
  for (std::size_t i = 270; i < 300; ++i) {
    const double r = norm2(d.row(i));
    min_anomaly = std::min(min_anomaly, r);
    CHECK(r >= synth_constants::kS1AnnulusInner);
    CHECK(r <= synth_constants::kS1AnnulusOuter);
  }
  CHECK(min_anomaly > 3.5);
}

TEST_CASE("local anomalies stay within the normals' extent") {
  const Dataset d = gen_local_s2(kSeed);
  double max_normal = 0, max_anomaly = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    (i < 270 ? max_normal : max_anomaly) =
        std::max(i < 270 ? max_normal : max_anomaly, norm2(d.row(i)));
  }
  CHECK(max_anomaly <= 1.1 * max_normal);
}

TEST_CASE("dependency anomalies invert the correlation") {
  const Dataset d = gen_dependency_s3(kSeed);
  CHECK(correlation(d, 0) > 0.9);
  CHECK(correlation(d, 1) < -0.9);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < 270; ++i) {
    lo = std::min(lo, d.row(i)[0]);
    hi = std::max(hi, d.row(i)[0]);
  }
  for (std::size_t i = 270; i < 300; ++i) {
    CHECK(d.row(i)[0] >= synth_constants::kS3XMin);
    CHECK(d.row(i)[0] <= synth_constants::kS3XMax);
  }
  CHECK(lo >= synth_constants::kS3XMin);
  CHECK(hi <= synth_constants::kS3XMax);
}

TEST_CASE("two-density blobs") {
  const Dataset d = gen_two_density(kSeed, 200, 200, 4.0);
  CHECK(d.rows() == 400);
  CHECK(d.cols() == 2);
  CHECK_FALSE(d.has_labels());
  CHECK(mean_nn_distance(d, 0, 200) < mean_nn_distance(d, 200, 400));
  CHECK(spread(d, 0, 200) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(spread(d, 200, 400) == doctest::Approx(4.0).epsilon(0.15));
  CHECK(same_points(d, gen_two_density(kSeed, 200, 200, 4.0)));
  CHECK(two_density_sparse_center(4.0) == std::vector<double>{80.0, 0.0});
}

TEST_CASE("equal scale ratio gives blobs of equal spread") {
  const Dataset d = gen_two_density(kSeed, 500, 500, 1.0);
  const double a = spread(d, 0, 500), b = spread(d, 500, 1000);
  CHECK(std::abs(a - b) / a < 0.15);
}

TEST_CASE("two-density preconditions") {
  CHECK_THROWS_AS(gen_two_density(1, 9, 200, 4.0), ConfigError);
  CHECK_THROWS_AS(gen_two_density(1, 200, 9, 4.0), ConfigError);
  CHECK_THROWS_AS(gen_two_density(1, 200, 200, 0.5), ConfigError);
}

TEST_CASE("boundary fixture plants points on both blobs") {
  const BoundaryFixture fx = gen_two_density_boundary(kSeed, 100, 100, 4.0, 15, 2.0);
  CHECK(fx.data.rows() == 230);
  CHECK(fx.dense_boundary.size() == 15);
  CHECK(fx.sparse_boundary.size() == 15);
  CHECK(fx.data.count_positive() == 15);
  for (auto i : fx.dense_boundary) {
    CHECK(fx.data.labels()[i] == 0);
    CHECK(norm2(fx.data.row(i)) == doctest::Approx(2.0));
  }
  for (auto i : fx.sparse_boundary) {
    CHECK(fx.data.labels()[i] == 1);
    CHECK(std::hypot(fx.data.row(i)[0] - 80.0, fx.data.row(i)[1]) == doctest::Approx(8.0));
  }
}

TEST_CASE("uniform data") {
  const Dataset d = gen_uniform(3, 1000, 7);
  CHECK(d.rows() == 1000);
  CHECK(d.cols() == 7);
  for (double v : d.features()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(same_points(d, gen_uniform(3, 1000, 7)));
}
