#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracle/naive_svead.hpp"
#include "svead/synth.hpp"
#include "svead/voronoi.hpp"

using namespace svead;

namespace {

Dataset line_fixture() { return Dataset({0, 1, 2, 10, 11}, 5, 1); }

Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d,
                       bool on_grid) {
  std::normal_distribution<double> gauss(0.0, 3.0);
  std::uniform_int_distribution<int> cell(-4, 4);
  std::vector<double> v(n * d);
  for (auto& x : v) x = on_grid ? cell(rng) * 0.5 : gauss(rng);
  return Dataset(std::move(v), n, d);
}

}  // namespace

TEST_CASE("exhaustive sample returns every row") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    CHECK(sample_anchors(5, 5, seed) == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(sample_anchors(5, 50, seed) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  }
}

TEST_CASE("sampling is deterministic, distinct and in range") {
  CHECK(sample_anchors(5, 2, 17) == sample_anchors(5, 2, 17));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    const std::size_t m = 1 + rng() % 64;
    const auto a = sample_anchors(n, m, rng());
    CHECK(a.size() == std::min(n, m));
    std::set<std::size_t> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());
    CHECK(*uniq.rbegin() < n);
  }
}

TEST_CASE("sampling rejects empty inputs") {
  CHECK_THROWS_AS(sample_anchors(0, 3, 1), ConfigError);
  CHECK_THROWS_AS(sample_anchors(3, 0, 1), ConfigError);
}

TEST_CASE("anchor inclusion frequencies are uniform") {
  constexpr std::size_t n = 1000;
  constexpr std::size_t m = 2;
  constexpr std::size_t seeds = 10'000;
  std::vector<double> hits(n, 0.0);
  for (std::size_t s = 0; s < seeds; ++s) {
    for (auto i : sample_anchors(n, m, derive_partition_seed(2024, s))) hits[i] += 1;
  }
  const double p = static_cast<double>(m) / n;
  const double expected = seeds * p;
  const double sigma = std::sqrt(seeds * p * (1.0 - p));

  // Each index is checked against expected +- 3 sigma. With 1000 indices
  // roughly 2.7 fall outside by chance, so the count of outliers is bounded
  // (P(Poisson(2.7) > 10) < 1e-4) rather than required to be zero.
  std::size_t outside = 0;
  double chi2 = 0.0;
  for (double h : hits) {
    if (std::abs(h - expected) > 3.0 * sigma) ++outside;
    chi2 += (h - expected) * (h - expected) / expected;
  }
  CHECK(outside <= 10);
  // 999 degrees of freedom: mean 999, sd about 44.7. Allow 4 sd either side.
  CHECK(chi2 > 999.0 - 4 * 44.7);
  CHECK(chi2 < 999.0 + 4 * 44.7);
  CHECK(std::accumulate(hits.begin(), hits.end(), 0.0) == seeds * m);
}

TEST_CASE("one-dimensional fixture") {
  const Dataset d = line_fixture();
  const std::vector<std::size_t> anchors{0, 3};
  const VoronoiPartition p = build_partition(d, anchors);
  CHECK(p.assignment == std::vector<std::uint32_t>{0, 0, 0, 1, 1});
  CHECK(p.delta == std::vector<double>{0, 1, 2, 0, 1});
  CHECK(p.cell_max == std::vector<double>{2, 1});
  CHECK(p.cell_mean == std::vector<double>{1, 0.5});
  CHECK(p.cell_count == std::vector<std::size_t>{3, 2});
}

TEST_CASE("single anchor holds every point") {
  const Dataset d({0, 0, 3, 4, -3, 4, 6, 8}, 4, 2);
  const std::vector<std::size_t> anchors{0};
  const VoronoiPartition p = build_partition(d, anchors);
  CHECK(p.cell_count == std::vector<std::size_t>{4});
  CHECK(p.cell_max[0] == 10.0);
  CHECK(p.cell_mean[0] == doctest::Approx((0 + 5 + 5 + 10) / 4.0).epsilon(1e-15));
}

TEST_CASE("equidistant point goes to the lower anchor position") {
  const Dataset d({0, 5, 10}, 3, 1);
  CHECK(build_partition(d, std::vector<std::size_t>{0, 2}).assignment[1] == 0);
  CHECK(build_partition(d, std::vector<std::size_t>{2, 0}).assignment[1] == 0);
  // Position, not row index, decides: anchor row 2 listed first wins.
  CHECK(build_partition(d, std::vector<std::size_t>{2, 0}).anchor_indices[0] == 2);
}

TEST_CASE("build_partition validates anchors") {
  const Dataset d = line_fixture();
  CHECK_THROWS_AS(build_partition(d, std::vector<std::size_t>{}), ConfigError);
  CHECK_THROWS_AS(build_partition(d, std::vector<std::size_t>{0, 0}), ConfigError);
  CHECK_THROWS_AS(build_partition(d, std::vector<std::size_t>{0, 5}), ConfigError);
}

TEST_CASE("assignments match a brute-force scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const std::size_t d = 1 + rng() % 8;
    const std::size_t m = 1 + rng() % 16;
    // Half the trials use a coarse grid so exact distance ties are common.
    const Dataset data = random_dataset(rng, n, d, trial % 2 == 0);
    const auto anchors = sample_anchors(n, m, rng());
    const VoronoiPartition p = build_partition(data, anchors);
    const oracle::Cells ref = oracle::build_cells(data, anchors);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(p.assignment[i] == ref.assignment[i]);
      CHECK(p.delta[i] == doctest::Approx(oracle::distance(data, i, anchors[ref.assignment[i]]))
                              .epsilon(1e-12));
    }
    for (std::size_t j = 0; j < p.num_cells(); ++j) {
      total += p.cell_count[j];
      CHECK(p.cell_count[j] == ref.count[j]);
      CHECK(p.cell_max[j] == doctest::Approx(ref.max[j]).epsilon(1e-12));
      CHECK(p.cell_mean[j] == doctest::Approx(ref.mean[j]).epsilon(1e-9));
      CHECK(p.cell_mean[j] <= p.cell_max[j]);
    }
    CHECK(total == n);
  }
}

TEST_CASE("anchors sit in their own cell at distance zero") {
  std::mt19937_64 rng(3);
  const Dataset data = random_dataset(rng, 300, 5, false);
  const auto anchors = sample_anchors(300, 32, 8);
  const VoronoiPartition p = build_partition(data, anchors);
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    CHECK(p.assignment[anchors[j]] == j);
    CHECK(p.delta[anchors[j]] == 0.0);
    CHECK(p.cell_count[j] >= 1);
  }
}

TEST_CASE("duplicate anchor coordinates leave an empty cell with zero stats") {
  const Dataset d({1, 1, 4}, 3, 1);
  const VoronoiPartition p = build_partition(d, std::vector<std::size_t>{0, 1});
  CHECK(p.cell_count == std::vector<std::size_t>{3, 0});
  CHECK(p.cell_max[1] == 0.0);
  CHECK(p.cell_mean[1] == 0.0);
  CHECK(p.cell_max[0] == 3.0);
}

TEST_CASE("nearest anchor agrees with brute force for large anchor sets") {
  // Covers the blocked kernel (>= 64 anchors) with exact ties and data far
  // from the origin.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 12;
    const std::size_t m = 1 + rng() % 300;
    const std::size_t n = m + 50;
    const double offset = (trial % 3 == 0) ? 1e6 : 0.0;
    std::uniform_int_distribution<int> cell(-3, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n * d);
    for (auto& x : v) x = offset + ((trial % 2 == 0) ? cell(rng) : gauss(rng));
    const Dataset data(std::move(v), n, d);
    const auto anchors = sample_anchors(n, m, rng());
    const AnchorSet set(data, anchors);
    std::vector<double> scratch(set.scratch_size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto got = set.nearest(data.row(i), scratch);
      REQUIRE(got.cell == oracle::nearest(data, i, anchors));
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = data.row(i)[k] - data.row(anchors[got.cell])[k];
        sq += diff * diff;
      }
      CHECK(got.squared_distance == doctest::Approx(sq).epsilon(1e-12));
    }
  }
}

TEST_CASE("anchor set built from raw coordinates") {
  const std::vector<double> coords{0, 0, 10, 0, 0, 10};
  const AnchorSet set(coords, 3, 2);
  CHECK(set.size() == 3);
  CHECK(set.dims() == 2);
  CHECK(set.anchor(1) == std::vector<double>{10, 0});
  std::vector<double> scratch(set.scratch_size());
  const std::vector<double> q{9, 1};
  const auto got = set.nearest(q, scratch);
  CHECK(got.cell == 1);
  CHECK(got.squared_distance == doctest::Approx(2.0));
  const std::vector<double> tie{10, 10};
  CHECK(set.nearest(tie, scratch).cell == 1);
}

TEST_CASE("partitions do not depend on the thread count") {
  const Dataset data = gen_uniform(4, 9000, 6);
  const auto anchors = sample_anchors(data, 100, 12);
  const VoronoiPartition one = build_partition(data, anchors, 1);
  for (unsigned threads : {2U, 3U, 8U}) {
    const VoronoiPartition many = build_partition(data, anchors, threads);
    CHECK(many.assignment == one.assignment);
    CHECK(many.delta == one.delta);
    CHECK(many.cell_max == one.cell_max);
    CHECK(many.cell_mean == one.cell_mean);
    CHECK(many.cell_count == one.cell_count);
  }
}

TEST_CASE("dense-blob cells have smaller mean distance than sparse-blob cells") {
  const Dataset data = gen_two_density(1, 200, 200, 4.0);
  std::size_t wins = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto anchors = sample_anchors(data, 16, derive_partition_seed(77, k));
    const VoronoiPartition p = build_partition(data, anchors);
    double dense = 0, sparse = 0;
    std::size_t nd = 0, ns = 0;
    for (std::size_t j = 0; j < anchors.size(); ++j) {
      if (anchors[j] < 200) {
        dense += p.cell_mean[j];
        ++nd;
      } else {
        sparse += p.cell_mean[j];
        ++ns;
      }
    }
    if (nd > 0 && ns > 0 && dense / nd < sparse / ns) ++wins;
  }
  CHECK(wins >= 95);
}

TEST_CASE("rebuilding into an existing partition matches a fresh build") {
  const Dataset data = gen_uniform(6, 3000, 4);
  VoronoiPartition reused;
  for (std::size_t m : {200U, 7U, 64U}) {
    const auto anchors = sample_anchors(data, m, m);
    build_partition(data, anchors, reused);
    const VoronoiPartition fresh = build_partition(data, anchors);
    CHECK(reused.anchor_indices == fresh.anchor_indices);
    CHECK(reused.assignment == fresh.assignment);
    CHECK(reused.delta == fresh.delta);
    CHECK(reused.cell_max == fresh.cell_max);
    CHECK(reused.cell_mean == fresh.cell_mean);
    CHECK(reused.cell_count == fresh.cell_count);
  }
}
