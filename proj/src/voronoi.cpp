#include "svead/voronoi.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "parallel.hpp"

namespace svead {

namespace {

constexpr std::size_t kLanes = 8;
constexpr std::size_t kWideBlock = 64;

// Narrow padding for small anchor sets, wide blocks once there are enough
// anchors to keep several accumulator chains in flight.
std::size_t round_up(std::size_t count) {
  const std::size_t block = count >= kWideBlock ? kWideBlock : kLanes;
  return (count + block - 1) / block * block;
}

}  // namespace

std::vector<std::size_t> sample_anchors(std::size_t n, std::size_t m,
                                        std::uint64_t seed) {
  if (n == 0) throw ConfigError("cannot sample anchors from an empty dataset");
  if (m == 0) throw ConfigError("m (anchors per partition) must be >= 1");
  std::vector<std::size_t> out;
  if (m >= n) {
    out.resize(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  // Floyd: one draw per anchor, uniform over m-subsets.
  std::mt19937_64 rng(seed);
  std::unordered_set<std::size_t> taken;
  taken.reserve(m * 2);
  out.reserve(m);
  for (std::size_t upper = n - m; upper < n; ++upper) {
    std::uniform_int_distribution<std::size_t> pick(0, upper);
    std::size_t candidate = pick(rng);
    if (!taken.insert(candidate).second) {
      candidate = upper;
      taken.insert(candidate);
    }
    out.push_back(candidate);
  }
  return out;
}

std::vector<std::size_t> sample_anchors(const Dataset& dataset, std::size_t m,
                                        std::uint64_t seed) {
  return sample_anchors(dataset.rows(), m, seed);
}

AnchorSet::AnchorSet(const Dataset& dataset,
                     std::span<const std::size_t> anchor_indices)
    : count_(anchor_indices.size()), dims_(dataset.cols()) {
  rows_.reserve(count_ * dims_);
  for (auto a : anchor_indices) {
    auto r = dataset.row(a);
    rows_.insert(rows_.end(), r.begin(), r.end());
  }
  prepare();
}

AnchorSet::AnchorSet(std::span<const double> row_major, std::size_t count,
                     std::size_t dims)
    : count_(count), dims_(dims), rows_(row_major.begin(), row_major.end()) {
  if (row_major.size() != count * dims) {
    throw ConfigError("anchor coordinate buffer has the wrong size");
  }
  prepare();
}

void AnchorSet::prepare() {
  stride_ = round_up(count_);
  coords_.assign(dims_ * stride_, 0.0);
  norms_.assign(stride_, std::numeric_limits<double>::infinity());
  max_norm_ = 0.0;
  for (std::size_t j = 0; j < count_; ++j) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dims_; ++k) {
      const double v = rows_[j * dims_ + k];
      coords_[k * stride_ + j] = v;
      sq += v * v;
    }
    norms_[j] = sq;
    max_norm_ = std::max(max_norm_, std::sqrt(sq));
  }
}

std::vector<double> AnchorSet::anchor(std::size_t j) const {
  return {rows_.begin() + static_cast<std::ptrdiff_t>(j * dims_),
          rows_.begin() + static_cast<std::ptrdiff_t>((j + 1) * dims_)};
}

namespace {

// GCC/Clang vector extensions: eight doubles (one AVX-512 register, or
// several narrower ones when built without -march=native).
using Vec = double __attribute__((vector_size(64)));
using IVec = std::int64_t __attribute__((vector_size(64)));
constexpr std::size_t kVecLanes = 8;

Vec load(const double* p) {
  Vec v;
  std::memcpy(&v, p, sizeof(Vec));
  return v;
}

struct Screen {
  Vec best;         // per lane: smallest screened value
  Vec second;       // per lane: second smallest screened value
  IVec best_index;  // per lane: position of `best`
};

// Writes ||a_j||^2 - 2 <x, a_j> for every padded anchor slot into `out` and
// returns per-lane best / second-best values. Padding slots evaluate to +inf.
template <std::size_t kVecs>
Screen screen_blocked(const double* __restrict coords,
                      const double* __restrict norms, std::size_t stride,
                      std::size_t dims, const double* __restrict point,
                      double* __restrict out) {
  constexpr std::size_t kBlock = kVecs * kVecLanes;
  const Vec inf = Vec{} + std::numeric_limits<double>::infinity();
  Vec best[kVecs];
  Vec second[kVecs];
  IVec best_index[kVecs];
  IVec index[kVecs];
  for (std::size_t v = 0; v < kVecs; ++v) {
    best[v] = inf;
    second[v] = inf;
    for (std::size_t l = 0; l < kVecLanes; ++l) {
      index[v][l] = static_cast<std::int64_t>(v * kVecLanes + l);
    }
    best_index[v] = index[v];
  }
  for (std::size_t jb = 0; jb < stride; jb += kBlock) {
    Vec dot[kVecs] = {};
    for (std::size_t k = 0; k < dims; ++k) {
      const Vec x = Vec{} + point[k];
      const double* col = coords + k * stride + jb;
      for (std::size_t v = 0; v < kVecs; ++v) dot[v] += x * load(col + v * kVecLanes);
    }
    for (std::size_t v = 0; v < kVecs; ++v) {
      const Vec val = load(norms + jb + v * kVecLanes) - 2.0 * dot[v];
      std::memcpy(out + jb + v * kVecLanes, &val, sizeof(Vec));
      const IVec smaller = val < best[v];
      second[v] = smaller ? best[v] : (val < second[v] ? val : second[v]);
      best[v] = smaller ? val : best[v];
      best_index[v] = smaller ? index[v] : best_index[v];
      index[v] += static_cast<std::int64_t>(kBlock);
    }
  }
  // Fold the kVecs accumulators into one; on equal values the lower index
  // wins and the loser still counts towards `second`.
  Screen s{best[0], second[0], best_index[0]};
  for (std::size_t v = 1; v < kVecs; ++v) {
    const IVec take = (best[v] < s.best) |
                      ((best[v] == s.best) & (best_index[v] < s.best_index));
    const Vec loser = take ? s.best : best[v];
    const Vec sec = second[v] < s.second ? second[v] : s.second;
    s.second = loser < sec ? loser : sec;
    s.best = take ? best[v] : s.best;
    s.best_index = take ? best_index[v] : s.best_index;
  }
  return s;
}

double squared_distance(const double* x, const double* a, std::size_t dims) {
  double sq = 0.0;
  for (std::size_t k = 0; k < dims; ++k) {
    const double diff = x[k] - a[k];
    sq += diff * diff;
  }
  return sq;
}

}  // namespace

// The screening pass ranks anchors by ||a||^2 - 2<x, a>, which differs from
// ||x - a||^2 by the constant ||x||^2 and costs one multiply-add per
// coordinate. Every anchor whose screened value lies within the rounding
// bound of the minimum is then re-measured as sum_k (x_k - a_k)^2, and the
// smallest exact value wins, lowest position first. The result is the exact
// first minimum of the direct squared distances.
AnchorSet::Nearest AnchorSet::nearest(std::span<const double> point,
                                      std::span<double> scratch) const {
  const double* x = point.data();
  double* screened = scratch.data();
  const Screen s =
      stride_ % kWideBlock == 0
          ? screen_blocked<kWideBlock / kVecLanes>(coords_.data(), norms_.data(),
                                                   stride_, dims_, x, screened)
          : screen_blocked<1>(coords_.data(), norms_.data(), stride_, dims_, x,
                              screened);

  double lowest = s.best[0];
  for (std::size_t l = 1; l < kVecLanes; ++l) lowest = std::min(lowest, s.best[l]);

  double x_norm_sq = 0.0;
  for (std::size_t k = 0; k < dims_; ++k) x_norm_sq += x[k] * x[k];
  // A screened value is off by at most ~(dims + 2) ulps of the magnitude of
  // its terms; the slack covers both the minimum and a competitor.
  const double magnitude = max_norm_ * (max_norm_ + 2.0 * std::sqrt(x_norm_sq));
  const double threshold = lowest + 4.0 * static_cast<double>(dims_ + 4) *
                                        std::numeric_limits<double>::epsilon() *
                                        magnitude;

  std::size_t hits = 0;
  std::size_t candidate = 0;
  bool crowded = false;
  for (std::size_t l = 0; l < kVecLanes; ++l) {
    if (s.best[l] <= threshold) {
      ++hits;
      candidate = static_cast<std::size_t>(s.best_index[l]);
    }
    crowded |= s.second[l] <= threshold;
  }
  if (hits == 1 && !crowded) {
    return {static_cast<std::uint32_t>(candidate),
            squared_distance(x, rows_.data() + candidate * dims_, dims_)};
  }

  Nearest result{0, std::numeric_limits<double>::infinity()};
  bool found = false;
  for (std::size_t j = 0; j < count_; ++j) {
    if (!(screened[j] <= threshold)) continue;
    const double sq = squared_distance(x, rows_.data() + j * dims_, dims_);
    if (!found || sq < result.squared_distance) {
      result = {static_cast<std::uint32_t>(j), sq};
      found = true;
    }
  }
  return result;
}

VoronoiPartition build_partition(const Dataset& dataset,
                                 std::span<const std::size_t> anchor_indices,
                                 unsigned threads) {
  VoronoiPartition p;
  build_partition(dataset, anchor_indices, p, threads);
  return p;
}

void build_partition(const Dataset& dataset,
                     std::span<const std::size_t> anchor_indices,
                     VoronoiPartition& p, unsigned threads) {
  const std::size_t n = dataset.rows();
  const std::size_t m = anchor_indices.size();
  if (m == 0) throw ConfigError("partition needs at least one anchor");
  if (m > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("too many anchors");
  }
  {
    std::unordered_set<std::size_t> seen;
    for (auto a : anchor_indices) {
      if (a >= n) {
        throw ConfigError("anchor index " + std::to_string(a) +
                          " out of range for " + std::to_string(n) + " rows");
      }
      if (!seen.insert(a).second) {
        throw ConfigError("duplicate anchor index " + std::to_string(a));
      }
    }
  }

  p.anchor_indices.assign(anchor_indices.begin(), anchor_indices.end());
  p.assignment.resize(n);
  p.delta.resize(n);

  const AnchorSet anchors(dataset, anchor_indices);
  detail::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch(anchors.scratch_size());
    for (std::size_t i = begin; i < end; ++i) {
      const auto hit = anchors.nearest(dataset.row(i), scratch);
      p.assignment[i] = hit.cell;
      p.delta[i] = std::sqrt(hit.squared_distance);
    }
  });

  // Serial pass in row order: the statistics do not depend on thread count.
  p.cell_max.assign(m, 0.0);
  p.cell_count.assign(m, 0);
  std::vector<double> sum(m, 0.0);
  std::vector<double> carry(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = p.assignment[i];
    const double v = p.delta[i];
    ++p.cell_count[c];
    if (v > p.cell_max[c]) p.cell_max[c] = v;
    // Neumaier compensated summation.
    const double s = sum[c] + v;
    if (std::abs(sum[c]) >= std::abs(v)) {
      carry[c] += (sum[c] - s) + v;
    } else {
      carry[c] += (v - s) + sum[c];
    }
    sum[c] = s;
  }
  p.cell_mean.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (p.cell_count[j] > 0) {
      p.cell_mean[j] =
          (sum[j] + carry[j]) / static_cast<double>(p.cell_count[j]);
    }
  }
}

}  // namespace svead
