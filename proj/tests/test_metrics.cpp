#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle/naive_svead.hpp"
#include "svead/metrics.hpp"
#include "svead/scorer.hpp"
#include "svead/synth.hpp"

using namespace svead;

using Scores = std::vector<double>;
using Labels = std::vector<std::uint8_t>;

TEST_CASE("auc_roc small cases") {
  CHECK(auc_roc(Scores{0.9, 0.8, 0.1, 0.2}, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(auc_roc(Scores{0.5, 0.5}, Labels{1, 0}) == 0.5);
  CHECK(auc_roc(Scores{0.9, 0.4, 0.6, 0.1}, Labels{1, 1, 0, 0}) == 0.75);
  CHECK(auc_roc(Scores{0.1, 0.2, 0.9, 0.8}, Labels{1, 1, 0, 0}) == 0.0);
}

TEST_CASE("auc_pr small cases") {
  CHECK(auc_pr(Scores{0.9, 0.8, 0.1, 0.2}, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(auc_pr(Scores{0.9, 0.6, 0.4, 0.1}, Labels{1, 0, 1, 0}) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  // A tied block is one cut: both positives get precision 2/4.
  CHECK(auc_pr(Scores{1, 1, 1, 1}, Labels{1, 0, 1, 0}) == 0.5);
  CHECK(auc_pr(Scores{2, 1, 1, 0}, Labels{0, 1, 0, 1}) ==
        doctest::Approx((1.0 / 3.0 + 2.0 / 4.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("metrics reject unusable inputs") {
  CHECK_THROWS_AS(auc_roc(Scores{1, 2}, Labels{1, 1}), MetricError);
  CHECK_THROWS_AS(auc_roc(Scores{1, 2}, Labels{0, 0}), MetricError);
  CHECK_THROWS_AS(auc_pr(Scores{1, 2}, Labels{0, 0}), MetricError);
  CHECK_THROWS_AS(auc_roc(Scores{1, 2, 3}, Labels{0, 1}), ConfigError);
  CHECK_THROWS_AS(auc_pr(Scores{1}, Labels{0, 1}), ConfigError);
}

TEST_CASE("metrics agree with exhaustive oracles") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 400;
    Scores s(n);
    Labels l(n);
    const int levels = (trial % 2) ? 5 : 1 << 30;  // coarse levels force ties
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % levels) / 7.0;
      l[i] = rng() % 3 == 0;
    }
    l[0] = 1;
    l[1] = 0;
    CHECK(std::abs(auc_roc(s, l) - oracle::auc_roc_pairs(s, l)) <= 1e-12);
    CHECK(std::abs(auc_pr(s, l) - oracle::auc_pr_ranks(s, l)) <= 1e-12);
  }
}

TEST_CASE("auc_roc is invariant under strictly monotone transforms") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Scores s(500), t(500);
  Labels l(500);
  for (std::size_t i = 0; i < 500; ++i) {
    s[i] = std::round(g(rng) * 10.0);
    t[i] = std::exp(s[i] / 5.0) * 3.0 - 7.0;
    l[i] = (i % 4 == 0);
  }
  CHECK(auc_roc(s, l) == doctest::Approx(auc_roc(t, l)).epsilon(1e-14));
  CHECK(auc_pr(s, l) == doctest::Approx(auc_pr(t, l)).epsilon(1e-14));
}

TEST_CASE("label flip complements auc_roc") {
  std::mt19937_64 rng(3);
  Scores s(300);
  Labels l(300), f(300);
  for (std::size_t i = 0; i < 300; ++i) {
    s[i] = static_cast<double>(rng() % 40);
    l[i] = rng() % 2;
    f[i] = 1 - l[i];
  }
  CHECK(auc_roc(s, f) == doctest::Approx(1.0 - auc_roc(s, l)).epsilon(1e-14));
}

TEST_CASE("average precision of random scores tracks the positive rate") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u;
  for (double p : {0.05, 0.1, 0.3}) {
    Scores s(10'000);
    Labels l(10'000);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = u(rng);
      l[i] = u(rng) < p;
    }
    CHECK(std::abs(auc_pr(s, l) - p) <= 0.03);
  }
}

TEST_CASE("summary statistics") {
  const Summary one = summarize(Scores{0.7});
  CHECK(one.mean == 0.7);
  CHECK(one.std == 0.0);
  const Summary s = summarize(Scores{1, 2, 3, 4});
  CHECK(s.mean == 2.5);
  CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("repeated evaluation") {
  const Dataset s1 = gen_global_s1(1);
  DetectorConfig c;

  const EvalReport single = repeated_eval(s1, c, 1);
  CHECK(single.roc.std == 0.0);
  CHECK(single.pr.std == 0.0);
  CHECK(single.roc_runs.size() == 1);

  const EvalReport fixed = repeated_eval(s1, c, 3, SeedPolicy::Fixed);
  CHECK(fixed.roc.std == 0.0);
  CHECK(fixed.pr.std == 0.0);

  const EvalReport per_run = repeated_eval(s1, c, 5);
  REQUIRE(per_run.roc_runs.size() == 5);
  CHECK(per_run.roc.mean >= 0.95);
  CHECK(per_run.roc.std < 0.01);
  for (std::size_t r = 0; r < 5; ++r) {
    DetectorConfig rc = c;
    rc.seed = derive_run_seed(c.seed, r);
    CHECK(per_run.roc_runs[r] == auc_roc(fit_score(s1, rc).scores, s1.labels()));
  }
}

TEST_CASE("repeated evaluation preconditions") {
  DetectorConfig c;
  CHECK_THROWS_AS(repeated_eval(gen_uniform(1, 50, 2), c, 3), ConfigError);
  CHECK_THROWS_AS(repeated_eval(gen_global_s1(1), c, 0), ConfigError);
  const Dataset all_normal({1, 2, 3}, 3, 1, Labels{0, 0, 0});
  CHECK_THROWS_AS(repeated_eval(all_normal, c, 2), MetricError);
}
