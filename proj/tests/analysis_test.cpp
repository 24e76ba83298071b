#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oob/analysis.hpp"

namespace oob {
namespace {

TEST(ConditionalMaxSample, DominatesTheEvaluations) {
  RandomSource rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double w = rng.gaussian();
    const std::vector<TimeValue> evals{{0.0, 0.0}, {1.0, w}};
    EXPECT_GE(conditional_max_sample(evals, rng), std::max(0.0, w));
  }
  BrownianPath path(4);
  const RunResult r = run_oob_on_path(0.05, path);
  const auto evals = path.evaluation_list();
  for (int i = 0; i < 200; ++i) EXPECT_GE(conditional_max_sample(evals, path.rng()), r.m_hat);
}

TEST(ConditionalMaxSample, RejectsMalformedInput) {
  RandomSource rng(0);
  const std::vector<TimeValue> no_origin{{0.5, 0.0}, {1.0, 0.0}};
  const std::vector<TimeValue> no_end{{0.0, 0.0}, {0.5, 0.0}};
  const std::vector<TimeValue> unsorted{{0.0, 0.0}, {0.6, 0.1}, {0.4, 0.2}, {1.0, 0.0}};
  const std::vector<TimeValue> repeated{{0.0, 0.0}, {0.5, 0.1}, {0.5, 0.1}, {1.0, 0.0}};
  const std::vector<TimeValue> single{{0.0, 0.0}};
  EXPECT_THROW(conditional_max_sample(no_origin, rng), std::domain_error);
  EXPECT_THROW(conditional_max_sample(no_end, rng), std::domain_error);
  EXPECT_THROW(conditional_max_sample(unsorted, rng), std::domain_error);
  EXPECT_THROW(conditional_max_sample(repeated, rng), std::domain_error);
  EXPECT_THROW(conditional_max_sample(single, rng), std::domain_error);
}

TEST(ConditionalMaxSample, UnconditionalMaximumFollowsTheReflectionPrinciple) {
  constexpr int kTrials = 40000;
  RandomSource rng(31);
  int hits = 0;
  for (int i = 0; i < kTrials; ++i) {
    const std::vector<TimeValue> evals{{0.0, 0.0}, {1.0, rng.gaussian()}};
    if (conditional_max_sample(evals, rng) >= 1.0) ++hits;
  }
  const double expected = 0.31731050786291410;
  EXPECT_NEAR(static_cast<double>(hits) / kTrials, expected,
              3.0 * std::sqrt(expected * (1 - expected) / kTrials));
}

TEST(ConditionalMaxSample, ExcessOverTheGridShrinksWithRefinement) {
  // Paired: the coarser grids are sub-grids of one depth-12 path.
  constexpr int kPaths = 300;
  const std::vector<int> depths{4, 8, 12};
  std::vector<double> mean_excess(depths.size(), 0.0);
  for (int p = 0; p < kPaths; ++p) {
    BrownianPath path(derive_seed(5, p));
    for (std::uint64_t k = 1; k <= 4096; ++k) path.evaluate(dyadic_time(12, k));
    for (std::size_t d = 0; d < depths.size(); ++d) {
      std::vector<TimeValue> evals;
      const std::uint64_t cells = std::uint64_t{1} << depths[d];
      double grid_max = -INFINITY;
      for (std::uint64_t k = 0; k <= cells; ++k) {
        const double t = dyadic_time(depths[d], k);
        evals.push_back({t, *path.value_at(t)});
        grid_max = std::max(grid_max, evals.back().w);
      }
      mean_excess[d] += (conditional_max_sample(evals, path.rng()) - grid_max) / kPaths;
    }
  }
  EXPECT_GT(mean_excess[0], mean_excess[1]);
  EXPECT_GT(mean_excess[1], mean_excess[2]);
  EXPECT_GT(mean_excess[2], 0.0);
}

TEST(ConditionalMaxSampleOnGrid, AgreesWithTheGeneralSampler) {
  std::vector<double> values{0.0, 0.4, -0.2, 0.1, 0.3};
  std::vector<TimeValue> evals;
  for (std::size_t i = 0; i < values.size(); ++i) evals.push_back({i * 0.25, values[i]});
  RandomSource a(6), b(6);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(conditional_max_sample_on_grid(values, 0.25, a), conditional_max_sample(evals, b));
  }
}

TEST(PacEstimate, IsReproducible) {
  const VerificationReport a = pac_estimate(0.1, 1, 1, 42);
  const VerificationReport b = pac_estimate(0.1, 1, 1, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.trials, 1u);
}

TEST(PacEstimate, SmallRunRespectsTheBound) {
  const VerificationReport r = pac_estimate(0.1, 60, 30, 8);
  EXPECT_EQ(r.suite, "pac");
  EXPECT_EQ(r.trials, 60u * 30u);
  EXPECT_DOUBLE_EQ(r.empirical_rate * r.trials, static_cast<double>(r.violations));
  EXPECT_EQ(r.bound, 0.1);
  EXPECT_GE(r.wilson_upper_95, r.empirical_rate);
  EXPECT_TRUE(r.passed);
}

TEST(PacEstimate, RejectsBadParameters) {
  EXPECT_THROW(pac_estimate(0.5, 10, 10, 0), std::domain_error);
  EXPECT_THROW(pac_estimate(0.1, 0, 10, 0), std::domain_error);
  EXPECT_THROW(pac_estimate(0.1, 10, 0, 0), std::domain_error);
}

TEST(NearOptimalCount, DirectCounts) {
  const std::vector<double> two{0.0, 0.5};
  const NearOptimalCount c = near_optimal_count(two, 0.8, 0.4);
  EXPECT_EQ(c.count, 1u);
  EXPECT_EQ(c.h, 0);

  const std::vector<double> five{0.1, -0.3, 0.7, 0.2, 0.0};
  EXPECT_EQ(near_optimal_count(five, 0.9, 2.0).count, 5u);
  EXPECT_EQ(near_optimal_count(five, 0.9, 0.0).count, 0u);
  EXPECT_EQ(near_optimal_count(five, 0.9, 0.0).h, 2);
}

TEST(NearOptimalCount, RejectsBadGrids) {
  const std::vector<double> four{0, 0, 0, 0};
  const std::vector<double> one{0};
  EXPECT_THROW(near_optimal_count(four, 0, 0.1), std::domain_error);
  EXPECT_THROW(near_optimal_count(one, 0, 0.1), std::domain_error);
  EXPECT_THROW(near_optimal_count(std::vector<double>{0, 1}, 0, -0.1), std::domain_error);
}

TEST(Lemma3Mc, CountIsMonotoneInEta) {
  std::uint64_t previous = 0;
  for (const double eta : {0.0, 0.02, 0.05, 0.1, 0.2}) {
    const VerificationReport r = lemma3_mc(5, eta, 300, 9, 17);
    EXPECT_GE(r.violations, previous) << "eta=" << eta;
    previous = r.violations;
  }
}

TEST(Lemma3Mc, ZeroEtaCountsNothing) {
  const VerificationReport r = lemma3_mc(6, 0.0, 500, 10, 3);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.passed);
}

TEST(Lemma3Mc, SaturatedEtaCountsBothEndpoints) {
  const VerificationReport r = lemma3_mc(0, 20.0, 200, 6, 3);
  EXPECT_EQ(r.empirical_rate, 2.0);
  EXPECT_EQ(r.bound, 6.0 * 400.0);
  EXPECT_TRUE(r.passed);
}

TEST(Lemma3Mc, SmallRunRespectsTheBound) {
  const VerificationReport r = lemma3_mc(6, 0.1, 1000, 10, 5);
  EXPECT_NEAR(r.bound, 3.84, 1e-12);
  EXPECT_TRUE(r.passed) << r.empirical_rate << " + 3se = " << r.wilson_upper_95;
}

TEST(Lemma3Mc, RejectsBadParameters) {
  EXPECT_THROW(lemma3_mc(6, 0.1, 10, 5, 0), std::domain_error);
  EXPECT_THROW(lemma3_mc(6, -0.1, 10, 8, 0), std::domain_error);
  EXPECT_THROW(lemma3_mc(6, 0.1, 0, 8, 0), std::domain_error);
}

TEST(EventCCheck, ViolationsDoNotIncreaseAsEpsilonShrinks) {
  std::uint64_t previous = UINT64_MAX;
  for (const double eps : {0.5, 0.45, 0.4, 0.3, 0.2}) {
    const VerificationReport r = event_c_check(eps, 6, 20000, 23);
    EXPECT_LE(r.violations, previous) << "eps=" << eps;
    previous = r.violations;
  }
}

TEST(EventCCheck, SmallRunRespectsTheBound) {
  const VerificationReport r = event_c_check(0.5, 8, 5000, 2);
  EXPECT_EQ(r.suite, "eventc");
  EXPECT_DOUBLE_EQ(r.bound, 0.03125);
  EXPECT_DOUBLE_EQ(r.empirical_rate * r.trials, static_cast<double>(r.violations));
  EXPECT_TRUE(r.passed);
  const auto truncation =
      std::find_if(r.metadata.begin(), r.metadata.end(),
                   [](const auto& kv) { return kv.first == "truncation"; });
  EXPECT_NE(truncation, r.metadata.end());
}

TEST(EventCCheck, RejectsBadParameters) {
  EXPECT_THROW(event_c_check(0.6, 5, 10, 0), std::domain_error);
  EXPECT_THROW(event_c_check(0.5, 0, 10, 0), std::domain_error);
  EXPECT_THROW(event_c_check(0.5, 5, 0, 0), std::domain_error);
}

TEST(UniformGridBaseline, SinglePointIsTheEndpoint) {
  const RunResult r = uniform_grid_baseline(1, 12);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].t, 1.0);
  const double w1 = BrownianPath(12).evaluate(1.0);
  EXPECT_EQ(r.m_hat, std::max(0.0, w1));
  EXPECT_EQ(r.n_evals, 1u);
}

TEST(UniformGridBaseline, DeterministicEvenGrid) {
  const RunResult a = uniform_grid_baseline(37, 8);
  EXPECT_EQ(a, uniform_grid_baseline(37, 8));
  ASSERT_EQ(a.trace.size(), 37u);
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_DOUBLE_EQ(a.trace[k].t, static_cast<double>(k + 1) / 37.0);
  }
  EXPECT_EQ(a.trace.back().t, 1.0);
  EXPECT_THROW(uniform_grid_baseline(0, 8), std::domain_error);
}

TEST(UniformGridBaseline, MedianErrorDecaysLikeInverseRootN) {
  // Quadrupling n should roughly halve the median error.
  const double e64 = baseline_median_error(64, 400, 1);
  const double e256 = baseline_median_error(256, 400, 1);
  const double e1024 = baseline_median_error(1024, 400, 1);
  EXPECT_GT(e64, e256);
  EXPECT_GT(e256, e1024);
  EXPECT_NEAR(e64 / e1024, 4.0, 1.2);
}

TEST(BaselineGridSizes, GeometricFromSixteen) {
  const auto sizes = baseline_grid_sizes();
  EXPECT_EQ(sizes.front(), 16u);
  EXPECT_EQ(sizes.back(), 65536u);
  EXPECT_TRUE(std::is_sorted(sizes.begin(), sizes.end()));
  EXPECT_EQ(std::adjacent_find(sizes.begin(), sizes.end()), sizes.end());
}

}  // namespace
}  // namespace oob
