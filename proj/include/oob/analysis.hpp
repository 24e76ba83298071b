#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oob/brownian.hpp"
#include "oob/optimizer.hpp"

namespace oob {

/// Summary of one Monte Carlo verification suite.
///
/// `empirical_rate` is always violations / trials. What counts as a trial and
/// a violation, and which comparison decides `passed`, is suite-specific and
/// spelled out in `metadata` under "comparison".
struct VerificationReport {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double empirical_rate = 0.0;
  double bound = 0.0;
  double wilson_upper_95 = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> metadata;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct NearOptimalCount {
  int h = 0;
  double eta = 0.0;
  std::uint64_t count = 0;
};

/// One exact draw of sup_{[0,1]} W conditioned on `evaluations`: the maximum
/// of independent bridge-maximum draws over consecutive pairs. Input must be
/// strictly increasing in t, start at t = 0 and end at t = 1. Consumes one
/// uniform per consecutive pair, left to right.
double conditional_max_sample(std::span<const TimeValue> evaluations, RandomSource& rng);

/// conditional_max_sample for values on a uniform grid of spacing `dt`.
double conditional_max_sample_on_grid(std::span<const double> values, double dt,
                                      RandomSource& rng);

/// PAC exceedance rate: per run, `draws_per_run` conditional maxima M are
/// drawn from the run's final evaluations and each M - m_hat > epsilon counts.
/// Trial j runs on seed derive_seed(seed, j); the oracle draws continue that
/// path's stream.
VerificationReport pac_estimate(double epsilon, std::uint64_t runs, std::uint64_t draws_per_run,
                                std::uint64_t seed);

/// Number of grid values >= m_ref - eta. The grid must hold 2^h + 1 values.
NearOptimalCount near_optimal_count(std::span<const double> grid_values, double m_ref, double eta);

/// Mean number of eta-near-optimal depth-h grid points against the bound
/// 6 eta^2 2^h, from W sampled on the depth-`oracle_depth` grid.
VerificationReport lemma3_mc(int h, double eta, std::uint64_t trials, int oracle_depth,
                             std::uint64_t seed);

/// Rate of trials in which some dyadic interval of depth <= check_depth has
/// its (exactly sampled) supremum above its optimistic bound.
VerificationReport event_c_check(double epsilon, int check_depth, std::uint64_t trials,
                                 std::uint64_t seed);

/// Non-adaptive baseline: W at k/n for k = 1..n on a fresh path. epsilon and
/// h_max are left at 0.
RunResult uniform_grid_baseline(std::uint64_t n, std::uint64_t seed);

/// Median over `trials` seeds of M - m_hat for the n-point uniform grid, with
/// M drawn from its conditional law given the grid.
double baseline_median_error(std::uint64_t n, std::uint64_t trials, std::uint64_t seed);

/// Mean number of evaluations of the optimizer over `trials` seeds.
double oob_mean_evals(double epsilon, std::uint64_t trials, std::uint64_t seed);

struct BaselineLevel {
  double epsilon = 0.0;
  std::uint64_t grid_n = 0;  // 0 when no candidate size reached the target
  double grid_median_error = 0.0;
  double oob_mean_evals = 0.0;
  double ratio = 0.0;
};

/// Candidate uniform grid sizes: round(16 * 2^(i/4)) from 2^4 to 2^16.
std::vector<std::uint64_t> baseline_grid_sizes();

/// Smallest candidate grid size whose median error is <= epsilon, next to the
/// optimizer's mean evaluation count at the same epsilon.
BaselineLevel compare_with_baseline(double epsilon, std::uint64_t trials, std::uint64_t seed);

/// Baseline separation suite. Levels are visited in decreasing epsilon; each
/// level's ratio must exceed the previous one, and the last ratio must be at
/// least `min_final_ratio`.
VerificationReport baseline_separation(std::span<const double> epsilons, std::uint64_t trials,
                                       std::uint64_t seed, double min_final_ratio = 3.0);

}  // namespace oob
