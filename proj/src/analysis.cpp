#include "oob/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "oob/stats.hpp"

namespace oob {

namespace {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

// Largest grid depth any suite will allocate (2^24 + 1 doubles).
constexpr int kMaxGridDepth = 24;

// W on the uniform depth-`depth` grid by sequential Gaussian increments.
void sample_dyadic_grid(int depth, RandomSource& rng, std::vector<double>& out) {
  const std::size_t cells = std::size_t{1} << depth;
  const double step_sd = std::sqrt(std::ldexp(1.0, -depth));
  out.resize(cells + 1);
  out[0] = 0.0;
  for (std::size_t i = 0; i < cells; ++i) out[i + 1] = out[i] + step_sd * rng.gaussian();
}

RunResult baseline_on_path(std::uint64_t n, BrownianPath& path) {
  require(n >= 1, "uniform_grid_baseline: n must be >= 1");
  RunResult result;
  result.seed = path.seed();
  result.m_hat = path.evaluate(0.0);
  result.t_hat = 0.0;
  result.trace.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double t = k == n ? 1.0 : static_cast<double>(k) / static_cast<double>(n);
    const double w = path.evaluate(t);
    result.trace.push_back({t, w});
    if (w > result.m_hat) {
      result.m_hat = w;
      result.t_hat = t;
    }
  }
  result.n_evals = n;
  return result;
}

}  // namespace

double conditional_max_sample(std::span<const TimeValue> evaluations, RandomSource& rng) {
  require(evaluations.size() >= 2, "conditional_max_sample: need at least t = 0 and t = 1");
  require(evaluations.front().t == 0.0, "conditional_max_sample: first point must be t = 0");
  require(evaluations.back().t == 1.0, "conditional_max_sample: last point must be t = 1");
  double best = -INFINITY;
  for (std::size_t i = 0; i + 1 < evaluations.size(); ++i) {
    const TimeValue& lo = evaluations[i];
    const TimeValue& hi = evaluations[i + 1];
    require(lo.t < hi.t, "conditional_max_sample: times must be strictly increasing");
    best = std::max(best, bridge_max_sample(rng, lo.t, hi.t, lo.w, hi.w));
  }
  return best;
}

double conditional_max_sample_on_grid(std::span<const double> values, double dt,
                                      RandomSource& rng) {
  require(values.size() >= 2, "conditional_max_sample_on_grid: need at least two values");
  require(dt > 0.0, "conditional_max_sample_on_grid: dt must be positive");
  double best = -INFINITY;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    best = std::max(best, bridge_max_from_uniform(rng.uniform(), 0.0, dt, values[i], values[i + 1]));
  }
  return best;
}

VerificationReport pac_estimate(double epsilon, std::uint64_t runs, std::uint64_t draws_per_run,
                                std::uint64_t seed) {
  require(epsilon > 0.0 && epsilon < 0.5, "pac_estimate: epsilon must satisfy 0 < epsilon < 1/2");
  require(runs >= 1, "pac_estimate: runs must be >= 1");
  require(draws_per_run >= 1, "pac_estimate: draws per run must be >= 1");

  std::uint64_t exceedances = 0;
  std::uint64_t total_evals = 0;
  for (std::uint64_t j = 0; j < runs; ++j) {
    BrownianPath path(derive_seed(seed, j));
    const RunResult run = run_oob_on_path(epsilon, path);
    total_evals += run.n_evals;
    const std::vector<TimeValue> evals = path.evaluation_list();
    for (std::uint64_t d = 0; d < draws_per_run; ++d) {
      if (conditional_max_sample(evals, path.rng()) - run.m_hat > epsilon) ++exceedances;
    }
  }

  VerificationReport report;
  report.suite = "pac";
  report.trials = runs * draws_per_run;
  report.violations = exceedances;
  report.empirical_rate = static_cast<double>(exceedances) / static_cast<double>(report.trials);
  report.bound = epsilon;
  const stats::Interval ci = stats::wilson_interval(exceedances, report.trials);
  report.wilson_upper_95 = ci.upper;
  report.passed = report.empirical_rate <= epsilon + ci.half_width();
  report.metadata = {
      {"comparison", "empirical_rate <= bound + wilson_half_width"},
      {"epsilon", format_real(epsilon)},
      {"runs", std::to_string(runs)},
      {"draws_per_run", std::to_string(draws_per_run)},
      {"seed", std::to_string(seed)},
      {"wilson_lower_95", format_real(ci.lower)},
      {"wilson_half_width", format_real(ci.half_width())},
      {"mean_n_evals", format_real(static_cast<double>(total_evals) / static_cast<double>(runs))},
  };
  return report;
}

NearOptimalCount near_optimal_count(std::span<const double> grid_values, double m_ref,
                                    double eta) {
  require(eta >= 0.0, "near_optimal_count: eta must be >= 0");
  const std::size_t n = grid_values.size();
  require(n >= 2 && std::has_single_bit(n - 1),
          "near_optimal_count: grid must hold 2^h + 1 values");
  NearOptimalCount out;
  out.h = std::countr_zero(n - 1);
  out.eta = eta;
  const double threshold = m_ref - eta;
  out.count = static_cast<std::uint64_t>(
      std::count_if(grid_values.begin(), grid_values.end(),
                    [threshold](double w) { return w >= threshold; }));
  return out;
}

VerificationReport lemma3_mc(int h, double eta, std::uint64_t trials, int oracle_depth,
                             std::uint64_t seed) {
  require(h >= 0, "lemma3_mc: depth must be >= 0");
  require(eta >= 0.0, "lemma3_mc: eta must be >= 0");
  require(trials >= 1, "lemma3_mc: trials must be >= 1");
  require(oracle_depth >= h, "lemma3_mc: oracle depth must be >= depth");
  require(oracle_depth <= kMaxGridDepth, "lemma3_mc: oracle depth too large");

  const std::size_t stride = std::size_t{1} << (oracle_depth - h);
  const double dt = std::ldexp(1.0, -oracle_depth);
  std::vector<double> fine;
  std::vector<double> coarse((std::size_t{1} << h) + 1);

  std::uint64_t total = 0;
  double sum_sq = 0.0;
  for (std::uint64_t j = 0; j < trials; ++j) {
    RandomSource rng(derive_seed(seed, j));
    sample_dyadic_grid(oracle_depth, rng, fine);
    const double grid_max = *std::max_element(fine.begin(), fine.end());
    const double m_ref = std::max(grid_max, conditional_max_sample_on_grid(fine, dt, rng));
    for (std::size_t k = 0; k < coarse.size(); ++k) coarse[k] = fine[k * stride];
    const std::uint64_t c = near_optimal_count(coarse, m_ref, eta).count;
    total += c;
    sum_sq += static_cast<double>(c) * static_cast<double>(c);
  }

  const double n = static_cast<double>(trials);
  const double mean = static_cast<double>(total) / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  const double se = std::sqrt(var / n);

  VerificationReport report;
  report.suite = "lemma3";
  report.trials = trials;
  report.violations = total;
  report.empirical_rate = mean;
  report.bound = 6.0 * eta * eta * std::ldexp(1.0, h);
  report.wilson_upper_95 = mean + 3.0 * se;
  report.passed = report.wilson_upper_95 <= report.bound;
  report.metadata = {
      {"comparison", "mean_count + 3 * standard_error <= bound (one-sided)"},
      {"upper_limit_kind", "mean_plus_3_standard_errors"},
      {"violations_kind", "total near-optimal points over all trials"},
      {"depth", std::to_string(h)},
      {"eta", format_real(eta)},
      {"oracle_depth", std::to_string(oracle_depth)},
      {"seed", std::to_string(seed)},
      {"standard_error", format_real(se)},
  };
  return report;
}

VerificationReport event_c_check(double epsilon, int check_depth, std::uint64_t trials,
                                 std::uint64_t seed) {
  require(epsilon > 0.0 && epsilon <= 0.5, "event_c_check: epsilon must satisfy 0 < epsilon <= 1/2");
  require(check_depth >= 1, "event_c_check: depth must be >= 1");
  require(check_depth <= kMaxGridDepth, "event_c_check: depth too large");
  require(trials >= 1, "event_c_check: trials must be >= 1");

  std::vector<double> eta_by_depth(check_depth + 1);
  for (int h = 0; h <= check_depth; ++h) eta_by_depth[h] = eta(epsilon, std::ldexp(1.0, -h));

  const std::size_t cells = std::size_t{1} << check_depth;
  const double dt = std::ldexp(1.0, -check_depth);
  std::vector<double> grid;
  std::vector<double> sup(cells);

  std::uint64_t violations = 0;
  for (std::uint64_t j = 0; j < trials; ++j) {
    RandomSource rng(derive_seed(seed, j));
    sample_dyadic_grid(check_depth, rng, grid);
    for (std::size_t k = 0; k < cells; ++k) {
      sup[k] = bridge_max_from_uniform(rng.uniform(), 0.0, dt, grid[k], grid[k + 1]);
    }
    // Walk up the dyadic tree; sup[k] holds the supremum over cell k of the
    // current level, built from the same finest-cell draws at every level.
    bool violated = false;
    for (int h = check_depth; h >= 0 && !violated; --h) {
      const std::size_t count = std::size_t{1} << h;
      const std::size_t stride = std::size_t{1} << (check_depth - h);
      for (std::size_t k = 0; k < count; ++k) {
        if (h < check_depth) sup[k] = std::max(sup[2 * k], sup[2 * k + 1]);
        const double bound =
            std::max(grid[k * stride], grid[(k + 1) * stride]) + eta_by_depth[h];
        if (sup[k] > bound) {
          violated = true;
          break;
        }
      }
    }
    if (violated) ++violations;
  }

  VerificationReport report;
  report.suite = "eventc";
  report.trials = trials;
  report.violations = violations;
  report.empirical_rate = static_cast<double>(violations) / static_cast<double>(trials);
  report.bound = std::pow(epsilon, 5);
  const stats::Interval ci = stats::wilson_interval(violations, trials);
  report.wilson_upper_95 = ci.upper;
  report.passed = report.empirical_rate <= report.bound + ci.half_width();
  report.metadata = {
      {"comparison", "empirical_rate <= bound + wilson_half_width"},
      {"truncation", "intervals with depth <= check_depth only; a lower bound on the full violation probability"},
      {"epsilon", format_real(epsilon)},
      {"check_depth", std::to_string(check_depth)},
      {"seed", std::to_string(seed)},
      {"wilson_lower_95", format_real(ci.lower)},
      {"wilson_half_width", format_real(ci.half_width())},
  };
  return report;
}

RunResult uniform_grid_baseline(std::uint64_t n, std::uint64_t seed) {
  BrownianPath path(seed);
  return baseline_on_path(n, path);
}

double baseline_median_error(std::uint64_t n, std::uint64_t trials, std::uint64_t seed) {
  require(trials >= 1, "baseline_median_error: trials must be >= 1");
  std::vector<double> errors;
  errors.reserve(trials);
  for (std::uint64_t j = 0; j < trials; ++j) {
    BrownianPath path(derive_seed(seed, j));
    const RunResult run = baseline_on_path(n, path);
    errors.push_back(conditional_max_sample(path.evaluation_list(), path.rng()) - run.m_hat);
  }
  return stats::median(errors);
}

double oob_mean_evals(double epsilon, std::uint64_t trials, std::uint64_t seed) {
  require(trials >= 1, "oob_mean_evals: trials must be >= 1");
  std::uint64_t total = 0;
  for (std::uint64_t j = 0; j < trials; ++j) total += run_oob(epsilon, derive_seed(seed, j)).n_evals;
  return static_cast<double>(total) / static_cast<double>(trials);
}

std::vector<std::uint64_t> baseline_grid_sizes() {
  std::vector<std::uint64_t> sizes;
  for (int i = 0; i <= 48; ++i) {
    sizes.push_back(static_cast<std::uint64_t>(std::llround(16.0 * std::exp2(i / 4.0))));
  }
  return sizes;
}

BaselineLevel compare_with_baseline(double epsilon, std::uint64_t trials, std::uint64_t seed) {
  BaselineLevel level;
  level.epsilon = epsilon;
  level.oob_mean_evals = oob_mean_evals(epsilon, trials, seed);
  for (const std::uint64_t n : baseline_grid_sizes()) {
    const double err = baseline_median_error(n, trials, seed);
    if (err <= epsilon) {
      level.grid_n = n;
      level.grid_median_error = err;
      break;
    }
  }
  level.ratio = static_cast<double>(level.grid_n) / level.oob_mean_evals;
  return level;
}

VerificationReport baseline_separation(std::span<const double> epsilons, std::uint64_t trials,
                                       std::uint64_t seed, double min_final_ratio) {
  require(!epsilons.empty(), "baseline_separation: need at least one epsilon");
  std::vector<double> levels(epsilons.begin(), epsilons.end());
  std::sort(levels.begin(), levels.end(), std::greater<>());

  VerificationReport report;
  report.suite = "baseline";
  report.trials = levels.size();
  report.bound = min_final_ratio;
  report.metadata = {
      {"comparison", "ratio strictly increases as epsilon decreases and final ratio >= bound"},
      {"trials_per_level", std::to_string(trials)},
      {"seed", std::to_string(seed)},
  };

  double previous_ratio = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const BaselineLevel level = compare_with_baseline(levels[i], trials, seed);
    bool ok = level.grid_n > 0 && (i == 0 || level.ratio > previous_ratio);
    if (i + 1 == levels.size()) ok = ok && level.ratio >= min_final_ratio;
    if (!ok) ++report.violations;
    previous_ratio = level.ratio;

    char eps_tag[32];
    std::snprintf(eps_tag, sizeof eps_tag, "eps_%g_", level.epsilon);
    const std::string tag = eps_tag;
    report.metadata.emplace_back(tag + "grid_n", std::to_string(level.grid_n));
    report.metadata.emplace_back(tag + "grid_median_error", format_real(level.grid_median_error));
    report.metadata.emplace_back(tag + "oob_mean_evals", format_real(level.oob_mean_evals));
    report.metadata.emplace_back(tag + "ratio", format_real(level.ratio));
  }

  report.empirical_rate =
      static_cast<double>(report.violations) / static_cast<double>(report.trials);
  report.wilson_upper_95 = stats::wilson_interval(report.violations, report.trials).upper;
  report.passed = report.violations == 0;
  return report;
}

}  // namespace oob
