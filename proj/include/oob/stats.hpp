#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace oob::stats {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lower;
  double upper;
  double half_width() const { return 0.5 * (upper - lower); }
};

/// Wilson score interval for `successes` out of `n` Bernoulli trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = kZ95);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y ~ slope * x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

double normal_cdf(double x);

/// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
/// `samples` is sorted in place.
double ks_statistic(std::span<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic p-value of the KS statistic `d` for sample size `n`, with
/// Stephens' finite-sample correction.
double ks_pvalue(double d, std::uint64_t n);

double median(std::span<double> values);

}  // namespace oob::stats
