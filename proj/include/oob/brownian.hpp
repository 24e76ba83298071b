#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "oob/random_source.hpp"

namespace oob {

/// One revealed point of a Brownian realization.
struct TimeValue {
  double t;
  double w;

  friend bool operator==(const TimeValue&, const TimeValue&) = default;
};

/// Dyadic time k * 2^-h, exact in binary floating point for h <= 52.
inline double dyadic_time(int h, std::uint64_t k) {
  return static_cast<double>(k) / static_cast<double>(std::uint64_t{1} << h);
}

/// A standard Brownian motion on [0, 1], revealed lazily.
///
/// Values are drawn on first query from the exact conditional law given the
/// points already revealed, so the realization stays consistent under any
/// query order. Each new query consumes exactly one Gaussian draw; repeated
/// queries return the stored value without touching the stream.
class BrownianPath {
 public:
  explicit BrownianPath(std::uint64_t seed);

  /// W(t) for t in [0, 1]. Throws std::domain_error outside [0, 1].
  double evaluate(double t);

  std::optional<double> value_at(double t) const;

  std::size_t size() const { return values_.size(); }
  const std::map<double, double>& evaluations() const { return values_; }
  std::vector<TimeValue> evaluation_list() const;

  RandomSource& rng() { return rng_; }
  std::uint64_t seed() const { return rng_.seed(); }

 private:
  std::map<double, double> values_;
  RandomSource rng_;
};

/// P(sup_{[a,b]} W > x | W(a) = wa, W(b) = wb) = exp(-2 (x - wa)(x - wb) / (b - a)),
/// valid for x >= max(wa, wb).
double bridge_max_exceed_prob(double a, double b, double wa, double wb, double x);

/// Inverse of bridge_max_exceed_prob in x: the bridge maximum whose exceedance
/// probability equals u, for u in (0, 1].
double bridge_max_from_uniform(double u, double a, double b, double wa, double wb);

/// Exact draw of sup_{[a,b]} W given the endpoint values. Consumes one uniform.
double bridge_max_sample(RandomSource& rng, double a, double b, double wa, double wb);

}  // namespace oob
