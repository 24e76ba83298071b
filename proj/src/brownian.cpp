#include "oob/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

namespace oob {

BrownianPath::BrownianPath(std::uint64_t seed) : rng_(seed) {
  values_.emplace(0.0, 0.0);
}

double BrownianPath::evaluate(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("BrownianPath::evaluate: t must lie in [0, 1], got " +
                            std::to_string(t));
  }
  auto upper = values_.lower_bound(t);
  if (upper != values_.end() && upper->first == t) {
    return upper->second;
  }
  // values_ always holds t = 0, so a predecessor exists.
  const auto lower = std::prev(upper);
  const double a = lower->first;
  const double wa = lower->second;
  const double z = rng_.gaussian();

  double w;
  if (upper == values_.end()) {
    w = wa + std::sqrt(t - a) * z;
  } else {
    const double b = upper->first;
    const double wb = upper->second;
    const double mean = wa + (t - a) / (b - a) * (wb - wa);
    const double var = (t - a) * (b - t) / (b - a);
    w = mean + std::sqrt(var) * z;
  }
  values_.emplace_hint(upper, t, w);
  return w;
}

std::optional<double> BrownianPath::value_at(double t) const {
  const auto it = values_.find(t);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<TimeValue> BrownianPath::evaluation_list() const {
  std::vector<TimeValue> out;
  out.reserve(values_.size());
  for (const auto& [t, w] : values_) out.push_back({t, w});
  return out;
}

namespace {
void require_interval(double a, double b, const char* who) {
  if (!(a < b)) {
    throw std::domain_error(std::string(who) + ": requires a < b");
  }
}
}  // namespace

double bridge_max_exceed_prob(double a, double b, double wa, double wb, double x) {
  require_interval(a, b, "bridge_max_exceed_prob");
  if (!(x >= std::max(wa, wb))) {
    throw std::domain_error("bridge_max_exceed_prob: requires x >= max(wa, wb)");
  }
  return std::exp(-2.0 * (x - wa) * (x - wb) / (b - a));
}

double bridge_max_from_uniform(double u, double a, double b, double wa, double wb) {
  require_interval(a, b, "bridge_max_from_uniform");
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("bridge_max_from_uniform: u must lie in (0, 1]");
  }
  // Root above max(wa, wb) of (x - wa)(x - wb) = c, i.e. mid + sqrt(half_gap^2 + c),
  // rewritten as top + c / (sqrt(half_gap^2 + c) + |half_gap|) to avoid
  // cancellation; u = 1 gives exactly the larger endpoint.
  const double top = std::max(wa, wb);
  const double half_gap = 0.5 * std::abs(wa - wb);
  const double c = -0.5 * (b - a) * std::log(u);
  if (c == 0.0) return top;
  return top + c / (std::sqrt(half_gap * half_gap + c) + half_gap);
}

double bridge_max_sample(RandomSource& rng, double a, double b, double wa, double wb) {
  require_interval(a, b, "bridge_max_sample");
  return bridge_max_from_uniform(rng.uniform(), a, b, wa, wb);
}

}  // namespace oob
