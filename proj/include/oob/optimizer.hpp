#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "oob/brownian.hpp"

namespace oob {

/// Deepest dyadic level the optimizer will ever create.
inline constexpr int kMaxDepth = 60;

/// Confidence width sqrt((5 delta / 2) ln(2 / (epsilon delta))).
/// Throws std::domain_error unless epsilon > 0, delta > 0 and epsilon * delta <= 1/2.
double eta(double epsilon, double delta);

/// Optimistic bound max(wa, wb) + eta(epsilon, 2^-h) for a depth-h interval.
double ucb(double wa, double wb, double epsilon, int h);

/// Smallest h >= 0 with eta(epsilon, 2^-h) <= epsilon, by linear scan from 0.
/// eta(epsilon, .) is not monotone in the depth, so no bisection.
/// Requires 0 < epsilon < 1/2; throws std::runtime_error past kMaxDepth.
int compute_h_max(double epsilon);

/// [k 2^-h, (k+1) 2^-h] with its endpoint values and its cached bound.
struct DyadicInterval {
  int h = 0;
  std::uint64_t k = 0;
  double wa = 0.0;
  double wb = 0.0;
  double b_value = 0.0;
  double eta_value = 0.0;

  double left() const { return dyadic_time(h, k); }
  double right() const { return dyadic_time(h, k + 1); }
  double midpoint() const { return dyadic_time(h + 1, 2 * k + 1); }
};

DyadicInterval make_interval(int h, std::uint64_t k, double wa, double wb, double epsilon);

/// Selection order: larger bound first; ties go to the shallower interval,
/// then to the leftmost one.
bool selected_before(const DyadicInterval& lhs, const DyadicInterval& rhs);

struct RunResult {
  double epsilon = 0.0;
  double t_hat = 0.0;
  double m_hat = 0.0;
  std::uint64_t n_evals = 0;
  int h_max = 0;
  std::vector<TimeValue> trace;
  std::uint64_t seed = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Called before each split with the chosen interval and the full current
/// interval set (chosen one included).
using SplitObserver =
    std::function<void(const DyadicInterval& chosen, std::span<const DyadicInterval> frontier)>;

/// Optimistic optimization of a fresh Brownian path seeded with `seed`.
RunResult run_oob(double epsilon, std::uint64_t seed);

/// Same loop on a caller-owned path, which receives every queried point.
RunResult run_oob_on_path(double epsilon, BrownianPath& path,
                          const SplitObserver& observer = {});

}  // namespace oob
