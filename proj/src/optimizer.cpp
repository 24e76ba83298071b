#include "oob/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oob {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::domain_error("epsilon must satisfy 0 < epsilon < 1/2, got " +
                            std::to_string(epsilon));
  }
}

double depth_length(int h) { return std::ldexp(1.0, -h); }

// Heap "less": the interval that should be selected later compares lower.
struct SelectLater {
  bool operator()(const DyadicInterval& lhs, const DyadicInterval& rhs) const {
    return selected_before(rhs, lhs);
  }
};

}  // namespace

double eta(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) {
    throw std::domain_error("eta: epsilon and delta must be positive");
  }
  if (epsilon * delta > 0.5) {
    throw std::domain_error("eta: requires epsilon * delta <= 1/2");
  }
  return std::sqrt(2.5 * delta * std::log(2.0 / (epsilon * delta)));
}

double ucb(double wa, double wb, double epsilon, int h) {
  if (h < 0) throw std::domain_error("ucb: depth must be non-negative");
  return std::max(wa, wb) + eta(epsilon, depth_length(h));
}

int compute_h_max(double epsilon) {
  require_epsilon(epsilon);
  for (int h = 0; h <= kMaxDepth; ++h) {
    if (eta(epsilon, depth_length(h)) <= epsilon) return h;
  }
  throw std::runtime_error("compute_h_max: no depth <= " + std::to_string(kMaxDepth) +
                           " reaches eta <= epsilon");
}

DyadicInterval make_interval(int h, std::uint64_t k, double wa, double wb, double epsilon) {
  DyadicInterval iv;
  iv.h = h;
  iv.k = k;
  iv.wa = wa;
  iv.wb = wb;
  iv.eta_value = eta(epsilon, depth_length(h));
  iv.b_value = std::max(wa, wb) + iv.eta_value;
  return iv;
}

bool selected_before(const DyadicInterval& lhs, const DyadicInterval& rhs) {
  if (lhs.b_value != rhs.b_value) return lhs.b_value > rhs.b_value;
  if (lhs.h != rhs.h) return lhs.h < rhs.h;
  return lhs.k < rhs.k;
}

RunResult run_oob(double epsilon, std::uint64_t seed) {
  BrownianPath path(seed);
  return run_oob_on_path(epsilon, path);
}

RunResult run_oob_on_path(double epsilon, BrownianPath& path, const SplitObserver& observer) {
  require_epsilon(epsilon);

  RunResult result;
  result.epsilon = epsilon;
  result.seed = path.seed();
  result.h_max = compute_h_max(epsilon);

  std::array<double, kMaxDepth + 1> eta_by_depth{};
  for (int h = 0; h <= kMaxDepth; ++h) eta_by_depth[h] = eta(epsilon, depth_length(h));

  auto make = [&](int h, std::uint64_t k, double wa, double wb) {
    DyadicInterval iv{h, k, wa, wb, 0.0, eta_by_depth[h]};
    iv.b_value = std::max(wa, wb) + iv.eta_value;
    return iv;
  };

  const double w0 = path.evaluate(0.0);
  const double w1 = path.evaluate(1.0);
  result.trace.push_back({1.0, w1});

  std::vector<DyadicInterval> frontier{make(0, 0, w0, w1)};
  const SelectLater later;

  while (true) {
    const DyadicInterval chosen = frontier.front();
    if (chosen.eta_value <= epsilon) break;
    if (chosen.h >= kMaxDepth) {
      throw std::runtime_error("run_oob: depth cap reached");
    }
    if (observer) observer(chosen, frontier);

    std::pop_heap(frontier.begin(), frontier.end(), later);
    frontier.pop_back();

    const double tm = chosen.midpoint();
    const double wm = path.evaluate(tm);
    result.trace.push_back({tm, wm});

    frontier.push_back(make(chosen.h + 1, 2 * chosen.k, chosen.wa, wm));
    std::push_heap(frontier.begin(), frontier.end(), later);
    frontier.push_back(make(chosen.h + 1, 2 * chosen.k + 1, wm, chosen.wb));
    std::push_heap(frontier.begin(), frontier.end(), later);
  }

  // W(0) = 0 is known for free and joins the candidate set.
  result.t_hat = 0.0;
  result.m_hat = w0;
  for (const auto& [t, w] : result.trace) {
    if (w > result.m_hat) {
      result.m_hat = w;
      result.t_hat = t;
    }
  }
  result.n_evals = result.trace.size();
  return result;
}

}  // namespace oob
