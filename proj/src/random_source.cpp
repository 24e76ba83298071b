#include "oob/random_source.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oob {

namespace {
constexpr double kTwoPowMinus53 = 0x1.0p-53;
}

double RandomSource::uniform() {
  // (m + 1) / 2^53 with m in [0, 2^53): values in (0, 1].
  const std::uint64_t m = engine_() >> 11;
  return (static_cast<double>(m) + 1.0) * kTwoPowMinus53;
}

double RandomSource::gaussian() {
  const std::uint64_t m = engine_() >> 11;
  const double p = (static_cast<double>(m) + 0.5) * kTwoPowMinus53;
  return normal_quantile(p);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ splitmix64(index);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  // Phi^{-1}(p) = -sqrt(2) erfc^{-1}(2p); erfc_inv keeps full relative
  // precision in both tails.
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace oob
