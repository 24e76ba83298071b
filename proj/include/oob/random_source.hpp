#pragma once

#include <cstdint>
#include <random>

namespace oob {

/// Seedable stream of uniform and Gaussian draws.
///
/// The engine is std::mt19937_64 seeded directly with the 64-bit seed. Every
/// draw consumes exactly one 64-bit engine output:
///   - uniform(): top 53 bits mapped to (0, 1], never 0, so log(u) is finite;
///   - gaussian(): top 53 bits mapped to the open interval (0, 1) at the cell
///     midpoints, then pushed through the inverse normal CDF.
/// Two sources built from the same seed therefore produce identical streams,
/// and a Gaussian and a uniform draw advance the stream by the same amount.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double uniform();
  double gaussian();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of an experiment seeded with `seed`:
/// seed XOR splitmix64(index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Standard normal quantile, accurate to a few ulps over (0, 1).
double normal_quantile(double p);

}  // namespace oob
