#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oob/analysis.hpp"
#include "oob/optimizer.hpp"

namespace oob::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// One optimizer run as emitted by `run` and `sweep`.
struct SweepRow {
  double epsilon;
  std::uint64_t seed;
  std::uint64_t n_evals;
  double m_hat;
  double t_hat;
  int h_max;
  double ln2_inv_eps;  // ln(1/epsilon)^2
};

SweepRow to_row(const RunResult& run);

inline constexpr const char* kCsvHeader = "epsilon,seed,n_evals,m_hat,t_hat,h_max,ln2_inv_eps";

std::string format_csv(const std::vector<SweepRow>& rows);
std::string format_json(const std::vector<SweepRow>& rows);
std::string format_json(const SweepRow& row);
std::string format_json(const VerificationReport& report);

/// Rows for every (epsilon, trial) pair, ordered by epsilon then trial index.
/// Trial j uses seed derive_seed(seed, j) at every epsilon.
std::vector<SweepRow> sweep(const std::vector<double>& epsilons, std::uint64_t trials,
                            std::uint64_t seed);

inline const std::vector<double> kDefaultSweepEpsilons = {0.1,   0.05,  0.02, 0.01,
                                                          0.005, 0.002, 0.001};

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oob::cli
