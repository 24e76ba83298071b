#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oob/random_source.hpp"

namespace oob::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json row_json(const SweepRow& row) {
  ordered_json j;
  j["epsilon"] = row.epsilon;
  j["seed"] = row.seed;
  j["n_evals"] = row.n_evals;
  j["m_hat"] = row.m_hat;
  j["t_hat"] = row.t_hat;
  j["h_max"] = row.h_max;
  j["ln2_inv_eps"] = row.ln2_inv_eps;
  return j;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw UsageError("--epsilon must satisfy 0 < epsilon < 1/2 (got " + real17(epsilon) + ")");
  }
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t flag_value) {
  if (flag->count() > 0) return flag_value;
  const char* env = std::getenv("OOB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 10);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("OOB_SEED is not an unsigned integer: ") + env);
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + out_path);
  file << text;
  if (!file) throw std::runtime_error("failed writing output file " + out_path);
}

}  // namespace

SweepRow to_row(const RunResult& run) {
  const double log_inv = std::log(1.0 / run.epsilon);
  return {run.epsilon, run.seed, run.n_evals, run.m_hat, run.t_hat, run.h_max, log_inv * log_inv};
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string text = std::string(kCsvHeader) + "\n";
  for (const SweepRow& r : rows) {
    text += real17(r.epsilon) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.n_evals) +
            ',' + real17(r.m_hat) + ',' + real17(r.t_hat) + ',' + std::to_string(r.h_max) + ',' +
            real17(r.ln2_inv_eps) + '\n';
  }
  return text;
}

std::string format_json(const SweepRow& row) { return row_json(row).dump(2) + "\n"; }

std::string format_json(const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const SweepRow& r : rows) arr.push_back(row_json(r));
  return arr.dump(2) + "\n";
}

std::string format_json(const VerificationReport& report) {
  ordered_json j;
  j["suite"] = report.suite;
  j["trials"] = report.trials;
  j["violations"] = report.violations;
  j["empirical_rate"] = report.empirical_rate;
  j["bound"] = report.bound;
  j["wilson_upper_95"] = report.wilson_upper_95;
  j["passed"] = report.passed;
  for (const auto& [key, value] : report.metadata) j["meta_" + key] = value;
  return j.dump(2) + "\n";
}

std::vector<SweepRow> sweep(const std::vector<double>& epsilons, std::uint64_t trials,
                            std::uint64_t seed) {
  std::vector<SweepRow> rows;
  rows.reserve(epsilons.size() * trials);
  for (const double eps : epsilons) {
    for (std::uint64_t j = 0; j < trials; ++j) rows.push_back(to_row(run_oob(eps, derive_seed(seed, j))));
  }
  return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimistic optimization of a Brownian motion on [0, 1]"};
  app.name("oob");
  app.require_subcommand(1);

  std::uint64_t seed_flag = 0;
  std::string out_path;
  std::string format = "csv";

  // run
  double run_eps = 0.0;
  std::string run_format = "json";
  auto* run_cmd = app.add_subcommand("run", "Run the optimizer once and print its result");
  run_cmd->add_option("--epsilon", run_eps, "Target precision, 0 < epsilon < 1/2")->required();
  auto* run_seed = run_cmd->add_option("--seed", seed_flag, "Path seed (default: $OOB_SEED or 0)");
  run_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  run_cmd->add_option("--format", run_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // sweep
  std::vector<double> sweep_eps = kDefaultSweepEpsilons;
  std::uint64_t sweep_trials = 250;
  auto* sweep_cmd = app.add_subcommand("sweep", "Runs over a list of epsilons, one row per run");
  sweep_cmd->add_option("--epsilons", sweep_eps, "Comma-separated epsilons")->delimiter(',');
  sweep_cmd->add_option("--trials", sweep_trials, "Runs per epsilon");
  auto* sweep_seed = sweep_cmd->add_option("--seed", seed_flag, "Base seed (default: $OOB_SEED or 0)");
  sweep_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  sweep_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a statistical verification suite");
  verify_cmd->require_subcommand(1);
  std::vector<const CLI::Option*> verify_seeds;

  double pac_eps = 0.1;
  std::uint64_t pac_trials = 500, pac_draws = 100;
  auto* pac_cmd = verify_cmd->add_subcommand("pac", "PAC exceedance rate against epsilon");
  pac_cmd->add_option("--epsilon", pac_eps);
  pac_cmd->add_option("--trials", pac_trials, "Optimizer runs");
  pac_cmd->add_option("--draws", pac_draws, "Conditional-maximum draws per run");

  int l3_depth = 6;
  double l3_eta = 0.1;
  std::uint64_t l3_trials = 10000;
  int l3_oracle_depth = -1;
  auto* l3_cmd = verify_cmd->add_subcommand("lemma3", "Mean near-optimal count against 6 eta^2 2^h");
  l3_cmd->add_option("--depth", l3_depth, "Grid depth h")->check(CLI::Range(0, 24));
  l3_cmd->add_option("--eta", l3_eta, "Near-optimality gap")->check(CLI::NonNegativeNumber);
  l3_cmd->add_option("--trials", l3_trials);
  l3_cmd->add_option("--oracle-depth", l3_oracle_depth, "Sampling depth (default: depth + 6)");

  double ec_eps = 0.5;
  int ec_depth = 10;
  std::uint64_t ec_trials = 100000;
  auto* ec_cmd = verify_cmd->add_subcommand("eventc", "Dyadic bound violations against epsilon^5");
  ec_cmd->add_option("--epsilon", ec_eps);
  ec_cmd->add_option("--depth", ec_depth)->check(CLI::Range(1, 24));
  ec_cmd->add_option("--trials", ec_trials);

  std::vector<double> bl_eps = {0.05, 0.01};
  std::uint64_t bl_trials = 200;
  auto* bl_cmd = verify_cmd->add_subcommand("baseline", "Uniform grid size over optimizer cost");
  bl_cmd->add_option("--epsilons", bl_eps)->delimiter(',');
  bl_cmd->add_option("--trials", bl_trials);

  for (auto* sub : {pac_cmd, l3_cmd, ec_cmd, bl_cmd}) {
    verify_seeds.push_back(sub->add_option("--seed", seed_flag, "Base seed (default: $OOB_SEED or 0)"));
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "Only json is produced for reports")
        ->check(CLI::IsMember({"json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*run_cmd) {
      check_epsilon(run_eps);
      const SweepRow row = to_row(run_oob(run_eps, resolve_seed(run_seed, seed_flag)));
      emit(run_format == "csv" ? format_csv({row}) : format_json(row), out_path, out);
      return kSuccess;
    }
    if (*sweep_cmd) {
      if (sweep_eps.empty()) throw UsageError("--epsilons must not be empty");
      for (const double e : sweep_eps) check_epsilon(e);
      if (sweep_trials < 1) throw UsageError("--trials must be >= 1");
      const auto rows = sweep(sweep_eps, sweep_trials, resolve_seed(sweep_seed, seed_flag));
      emit(format == "json" ? format_json(rows) : format_csv(rows), out_path, out);
      return kSuccess;
    }

    VerificationReport report;
    if (*pac_cmd) {
      check_epsilon(pac_eps);
      if (pac_trials < 1 || pac_draws < 1) throw UsageError("--trials and --draws must be >= 1");
      report = pac_estimate(pac_eps, pac_trials, pac_draws, resolve_seed(verify_seeds[0], seed_flag));
    } else if (*l3_cmd) {
      if (l3_trials < 1) throw UsageError("--trials must be >= 1");
      const int oracle = l3_oracle_depth < 0 ? l3_depth + 6 : l3_oracle_depth;
      if (oracle < l3_depth || oracle > 24) {
        throw UsageError("--oracle-depth must lie in [depth, 24]");
      }
      report = lemma3_mc(l3_depth, l3_eta, l3_trials, oracle, resolve_seed(verify_seeds[1], seed_flag));
    } else if (*ec_cmd) {
      if (!(ec_eps > 0.0 && ec_eps <= 0.5)) {
        throw UsageError("--epsilon must satisfy 0 < epsilon <= 1/2 for eventc");
      }
      if (ec_trials < 1) throw UsageError("--trials must be >= 1");
      report = event_c_check(ec_eps, ec_depth, ec_trials, resolve_seed(verify_seeds[2], seed_flag));
    } else if (*bl_cmd) {
      if (bl_eps.empty()) throw UsageError("--epsilons must not be empty");
      for (const double e : bl_eps) check_epsilon(e);
      if (bl_trials < 1) throw UsageError("--trials must be >= 1");
      report = baseline_separation(bl_eps, bl_trials, resolve_seed(verify_seeds[3], seed_flag));
    }
    emit(format_json(report), out_path, out);
    return report.passed ? kSuccess : kVerificationFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace oob::cli
