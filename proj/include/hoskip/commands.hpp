#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hoskip/config.hpp"
#include "hoskip/output.hpp"

namespace hoskip {

enum class CoverageMode { Analytic, MonteCarlo, Both };

CoverageMode parse_coverage_mode(const std::string& s);

/// Rows: threshold_db, scheme_id, analytic_value, mc_value, mc_ci_halfwidth,
/// trials. Coherent schemes need a mode that includes Monte Carlo.
Table coverage_table(const RunConfig& cfg, const std::vector<SchemeSpec>& schemes,
                     const std::vector<double>& thresholds_db, CoverageMode mode);

/// Spectral efficiency of the five analytic variants (analytic and Monte
/// Carlo) followed by the four skipping averages.
Table table1_table(const RunConfig& cfg);

Table throughput_table(const RunConfig& cfg, const std::vector<SchemeSpec>& schemes,
                       const std::vector<double>& velocities_kmh, const std::vector<double>& delays_s);

/// Density samples of the five distance PDFs on regular grids.
Table distance_table(const RunConfig& cfg, int points);

struct CheckOutcome {
  std::string name;
  enum class Status { Pass, Fail, Skipped } status = Status::Pass;
  std::string detail;
};

/// Invariant self-check: PDF normalizations, marginal consistency, eta = 4
/// closed forms, coverage bounds and monotonicity, lambda invariance,
/// analytic vs Monte Carlo and seeded determinism. Monte Carlo checks are
/// skipped below 10^4 trials.
std::vector<CheckOutcome> run_validation(const RunConfig& cfg);

/// Provenance written at the top of every output file.
nlohmann::json output_meta(const RunConfig& cfg, const std::string& command);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 1 failed validation checks, 2 invalid config, 3 numerical failure,
/// 4 I/O failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hoskip
