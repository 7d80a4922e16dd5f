#pragma once

#include <string>
#include <vector>

#include "wpcn/engine.hpp"
#include "wpcn/types.hpp"

namespace wpcn {

enum class SweepVariable { PDlDbm, Sigma2RsiDb, Sigma2UlDbm, KUsers, Sigma2E, Tau1Fixed };
enum class Scheme { FdOpt, FdFixed, HdOpt, HdFixed };

const char* sweep_variable_name(SweepVariable v);
const char* scheme_name(Scheme s);
SweepVariable sweep_variable_from_name(const std::string& name);
Scheme scheme_from_name(const std::string& name);

/// Batch sweep definition: one swept variable, a seed-paired Monte Carlo run
/// per (scheme, value), aggregated into CSV-ready rows.
struct ExperimentSpec {
  SystemConfig base;
  SweepVariable variable = SweepVariable::PDlDbm;
  std::vector<double> values;  // strictly monotone
  int n_realizations = 1000;
  std::vector<Scheme> schemes{Scheme::FdOpt, Scheme::HdOpt};
  std::uint64_t seed0 = 1;

  void validate() const;
};

struct SweepRow {
  Scheme scheme;
  double sweep_value = 0.0;
  double mean_sum_rate_bits = 0.0;
  double stderr_bits = 0.0;  // meaningful only when has_stderr
  bool has_stderr = false;
  double mean_harvest_w = 0.0;  // grand mean of per-user UL budgets
  double mean_iters = 0.0;
  int n_fail = 0;  // non-converged inner solves
};

struct SweepResult {
  SweepVariable variable;
  std::vector<SweepRow> rows;  // grouped by scheme in spec order, values in spec order
};

/// Runs the (scheme, value, seed) grid. Realizations are sampled once per
/// (value, seed) and shared across schemes; results are reduced in grid order
/// so the output is deterministic for any job count. Non-convergence is
/// counted per row, never fatal.
SweepResult run_sweep(const ExperimentSpec& spec, int jobs = 1);

/// CSV with the fixed header
/// scheme,sweep_var,sweep_value,mean_sum_rate_bits,stderr_bits,mean_harvest_w,mean_iters,n_fail.
/// Re-running the same spec reproduces the bytes exactly.
std::string to_csv(const SweepResult& result);

/// Canned sweep definitions for the reference plots fig3..fig10 (desk-scale
/// defaults; see README for the conventions adopted for the dB axes).
ExperimentSpec figure_recipe(const std::string& name);

/// Applies one sweep value onto a config copy (Tau1Fixed is handled by the
/// runner instead, as the slot split is a solve parameter).
SystemConfig apply_sweep_value(const SystemConfig& base, SweepVariable variable, double value);

}  // namespace wpcn
