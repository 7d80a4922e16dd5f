#pragma once

#include <armadillo>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpcn/assign.hpp"
#include "wpcn/beamform.hpp"
#include "wpcn/scenario.hpp"
#include "wpcn/timesearch.hpp"
#include "wpcn/types.hpp"

namespace wpcn {

/// Receive-side state for one phase. Column k of `filters` (and entry k of
/// the vectors) is meaningful only for users transmitting UL in this phase;
/// other columns are zero, their weights 1 and powers 0.
struct UlPhaseState {
  arma::cx_mat filters;  // M x K
  arma::vec theta;       // K, weights >= 1 for active users
  arma::vec p_ul;        // K, W
  double c_noise = 0.0;  // W; sigma2_ul plus the RSI floor in FD mode
};

/// Full decision state of one solve.
struct Allocation {
  Assignment assignment;
  std::array<double, 2> tau{0.5, 0.5};
  std::array<BeamformerSolution, 2> beams;
  std::array<bool, 2> dl_active{true, true};  // energy is transmitted in a phase iff its group is non-empty
  std::array<UlPhaseState, 2> ul;
  arma::vec lambda_ul;  // K budget duals
  arma::vec q_hat;      // K UL power budgets, W
  Duplex mode = Duplex::FD;
};

/// One row of the per-iteration trace. wmmse_pre/wmmse_post bracket the
/// filter/weight/power block at its fixed beams, budgets and grouping; the
/// block never increases the objective, so wmmse_post <= wmmse_pre. Across
/// iterations the objective may move either way (the beam refresh reshapes
/// the budgets).
struct IterationTrace {
  double sum_rate = 0.0;    // bits, end of iteration
  double wmmse_post = 0.0;  // objective after the filter/weight/power block
  double wmmse_pre = 0.0;   // objective entering the block
};

struct SolveReport {
  double sum_rate = 0.0;     // bits
  arma::vec per_user_rate;   // bits
  arma::vec per_user_harvest;  // W, UL budget per user
  arma::vec snr;             // linear SNR in each user's UL phase
  std::vector<IterationTrace> trace;
  int iterations = 0;
  bool converged = false;
};

/// UL SNR for transmitter k among the phase's UL set. w_norm2 is the total DL
/// power sent in the same phase; the RSI term sigma2_rsi * ||v||^2 * w_norm2
/// is dropped in HD mode.
double ul_snr(const arma::cx_vec& v, const arma::cx_mat& g_hats, const arma::vec& p_uls,
              double w_norm2, double sigma2_rsi, double sigma2_ul, arma::uword k,
              Duplex mode);

/// Evaluates rates, SNRs and harvests of an allocation as-is (no updates).
SolveReport score_allocation(const SystemConfig& cfg, const ChannelRealization& real,
                             const Allocation& alloc);

/// Overrides for the fixed-tau solver; used to pin the grouping structure.
struct SolveOptions {
  std::optional<Assignment> initial_assignment;
  std::optional<bool> update_assignment;  // defaults: FD sweeps each iteration, HD never
};

/// Fixed-tau alternating solve: beams, filters, weights, duals, powers and
/// (in FD mode) the group assignment, iterated until the sum-rate change
/// falls below tol_rate. Non-convergence at max_iters is reported, never
/// thrown.
std::pair<Allocation, SolveReport> algorithm1(const SystemConfig& cfg,
                                              const ChannelRealization& real, double tau1,
                                              const SolveOptions& opts = {});

struct Algorithm2Result {
  Allocation alloc;
  SolveReport report;
  TauSearchTrace tau_trace;
};

/// Golden-section search over tau1 with the fixed-tau solve as objective.
/// The final allocation is re-solved at the better of the search result and
/// the tau = 0.5 baseline, so the optimal scheme never loses to the fixed one.
Algorithm2Result algorithm2(const SystemConfig& cfg, const ChannelRealization& real);

/// Independent feasibility check of an allocation: power budgets, beam norms
/// and eigen-residuals, slot fractions, assignment structure, noise floors,
/// and (when a report is supplied) rate consistency.
struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;
};

AuditReport audit_allocation(const SystemConfig& cfg, const ChannelRealization& real,
                             const Allocation& alloc, const SolveReport* report = nullptr);

}  // namespace wpcn
