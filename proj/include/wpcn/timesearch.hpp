#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wpcn/types.hpp"

namespace wpcn {

/// Trace of a golden-section maximization over the first slot fraction.
struct TauSearchTrace {
  std::vector<std::pair<double, double>> evaluations;  // (tau1, value) in call order
  double tau_star = 0.5;
  int iterations = 0;  // bracket reductions performed
};

/// Golden-section maximization of f on [tol_tau, 1 - tol_tau]. Stops when the
/// bracket is shorter than tol_tau or max_evals objective calls were spent;
/// returns the final bracket midpoint (also evaluated, so its value is the
/// last trace entry). Throws if f returns a non-finite value, naming the
/// offending tau.
TauSearchTrace golden_search(const std::function<double(double)>& f, double tol_tau,
                             int max_evals);

/// Uniform-grid concavity diagnostic: second central differences must stay
/// below +1e-6 * max|f|. Diagnostic only; inner-loop re-optimization can leave
/// tiny kinks.
struct ConcavityReport {
  bool concave = true;
  double max_second_difference = 0.0;
  std::vector<double> violation_taus;
};

ConcavityReport concavity_probe(const std::function<double(double)>& f, double grid_step);

}  // namespace wpcn
