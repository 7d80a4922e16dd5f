#include "wpcn/timesearch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpcn {
namespace {

constexpr double kGolden = 0.61803398874989484820;  // (sqrt(5) - 1) / 2

}  // namespace

TauSearchTrace golden_search(const std::function<double(double)>& f, double tol_tau,
                             int max_evals) {
  if (!(tol_tau > 0.0 && tol_tau < 0.5)) {
    throw std::domain_error("golden_search: tol_tau must lie in (0, 0.5)");
  }

  TauSearchTrace trace;
  auto eval = [&](double tau) {
    const double value = f(tau);
    if (!std::isfinite(value)) {
      throw std::runtime_error("golden_search: non-finite objective at tau=" +
                               std::to_string(tau));
    }
    trace.evaluations.emplace_back(tau, value);
    return value;
  };

  double lo = tol_tau;
  double hi = 1.0 - tol_tau;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);

  while (hi - lo >= tol_tau && static_cast<int>(trace.evaluations.size()) < max_evals) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = eval(x2);
    } else if (f2 < f1) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = eval(x1);
    } else {
      // Exact tie: for a unimodal objective the maximum lies between the
      // probes, so both ends shrink (flat objectives stay centred).
      lo = x1;
      hi = x2;
      x1 = hi - kGolden * (hi - lo);
      x2 = lo + kGolden * (hi - lo);
      f1 = eval(x1);
      f2 = eval(x2);
    }
    ++trace.iterations;
  }

  trace.tau_star = 0.5 * (lo + hi);
  eval(trace.tau_star);
  return trace;
}

ConcavityReport concavity_probe(const std::function<double(double)>& f, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw std::domain_error("concavity_probe: grid_step must lie in (0, 0.1]");
  }

  std::vector<double> taus;
  std::vector<double> values;
  for (double tau = grid_step; tau < 1.0 - 0.5 * grid_step; tau += grid_step) {
    taus.push_back(tau);
    values.push_back(f(tau));
  }

  ConcavityReport report;
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  const double eps = 1e-6 * max_abs;

  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double d2 = values[i + 1] - 2.0 * values[i] + values[i - 1];
    report.max_second_difference = std::max(report.max_second_difference, d2);
    if (d2 > eps) {
      report.concave = false;
      report.violation_taus.push_back(taus[i]);
    }
  }
  return report;
}

}  // namespace wpcn
