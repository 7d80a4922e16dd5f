#include "wpcn/wmmse.hpp"

namespace wpcn {

std::pair<double, double> power_update_terms(const arma::vec& thetas,
                                             const arma::cx_mat& filters,
                                             const arma::cx_mat& g_hats, arma::uword k) {
  const arma::cx_vec g_k = g_hats.col(k);
  double den = 0.0;
  for (arma::uword j = 0; j < filters.n_cols; ++j) {
    den += thetas(j) * std::norm(arma::cdot(filters.col(j), g_k));
  }
  const double num = thetas(k) * std::max(0.0, std::real(arma::cdot(filters.col(k), g_k)));
  return {num, den};
}

arma::cx_vec mmse_filter(const arma::cx_mat& g_hats, const arma::vec& p_uls,
                         double c_noise, arma::uword k) {
  if (c_noise <= 0.0) throw std::domain_error("mmse_filter: c_noise must be > 0");
  const arma::uword m = g_hats.n_rows;
  if (p_uls(k) == 0.0) return arma::cx_vec(m, arma::fill::zeros);

  arma::cx_mat a(m, m, arma::fill::zeros);
  for (arma::uword j = 0; j < g_hats.n_cols; ++j) {
    const arma::cx_vec g = g_hats.col(j);
    a += p_uls(j) * (g * g.t());
  }
  a.diag() += c_noise;
  a = 0.5 * (a + a.t());
  const arma::cx_vec rhs = std::sqrt(p_uls(k)) * g_hats.col(k);
  return arma::solve(a, rhs, arma::solve_opts::likely_sympd);
}

double mse(const arma::cx_vec& v, const arma::cx_mat& g_hats, const arma::vec& p_uls,
           double c_noise, arma::uword k) {
  double e = std::norm(1.0 - std::sqrt(p_uls(k)) * arma::cdot(v, g_hats.col(k)));
  for (arma::uword j = 0; j < g_hats.n_cols; ++j) {
    if (j == k) continue;
    e += p_uls(j) * std::norm(arma::cdot(v, g_hats.col(j)));
  }
  e += c_noise * std::real(arma::cdot(v, v));
  return e;
}

double optimal_weight(double e) {
  if (e <= 0.0) throw std::domain_error("optimal_weight: mse must be positive");
  return 1.0 / e;
}

double dual_lambda_from_terms(double num, double den, double q_hat) {
  if (q_hat <= 0.0) return 0.0;  // no budget, user inactive
  return std::max(0.0, num / std::sqrt(q_hat) - den);
}

double dual_lambda(const arma::vec& thetas, const arma::cx_mat& filters,
                   const arma::cx_mat& g_hats, arma::uword k, double q_hat) {
  const auto [num, den] = power_update_terms(thetas, filters, g_hats, k);
  return dual_lambda_from_terms(num, den, q_hat);
}

double ul_power(const arma::vec& thetas, const arma::cx_mat& filters,
                const arma::cx_mat& g_hats, arma::uword k, double q_hat) {
  if (q_hat <= 0.0) return 0.0;
  const auto [num, den] = power_update_terms(thetas, filters, g_hats, k);
  if (num == 0.0) return 0.0;
  const double sqrt_p0 = num / den;  // den >= theta_k |v_k^H g_k|^2 > 0 when num > 0
  const double p0 = sqrt_p0 * sqrt_p0;
  return std::min(p0, q_hat);
}

double wmmse_phase_objective(const arma::cx_mat& filters, const arma::vec& thetas,
                             const arma::cx_mat& g_hats, const arma::vec& p_uls,
                             double c_noise) {
  double obj = 0.0;
  for (arma::uword k = 0; k < g_hats.n_cols; ++k) {
    const double e = mse(filters.col(k), g_hats, p_uls, c_noise, k);
    obj += thetas(k) * e - std::log(thetas(k));
  }
  return obj;
}

}  // namespace wpcn
