#pragma once

#include <armadillo>
#include <utility>

#include "wpcn/types.hpp"

namespace wpcn {

// Per-phase WMMSE building blocks. All operations work on the set of users
// transmitting UL in one phase: g_hats holds their estimated UL channels as
// columns, p_uls the matching transmit powers, and c_noise the effective
// noise floor (DL power * sigma2_rsi + sigma2_ul in FD, sigma2_ul in HD).

/// MMSE receive filter for column k:
/// v = (sum_j p_j g_j g_j^H + c I)^-1 sqrt(p_k) g_k, via a Hermitian solve.
arma::cx_vec mmse_filter(const arma::cx_mat& g_hats, const arma::vec& p_uls,
                         double c_noise, arma::uword k);

/// Mean square error of filter v for user k:
/// |1 - sqrt(p_k) v^H g_k|^2 + sum_{j != k} p_j |v^H g_j|^2 + c ||v||^2.
double mse(const arma::cx_vec& v, const arma::cx_mat& g_hats, const arma::vec& p_uls,
           double c_noise, arma::uword k);

/// Optimal weight 1/e. Valid at any point of the iteration; coincides with
/// the real-denominator closed form when v is the fresh MMSE filter.
double optimal_weight(double e);

/// Numerator/denominator pair shared by the power and dual updates:
/// num = theta_k Re(v_k^H g_k) clamped at 0, den = sum_j theta_j |v_j^H g_k|^2.
std::pair<double, double> power_update_terms(const arma::vec& thetas,
                                             const arma::cx_mat& filters,
                                             const arma::cx_mat& g_hats, arma::uword k);

/// Dual of user k's UL power budget, clamped at zero. Positive exactly when
/// the unconstrained power update would exceed q_hat; zero budget marks the
/// user inactive.
double dual_lambda(const arma::vec& thetas, const arma::cx_mat& filters,
                   const arma::cx_mat& g_hats, arma::uword k, double q_hat);

/// dual_lambda expressed through precomputed power_update_terms.
double dual_lambda_from_terms(double num, double den, double q_hat);

/// Budget-projected UL power: min(p0, q_hat) with
/// p0 = (theta_k Re(v_k^H g_k) / sum_j theta_j |v_j^H g_k|^2)^2.
double ul_power(const arma::vec& thetas, const arma::cx_mat& filters,
                const arma::cx_mat& g_hats, arma::uword k, double q_hat);

/// Phase contribution to the WMMSE objective: sum_k (theta_k e_k - ln theta_k).
double wmmse_phase_objective(const arma::cx_mat& filters, const arma::vec& thetas,
                             const arma::cx_mat& g_hats, const arma::vec& p_uls,
                             double c_noise);

}  // namespace wpcn
