#pragma once

#include <armadillo>

#include "wpcn/types.hpp"

namespace wpcn {

/// Energy beam for one phase: ||w||^2 equals the DL power budget and w/||w||
/// is a dominant eigenvector of the weighted channel covariance B.
struct BeamformerSolution {
  arma::cx_vec w;
  double lambda_dl = 0.0;  // largest eigenvalue of B (dual of the DL power constraint)
  arma::cx_mat b_matrix;
  bool degenerate = false;  // B was zero; w falls back to the first basis vector
};

/// Weighted covariance B = (tau_l/tau_lhat) * sum_j duals_j * betas_j * h_j h_j^H
/// over the harvesting group's estimated DL channels (columns of h_hat_group).
/// Hermitian by construction; empty group yields the zero matrix.
arma::cx_mat build_b(double tau_l, double tau_lhat, const arma::vec& duals,
                     const arma::vec& betas, const arma::cx_mat& h_hat_group);

/// Scales a dominant unit eigenvector of B to the power budget. The
/// eigenvector phase is fixed so its largest-magnitude entry is real
/// non-negative; ties and a zero B fall back to the first basis vector.
BeamformerSolution optimal_beamformer(const arma::cx_mat& b, double p_dl_max);

namespace detail {
/// Power-iteration dominant eigenpair, used above the dense-eig size cutoff.
/// Returns (eigenvalue, unit eigenvector).
std::pair<double, arma::cx_vec> power_iteration_dominant(const arma::cx_mat& b);
}  // namespace detail

}  // namespace wpcn
