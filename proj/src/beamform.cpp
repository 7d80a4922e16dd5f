#include "wpcn/beamform.hpp"

namespace wpcn {
namespace {

constexpr arma::uword kDenseEigLimit = 64;

// Index of the largest-magnitude entry, lowest index on ties.
arma::uword anchor_index(const arma::cx_vec& u) {
  arma::uword best = 0;
  double best_mag = -1.0;
  for (arma::uword i = 0; i < u.n_elem; ++i) {
    const double mag = std::abs(u(i));
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

// Rotates u so that its anchor entry is real non-negative. Makes the
// eigenvector choice deterministic up to the eigensolver's basis.
void fix_phase(arma::cx_vec& u) {
  const arma::uword best = anchor_index(u);
  const double mag = std::abs(u(best));
  if (mag <= 0.0) return;
  u *= std::conj(u(best)) / mag;
}

}  // namespace

arma::cx_mat build_b(double tau_l, double tau_lhat, const arma::vec& duals,
                     const arma::vec& betas, const arma::cx_mat& h_hat_group) {
  const arma::uword m = h_hat_group.n_rows;
  const arma::uword n = h_hat_group.n_cols;
  if (duals.n_elem != n || betas.n_elem != n) {
    throw std::invalid_argument("build_b: weight vectors must match the group size");
  }
  if (arma::any(duals < 0.0)) {
    throw std::domain_error("build_b: duals must be non-negative");
  }

  arma::cx_mat b(m, m, arma::fill::zeros);
  for (arma::uword j = 0; j < n; ++j) {
    const arma::cx_vec h = h_hat_group.col(j);
    b += (duals(j) * betas(j)) * (h * h.t());
  }
  b *= tau_l / tau_lhat;
  return 0.5 * (b + b.t());  // symmetrize accumulated roundoff
}

BeamformerSolution optimal_beamformer(const arma::cx_mat& b, double p_dl_max) {
  if (!b.is_square()) throw std::invalid_argument("optimal_beamformer: B must be square");
  const arma::uword m = b.n_rows;

  BeamformerSolution sol;
  sol.b_matrix = b;

  if (arma::norm(b, "fro") == 0.0) {
    sol.degenerate = true;
    sol.lambda_dl = 0.0;
    sol.w.zeros(m);
    sol.w(0) = std::sqrt(p_dl_max);
    return sol;
  }

  arma::cx_vec u;
  if (m <= kDenseEigLimit) {
    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, b)) {
      throw std::runtime_error("optimal_beamformer: eigendecomposition failed");
    }
    sol.lambda_dl = eigval(m - 1);  // eig_sym sorts ascending
    // Degenerate top eigenvalue: pick the candidate whose anchor entry sits
    // lowest, so a scaled identity yields the first basis vector.
    arma::uword pick = m - 1;
    arma::uword pick_anchor = anchor_index(eigvec.col(pick));
    const double tol = 1e-12 * std::max(1.0, std::abs(sol.lambda_dl));
    for (arma::uword c = m - 1; c-- > 0;) {
      if (eigval(c) < sol.lambda_dl - tol) break;
      const arma::uword a = anchor_index(eigvec.col(c));
      if (a < pick_anchor) {
        pick = c;
        pick_anchor = a;
      }
    }
    u = eigvec.col(pick);
  } else {
    auto [lambda, vec] = detail::power_iteration_dominant(b);
    sol.lambda_dl = lambda;
    u = vec;
  }

  u /= arma::norm(u);
  fix_phase(u);
  sol.w = std::sqrt(p_dl_max) * u;
  return sol;
}

namespace detail {

std::pair<double, arma::cx_vec> power_iteration_dominant(const arma::cx_mat& b) {
  const arma::uword m = b.n_rows;
  arma::cx_vec v(m, arma::fill::ones);
  v /= arma::norm(v);
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    arma::cx_vec next = b * v;
    const double nn = arma::norm(next);
    if (nn == 0.0) break;
    next /= nn;
    const double lambda_next = std::real(arma::cdot(next, b * next));
    const double residual = arma::norm(b * next - lambda_next * next);
    v = next;
    lambda = lambda_next;
    if (residual <= 1e-12 * std::max(1.0, std::abs(lambda_next))) break;
  }
  return {lambda, v};
}

}  // namespace detail
}  // namespace wpcn
