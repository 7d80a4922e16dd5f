#include "wpcn/ehmodel.hpp"

namespace wpcn {

HarvestResult harvested_energy(const arma::cx_vec& h_true, const arma::cx_vec& w,
                               double tau_l, double tau_lhat, double beta, double p_th,
                               EhModel model) {
  if (!(tau_l > 0.0 && tau_l < 1.0) || !(tau_lhat > 0.0 && tau_lhat < 1.0)) {
    throw std::domain_error("harvested_energy: slot fractions must lie in (0,1)");
  }
  if (std::abs(tau_l + tau_lhat - 1.0) > 1e-9) {
    throw std::domain_error("harvested_energy: slot fractions must sum to 1");
  }

  HarvestResult res;
  const std::complex<double> inner = arma::cdot(h_true, w);
  res.received_power = std::norm(inner);
  res.saturated = (model == EhModel::NonLinear) && (res.received_power >= p_th);
  const double effective =
      (model == EhModel::NonLinear) ? std::min(res.received_power, p_th) : res.received_power;
  res.q = tau_l * beta * effective;
  res.q_hat = res.q / tau_lhat;
  return res;
}

}  // namespace wpcn
