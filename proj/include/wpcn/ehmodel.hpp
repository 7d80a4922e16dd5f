#pragma once

#include <armadillo>

#include "wpcn/types.hpp"

namespace wpcn {

/// Harvest outcome for one user over its harvesting slot.
struct HarvestResult {
  double q = 0.0;               // harvested energy over the unit block, J
  double q_hat = 0.0;           // UL power budget q / tau_lhat, W
  double received_power = 0.0;  // pre-saturation |h^H w|^2, W
  bool saturated = false;
};

/// Harvested energy from the phase beam, using the true channel.
/// q = tau_l * beta * min(received, p_th) under the non-linear model; the
/// clamp is dropped for the linear model. Throws std::domain_error for slot
/// fractions outside (0,1).
HarvestResult harvested_energy(const arma::cx_vec& h_true, const arma::cx_vec& w,
                               double tau_l, double tau_lhat, double beta, double p_th,
                               EhModel model);

}  // namespace wpcn
