#pragma once

#include <armadillo>
#include <cstdint>

#include "wpcn/types.hpp"

namespace wpcn {

/// One random network draw: user distances plus per-phase estimated DL
/// channels and estimation errors. The true channel is always the sum
/// h_hat + h_err and is exposed through an accessor instead of being stored.
struct ChannelRealization {
  arma::vec distances;  // K distances, m
  arma::cx_cube h_hat;  // M x K x 2  estimated DL channel, slice = phase
  arma::cx_cube h_err;  // M x K x 2  estimation error
  std::uint64_t seed = 0;

  int users() const { return static_cast<int>(h_hat.n_cols); }
  int antennas() const { return static_cast<int>(h_hat.n_rows); }

  arma::cx_vec estimated_dl(int k, int phase) const {
    check_index(k, phase);
    return h_hat.slice(phase).col(k);
  }

  /// h = h_hat + h_err; by construction of the sampler the sum is bit-exact
  /// against the underlying draw for every sigma2_e.
  arma::cx_vec true_channel(int k, int phase) const {
    check_index(k, phase);
    return h_hat.slice(phase).col(k) + h_err.slice(phase).col(k);
  }

 private:
  void check_index(int k, int phase) const {
    if (k < 0 || k >= users()) throw std::out_of_range("user index out of range");
    if (phase < 0 || phase > 1) throw std::out_of_range("phase index out of range");
  }
};

/// Draws user positions uniformly over the annulus area [d_min, r_t] and
/// i.i.d. Rayleigh-faded channel entries with per-entry variance
/// C0 * d^-eps_h split into an estimate (variance share 1 - sigma2_e) and an
/// independent error (share sigma2_e). The underlying true channel is drawn
/// first, so realizations with equal (cfg geometry, seed) share identical
/// true channels for any sigma2_e. Deterministic for a fixed seed.
ChannelRealization sample_realization(const SystemConfig& cfg, std::uint64_t seed);

/// UL estimated channel by TDD reciprocity: conj(h_hat).
arma::cx_vec ul_estimated_channel(const ChannelRealization& real, int k, int phase);

}  // namespace wpcn
