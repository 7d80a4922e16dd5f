#include "wpcn/scenario.hpp"

#include <random>
#include <utility>

namespace wpcn {
namespace {

// Significand width of the underlying true-channel draw. Quantizing the
// draw (a 2^-26 ~ 1.5e-8 relative perturbation, far below every asserted
// tolerance) leaves 26 bits of grid headroom, so the estimate/error split
// below can reproduce the true value bit-exactly even when the error
// component dwarfs the channel component.
constexpr int kTruthBits = 26;

double quantize_sig(double x) {
  if (x == 0.0) return 0.0;
  int e = 0;
  const double m = std::frexp(x, &e);
  return std::ldexp(std::round(std::ldexp(m, kTruthBits)), e - kTruthBits);
}

// Splits a quantized `total` into est + err == total exactly in floating
// point, with err within half a grid step of err_raw. Keeps the true channel
// bit-identical across sigma2_e values while the stored estimate/error pair
// carries the requested statistics.
std::pair<double, double> split_exact(double total, double err_raw) {
  if (total == 0.0) return {-err_raw, err_raw};
  if (err_raw == 0.0) return {total, 0.0};
  int e = 0;
  std::frexp(total, &e);
  const double grid = std::ldexp(1.0, e - kTruthBits);
  const double err = std::round(err_raw / grid) * grid;
  if (err == 0.0) return {total, 0.0};
  const double est = total - err;
  if (est + err == total) return {est, err};
  // Error-to-channel ratio beyond the 2^26 headroom: accept a sub-ulp
  // mismatch in the recomposition.
  const double e2 = total - (total - err_raw);
  return {total - e2, e2};
}

}  // namespace

ChannelRealization sample_realization(const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();

  ChannelRealization real;
  real.seed = seed;
  real.distances.set_size(cfg.K);
  real.h_hat.set_size(cfg.M, cfg.K, 2);
  real.h_err.set_size(cfg.M, cfg.K, 2);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Uniform over the annulus area between d_min and r_t.
  const double rmin2 = cfg.d_min * cfg.d_min;
  const double rmax2 = cfg.r_t * cfg.r_t;
  for (int k = 0; k < cfg.K; ++k) {
    real.distances(k) = std::sqrt(unif(rng) * (rmax2 - rmin2) + rmin2);
  }

  const double c0 = db_to_linear(cfg.c0_db);
  const double se = cfg.sigma2_e;
  const double err_gain = std::sqrt(se * (1.0 - se));
  constexpr double kInvSqrt2 = 0.70710678118654752440;

  // Fixed (phase, user, entry) draw order; each entry consumes four normals
  // regardless of sigma2_e so streams stay aligned across error settings.
  for (int l = 0; l < 2; ++l) {
    for (int k = 0; k < cfg.K; ++k) {
      const double amp = std::sqrt(c0) * std::pow(real.distances(k), -cfg.eps_h / 2.0);
      for (int i = 0; i < cfg.M; ++i) {
        const std::complex<double> eta(gauss(rng) * kInvSqrt2, gauss(rng) * kInvSqrt2);
        const std::complex<double> xi(gauss(rng) * kInvSqrt2, gauss(rng) * kInvSqrt2);
        const std::complex<double> h(quantize_sig(amp * eta.real()),
                                     quantize_sig(amp * eta.imag()));
        // Error drawn conditionally on the true entry: marginal CN(0, se*amp^2),
        // independent of the estimate h - err.
        const std::complex<double> err_raw = se * h + (amp * err_gain) * xi;
        const auto [est_re, err_re] = split_exact(h.real(), err_raw.real());
        const auto [est_im, err_im] = split_exact(h.imag(), err_raw.imag());
        real.h_hat.slice(l)(i, k) = std::complex<double>(est_re, est_im);
        real.h_err.slice(l)(i, k) = std::complex<double>(err_re, err_im);
      }
    }
  }
  return real;
}

arma::cx_vec ul_estimated_channel(const ChannelRealization& real, int k, int phase) {
  return arma::conj(real.estimated_dl(k, phase));
}

}  // namespace wpcn
