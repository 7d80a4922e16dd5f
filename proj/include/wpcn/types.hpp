#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpcn {

/// Duplex mode of the access point. In HD mode no energy is transmitted
/// while information is received, so there is no residual self-interference.
enum class Duplex { FD, HD };

/// Energy-harvesting circuit model. NonLinear clamps the received power at
/// the saturation threshold before applying the conversion efficiency.
enum class EhModel { NonLinear, Linear };

/// Raised for malformed or inconsistent scenario/experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Scenario constants for one network instance. Powers are stored in watts;
/// the config file reader also accepts `_dbm` suffixed keys.
struct SystemConfig {
  int K = 4;                              // number of mobile users
  int M = 4;                              // antennas per array half (UL receive / DL transmit)
  double p_dl_max = dbm_to_watts(10.0);   // per-phase DL transmit power budget, W
  double sigma2_ul = dbm_to_watts(-80.0); // UL receiver noise, W
  double sigma2_rsi = 1e-11;              // loop-back channel variance (dimensionless power gain)
  double beta = 0.7;                      // EH conversion efficiency, (0,1]
  double p_th = dbm_to_watts(7.0);        // EH saturation threshold, W
  double c0_db = -10.0;                   // attenuation at 1 m, dB (power)
  double eps_h = 3.0;                     // path-loss exponent
  double r_t = 10.0;                      // deployment radius, m
  double d_min = 1.0;                     // minimum user distance, m
  double sigma2_e = 0.0;                  // CSI error variance, [0,1)
  EhModel eh_model = EhModel::NonLinear;
  Duplex duplex = Duplex::FD;
  double tol_rate = 1e-4;                 // solver convergence threshold, bits
  double tol_tau = 1e-3;                  // golden-section interval tolerance
  int max_iters = 50;

  void validate() const {
    if (K < 1) throw ConfigError("K must be positive");
    if (M < 1) throw ConfigError("M must be positive");
    if (p_dl_max < 0.0) throw ConfigError("p_dl_max must be >= 0");
    if (sigma2_ul <= 0.0) throw ConfigError("sigma2_ul must be > 0");
    if (sigma2_rsi < 0.0) throw ConfigError("sigma2_rsi must be >= 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must be in (0,1]");
    if (p_th < 0.0) throw ConfigError("p_th must be >= 0");
    if (!(sigma2_e >= 0.0 && sigma2_e < 1.0)) throw ConfigError("sigma2_e must be in [0,1)");
    if (d_min < 1.0) throw ConfigError("d_min must be >= 1 m (reference distance)");
    if (d_min > r_t) throw ConfigError("d_min must not exceed r_t");
    if (tol_rate <= 0.0) throw ConfigError("tol_rate must be > 0");
    if (tol_tau <= 0.0) throw ConfigError("tol_tau must be > 0");
    if (max_iters < 1) throw ConfigError("max_iters must be positive");
  }
};

/// 3 - l phase complement, 0-based: other_phase(0) == 1.
constexpr int other_phase(int phase) { return 1 - phase; }

}  // namespace wpcn
