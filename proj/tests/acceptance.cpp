// Acceptance suite: every criterion prints one PASS/FAIL line and fails the
// binary through doctest assertions when violated.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "wpcn/ehmodel.hpp"
#include "wpcn/engine.hpp"
#include "wpcn/wmmse.hpp"

using namespace wpcn;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, bool pass, const char* what) {
  std::printf("[acceptance] criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL", what);
  std::fflush(stdout);
}

double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0)) /
         std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("criterion 1: fixed-split solver convergence") {
  Stopwatch timer;
  bool pass = true;
  for (double p_dbm : {-10.0, 10.0}) {
    std::vector<int> iters;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      SystemConfig cfg;
      cfg.p_dl_max = dbm_to_watts(p_dbm);
      const ChannelRealization real = sample_realization(cfg, seed);
      const SolveReport rep = algorithm1(cfg, real, 0.5).second;
      CHECK(rep.converged);
      CHECK(rep.iterations <= 20);
      pass = pass && rep.converged && rep.iterations <= 20;
      iters.push_back(rep.iterations);
    }
    std::sort(iters.begin(), iters.end());
    const int median = iters[iters.size() / 2];
    CHECK(median <= 8);
    pass = pass && median <= 8;
  }
  const double elapsed = timer.seconds();
  CHECK(elapsed <= 30.0);
  report(1, pass && elapsed <= 30.0,
         "fixed-split solve reaches |dR| <= 1e-4 within 20 iterations on 200 runs, median <= 8");
}

TEST_CASE("criterion 2: slot search matches a dense grid") {
  Stopwatch timer;
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SystemConfig cfg;
    const ChannelRealization real = sample_realization(cfg, seed);
    const auto f = [&](double tau) { return algorithm1(cfg, real, tau).second.sum_rate; };

    const TauSearchTrace trace = golden_search(f, cfg.tol_tau, 64);
    CHECK(trace.iterations <= 15);
    pass = pass && trace.iterations <= 15;

    double grid_tau = 0.0;
    double grid_val = -1.0;
    for (int i = 1; i <= 999; ++i) {
      const double tau = i * 1e-3;
      const double v = f(tau);
      if (v > grid_val) {
        grid_val = v;
        grid_tau = tau;
      }
    }
    const bool tau_close = std::abs(trace.tau_star - grid_tau) <= 2e-3;
    const bool val_close = std::abs(f(trace.tau_star) - grid_val) <= 1e-3;
    CHECK(tau_close);
    CHECK(val_close);
    pass = pass && tau_close && val_close;
  }
  const double elapsed = timer.seconds();
  CHECK(elapsed <= 300.0);
  report(2, pass && elapsed <= 300.0,
         "golden-section slot search matches the 1e-3 grid argmax on 50 seeds");
}

TEST_CASE("criterion 3: harvested power saturates at beta * p_th") {
  bool pass = true;
  SystemConfig cfg;
  cfg.K = 2;
  cfg.M = 2;
  cfg.p_dl_max = dbm_to_watts(60.0);
  const double expected = (0.5 * cfg.beta * cfg.p_th) / 0.5;  // solver op order
  CHECK(watts_to_dbm(expected) == doctest::Approx(5.45).epsilon(2e-3));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChannelRealization real = sample_realization(cfg, seed);
    const SolveReport rep = algorithm1(cfg, real, 0.5).second;
    for (int k = 0; k < cfg.K; ++k) {
      CHECK(rep.per_user_harvest(k) == expected);
      pass = pass && rep.per_user_harvest(k) == expected;
    }
  }
  report(3, pass, "per-user harvested power equals beta * p_th exactly at 60 dBm");
}

TEST_CASE("criterion 4: harvest is invariant to the estimation error split") {
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SystemConfig base;
    base.K = 2;
    base.M = 2;
    base.p_dl_max = dbm_to_watts(0.0);

    std::array<SystemConfig, 3> cfgs{base, base, base};
    cfgs[0].sigma2_e = 0.0;
    cfgs[1].sigma2_e = 0.01;
    cfgs[2].sigma2_e = 0.1;
    std::array<ChannelRealization, 3> reals{sample_realization(cfgs[0], seed),
                                            sample_realization(cfgs[1], seed),
                                            sample_realization(cfgs[2], seed)};

    // Shared true channels, bit for bit.
    for (int k = 0; k < base.K; ++k) {
      for (int l = 0; l < 2; ++l) {
        const arma::cx_vec t0 = reals[0].true_channel(k, l);
        for (int c = 1; c < 3; ++c) {
          const arma::cx_vec tc = reals[c].true_channel(k, l);
          for (arma::uword i = 0; i < t0.n_elem; ++i) {
            CHECK(t0(i).real() == tc(i).real());
            CHECK(t0(i).imag() == tc(i).imag());
            pass = pass && t0(i).real() == tc(i).real() && t0(i).imag() == tc(i).imag();
          }
        }
      }
    }

    // Harvested energy depends on the true channel only: under one fixed
    // allocation all three realizations harvest identical energy.
    const Allocation alloc = algorithm1(cfgs[0], reals[0], 0.5).first;
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < base.K; ++k) {
        const int hp = alloc.assignment.harvest_phase[k];
        const HarvestResult h =
            harvested_energy(reals[c].true_channel(k, hp), alloc.beams[hp].w, alloc.tau[hp],
                             alloc.tau[other_phase(hp)], base.beta, base.p_th, base.eh_model);
        CHECK(h.q_hat == alloc.q_hat(k));
        pass = pass && h.q_hat == alloc.q_hat(k);
      }
    }
  }
  report(4, pass, "per-seed harvested energies bit-identical across sigma2_e {0, 0.01, 0.1}");
}

TEST_CASE("criterion 5: duplex crossover with separated error bands") {
  Stopwatch timer;
  bool pass = true;
  double means[2][2];  // [power][fd=0/hd=1]
  double errs[2][2];
  int pi = 0;
  for (double p_dbm : {0.0, 40.0}) {
    std::vector<double> fd_rates, hd_rates;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      SystemConfig cfg;
      cfg.p_dl_max = dbm_to_watts(p_dbm);
      const ChannelRealization real = sample_realization(cfg, seed);
      SystemConfig fd = cfg;
      fd.duplex = Duplex::FD;
      SystemConfig hd = cfg;
      hd.duplex = Duplex::HD;
      fd_rates.push_back(algorithm2(fd, real).report.sum_rate);
      hd_rates.push_back(algorithm2(hd, real).report.sum_rate);
    }
    means[pi][0] = mean_of(fd_rates);
    means[pi][1] = mean_of(hd_rates);
    errs[pi][0] = stderr_of(fd_rates);
    errs[pi][1] = stderr_of(hd_rates);
    ++pi;
  }
  // Low power: FD above HD with non-overlapping 2-sigma bands.
  CHECK(means[0][0] > means[0][1]);
  CHECK(means[0][0] - 2.0 * errs[0][0] > means[0][1] + 2.0 * errs[0][1]);
  pass = pass && means[0][0] > means[0][1] &&
         means[0][0] - 2.0 * errs[0][0] > means[0][1] + 2.0 * errs[0][1];
  // High power: HD at or above FD with non-overlapping bands.
  CHECK(means[1][1] >= means[1][0]);
  CHECK(means[1][1] - 2.0 * errs[1][1] > means[1][0] + 2.0 * errs[1][0]);
  pass = pass && means[1][1] >= means[1][0] &&
         means[1][1] - 2.0 * errs[1][1] > means[1][0] + 2.0 * errs[1][0];
  std::printf("  0 dBm: FD %.3f+-%.3f vs HD %.3f+-%.3f | 40 dBm: FD %.3f+-%.3f vs HD %.3f+-%.3f"
              " (%.1f s)\n",
              means[0][0], errs[0][0], means[0][1], errs[0][1], means[1][0], errs[1][0],
              means[1][1], errs[1][1], timer.seconds());
  report(5, pass, "FD-opt beats HD-opt at 0 dBm and the order flips by 40 dBm, paired seeds");
}

TEST_CASE("criterion 6: self-interference sweep is monotone, hd rows constant") {
  bool pass = true;
  std::vector<double> rsi_values;
  for (int e = -13; e <= -7; ++e) rsi_values.push_back(std::pow(10.0, e));

  std::vector<double> fd_means;
  std::vector<std::vector<double>> hd_per_seed(rsi_values.size());
  for (std::size_t vi = 0; vi < rsi_values.size(); ++vi) {
    std::vector<double> fd_rates;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      SystemConfig cfg;
      cfg.p_dl_max = dbm_to_watts(10.0);
      cfg.sigma2_rsi = rsi_values[vi];
      const ChannelRealization real = sample_realization(cfg, seed);
      SystemConfig fd = cfg;
      fd.duplex = Duplex::FD;
      fd_rates.push_back(algorithm1(fd, real, 0.5).second.sum_rate);
      SystemConfig hd = cfg;
      hd.duplex = Duplex::HD;
      hd_per_seed[vi].push_back(algorithm1(hd, real, 0.5).second.sum_rate);
    }
    fd_means.push_back(mean_of(fd_rates));
  }
  for (std::size_t vi = 1; vi < rsi_values.size(); ++vi) {
    CHECK(fd_means[vi] <= fd_means[vi - 1] + 1e-3);
    pass = pass && fd_means[vi] <= fd_means[vi - 1] + 1e-3;
    for (std::size_t s = 0; s < hd_per_seed[vi].size(); ++s) {
      CHECK(hd_per_seed[vi][s] == hd_per_seed[0][s]);
      pass = pass && hd_per_seed[vi][s] == hd_per_seed[0][s];
    }
  }
  report(6, pass, "FD mean rate non-increasing over 6 decades of RSI variance; HD bit-constant");
}

TEST_CASE("criterion 7: property suite") {
  Stopwatch timer;
  bool pass = true;

  // Rate-MSE identity at MMSE filters.
  {
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
      const arma::uword n = 1 + trial % 3;
      const arma::cx_mat g = testutil::random_cx_mat(rng, 4, n);
      arma::vec p(n);
      for (arma::uword j = 0; j < n; ++j) p(j) = unif(rng);
      const double w2 = unif(rng);
      const double rsi_var = 1e-2;
      const double noise = 1e-3;
      const double c = w2 * rsi_var + noise;
      for (arma::uword k = 0; k < n; ++k) {
        const arma::cx_vec v = mmse_filter(g, p, c, k);
        const double e = mse(v, g, p, c, k);
        const double gamma = ul_snr(v, g, p, w2, rsi_var, noise, k, Duplex::FD);
        const bool ok = std::abs((1.0 + gamma) * e - 1.0) <= 1e-9;
        CHECK(ok);
        pass = pass && ok;
      }
    }
  }

  // Rayleigh maximality of the energy beam direction.
  {
    std::mt19937_64 rng(200);
    const arma::cx_mat b = testutil::random_psd(rng, 4);
    const BeamformerSolution sol = optimal_beamformer(b, 1.0);
    const arma::cx_vec u = sol.w / arma::norm(sol.w);
    const double top = std::real(arma::cdot(u, b * u));
    for (int probe = 0; probe < 1000; ++probe) {
      const arma::cx_vec x = testutil::random_unit_vec(rng, 4);
      const bool ok = top >= std::real(arma::cdot(x, b * x)) - 1e-9;
      CHECK(ok);
      pass = pass && ok;
    }
  }

  // Per-iteration WMMSE block descent and a clean audit on converged solves.
  {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      SystemConfig cfg;
      const ChannelRealization real = sample_realization(cfg, seed);
      auto [alloc, rep] = algorithm1(cfg, real, 0.5);
      for (const IterationTrace& t : rep.trace) {
        const bool ok = t.wmmse_post <= t.wmmse_pre + 1e-9 * std::max(1.0, std::abs(t.wmmse_pre));
        CHECK(ok);
        pass = pass && ok;
      }
      if (rep.converged) {
        const AuditReport audit = audit_allocation(cfg, real, alloc, &rep);
        CHECK(audit.ok);
        pass = pass && audit.ok;
      }
      SystemConfig hd = cfg;
      hd.duplex = Duplex::HD;
      auto [alloc_h, rep_h] = algorithm1(hd, real, 0.5);
      if (rep_h.converged) {
        const AuditReport audit = audit_allocation(hd, real, alloc_h, &rep_h);
        CHECK(audit.ok);
        pass = pass && audit.ok;
      }
    }
  }

  // Coordinate assignment bounded by exhaustive enumeration (K <= 6).
  {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      SystemConfig cfg;
      cfg.K = (seed % 2 == 0) ? 4 : 6;
      cfg.max_iters = 3;
      const ChannelRealization real = sample_realization(cfg, seed);
      const Allocation base = algorithm1(cfg, real, 0.5).first;
      const auto objective = [&](const Assignment& cand) {
        Allocation tmp = base;
        tmp.assignment = cand;
        for (int ph = 0; ph < 2; ++ph) {
          tmp.dl_active[ph] = !cand.group(ph).empty();
          tmp.ul[ph].filters.zeros();
          tmp.ul[ph].theta.ones();
          tmp.ul[ph].p_ul.zeros();
        }
        for (int k = 0; k < cfg.K; ++k) {
          const int hp = cand.harvest_phase[k];
          const int up = other_phase(hp);
          double q_hat = 0.0;
          if (tmp.dl_active[hp]) {
            q_hat = harvested_energy(real.true_channel(k, hp), tmp.beams[hp].w, tmp.tau[hp],
                                     tmp.tau[up], cfg.beta, cfg.p_th, cfg.eh_model)
                        .q_hat;
          }
          tmp.q_hat(k) = q_hat;
          const int bup = base.assignment.ul_phase(k);
          tmp.ul[up].filters.col(k) = base.ul[bup].filters.col(k);
          tmp.ul[up].theta(k) = base.ul[bup].theta(k);
          tmp.ul[up].p_ul(k) = std::min(base.ul[bup].p_ul(k), q_hat);
        }
        return score_allocation(cfg, real, tmp).sum_rate;
      };
      const Assignment start = Assignment::alternating(cfg.K);
      const Assignment swept = coordinate_assign(start, objective);
      const Assignment best = enumerate_assign(cfg.K, objective);
      const bool monotone = objective(swept) >= objective(start) - 1e-12;
      const bool bounded = objective(best) >= objective(swept) - 1e-12;
      CHECK(monotone);
      CHECK(bounded);
      pass = pass && monotone && bounded;
    }
  }

  // FD pipeline with zero RSI reproduces the HD pipeline field for field.
  {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      SystemConfig hd;
      hd.duplex = Duplex::HD;
      const ChannelRealization real = sample_realization(hd, seed);
      auto [ah, rh] = algorithm1(hd, real, 0.5);
      SystemConfig fd = hd;
      fd.duplex = Duplex::FD;
      fd.sigma2_rsi = 0.0;
      SolveOptions opts;
      opts.initial_assignment = Assignment(hd.K, 0);
      opts.update_assignment = false;
      auto [af, rf] = algorithm1(fd, real, 0.5, opts);
      bool same = rh.sum_rate == rf.sum_rate && rh.iterations == rf.iterations &&
                  rh.converged == rf.converged;
      for (int k = 0; k < hd.K; ++k) {
        same = same && rh.per_user_rate(k) == rf.per_user_rate(k) &&
               rh.per_user_harvest(k) == rf.per_user_harvest(k) && rh.snr(k) == rf.snr(k);
      }
      CHECK(same);
      pass = pass && same;
    }
  }

  const double elapsed = timer.seconds();
  CHECK(elapsed <= 10.0);
  report(7, pass && elapsed <= 10.0, "identities, descent, audits, assignment bound, duplex twin");
}

TEST_CASE("criterion 8: the slot search never loses to the fixed split") {
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    SystemConfig cfg;
    const ChannelRealization real = sample_realization(cfg, seed);
    const double fixed = algorithm1(cfg, real, 0.5).second.sum_rate;
    const double searched = algorithm2(cfg, real).report.sum_rate;
    CHECK(searched >= fixed - 1e-9);
    pass = pass && searched >= fixed - 1e-9;
  }
  report(8, pass, "tau-search sum-rate >= fixed tau=0.5 sum-rate on 200 paired seeds");
}
