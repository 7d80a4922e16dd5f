#include "wpcn/engine.hpp"

#include <cmath>
#include <limits>

#include "wpcn/ehmodel.hpp"
#include "wpcn/wmmse.hpp"

namespace wpcn {
namespace {

// Working state of the alternating solve. Filters/weights/powers are kept per
// user (column k is user k's filter in its current UL phase).
struct State {
  Assignment assign;
  std::array<double, 2> tau{0.5, 0.5};
  std::array<BeamformerSolution, 2> beams;
  std::array<bool, 2> dl_active{false, false};
  arma::cx_mat filters;  // M x K
  arma::vec theta;       // K
  arma::vec p;           // K
  arma::vec lambda;      // K
  arma::vec q_hat;       // K
};

std::vector<int> ul_users(const Assignment& assign, int phase) {
  return assign.group(other_phase(phase));  // harvesters of the other phase transmit here
}

arma::cx_mat ul_channel_matrix(const ChannelRealization& real, const std::vector<int>& users,
                               int phase) {
  arma::cx_mat g(real.antennas(), users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    g.col(i) = ul_estimated_channel(real, users[i], phase);
  }
  return g;
}

double dl_power(const State& st, int phase) {
  if (!st.dl_active[phase]) return 0.0;
  return std::real(arma::cdot(st.beams[phase].w, st.beams[phase].w));
}

double c_noise_for(const SystemConfig& cfg, double dl_pow) {
  return cfg.sigma2_ul + (cfg.duplex == Duplex::FD ? cfg.sigma2_rsi * dl_pow : 0.0);
}

void compute_beams(const SystemConfig& cfg, const ChannelRealization& real, State& st) {
  for (int ph = 0; ph < 2; ++ph) {
    const std::vector<int> grp = st.assign.group(ph);
    st.dl_active[ph] = !grp.empty();
    arma::cx_mat h(cfg.M, grp.size());
    arma::vec duals(grp.size());
    arma::vec betas(grp.size());
    for (std::size_t i = 0; i < grp.size(); ++i) {
      h.col(i) = real.estimated_dl(grp[i], ph);
      duals(i) = st.lambda(grp[i]);
      betas(i) = cfg.beta;
    }
    const arma::cx_mat b =
        grp.empty() ? arma::cx_mat(cfg.M, cfg.M, arma::fill::zeros)
                    : build_b(st.tau[ph], st.tau[other_phase(ph)], duals, betas, h);
    st.beams[ph] = optimal_beamformer(b, cfg.p_dl_max);
  }
}

arma::vec compute_budgets(const SystemConfig& cfg, const ChannelRealization& real,
                          const Assignment& assign, const std::array<BeamformerSolution, 2>& beams,
                          const std::array<bool, 2>& dl_active, const std::array<double, 2>& tau) {
  arma::vec q_hat(assign.users(), arma::fill::zeros);
  for (int k = 0; k < assign.users(); ++k) {
    const int hp = assign.harvest_phase[k];
    if (!dl_active[hp]) continue;
    q_hat(k) = harvested_energy(real.true_channel(k, hp), beams[hp].w, tau[hp],
                                tau[other_phase(hp)], cfg.beta, cfg.p_th, cfg.eh_model)
                   .q_hat;
  }
  return q_hat;
}

// Relaxation weight for the dual update. Full half-steps let the duals cover
// their decades-scale transient; the halving tail freezes the rare
// starved-pair orbits that plain damping cannot settle (the raw dual scales
// like 1/q_hat, so the eigen-beam whips between starved users). Any fixed
// point of the raw equations remains a fixed point of the relaxed update.
double dual_step(int iter) {
  constexpr int kFreeIters = 4;
  if (iter <= kFreeIters) return 0.5;
  return 0.5 * std::pow(0.5, iter - kFreeIters);
}

// tau-weighted sum of log rates for the current state (the fixed-variable
// assignment objective and the per-iteration score share this path).
double state_sum_rate(const SystemConfig& cfg, const ChannelRealization& real, const State& st) {
  double sum = 0.0;
  for (int ph = 0; ph < 2; ++ph) {
    const std::vector<int> t = ul_users(st.assign, ph);
    if (t.empty()) continue;
    const arma::cx_mat g = ul_channel_matrix(real, t, ph);
    arma::vec p_sub(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) p_sub(i) = st.p(t[i]);
    const double w2 = dl_power(st, ph);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double gamma = ul_snr(st.filters.col(t[i]), g, p_sub, w2, cfg.sigma2_rsi,
                                  cfg.sigma2_ul, i, cfg.duplex);
      sum += st.tau[ph] * std::log2(1.0 + gamma);
    }
  }
  return sum;
}

double state_wmmse_objective(const SystemConfig& cfg, const ChannelRealization& real,
                             const State& st) {
  double obj = 0.0;
  for (int ph = 0; ph < 2; ++ph) {
    const std::vector<int> t = ul_users(st.assign, ph);
    if (t.empty()) continue;
    const arma::cx_mat g = ul_channel_matrix(real, t, ph);
    arma::cx_mat v(st.filters.n_rows, t.size());
    arma::vec theta(t.size());
    arma::vec p_sub(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      v.col(i) = st.filters.col(t[i]);
      theta(i) = st.theta(t[i]);
      p_sub(i) = st.p(t[i]);
    }
    obj += wmmse_phase_objective(v, theta, g, p_sub, c_noise_for(cfg, dl_power(st, ph)));
  }
  return obj;
}

SolveReport state_report(const SystemConfig& cfg, const ChannelRealization& real,
                         const State& st) {
  SolveReport rep;
  rep.per_user_rate = arma::vec(cfg.K, arma::fill::zeros);
  rep.per_user_harvest = st.q_hat;
  rep.snr = arma::vec(cfg.K, arma::fill::zeros);
  for (int ph = 0; ph < 2; ++ph) {
    const std::vector<int> t = ul_users(st.assign, ph);
    if (t.empty()) continue;
    const arma::cx_mat g = ul_channel_matrix(real, t, ph);
    arma::vec p_sub(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) p_sub(i) = st.p(t[i]);
    const double w2 = dl_power(st, ph);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double gamma = ul_snr(st.filters.col(t[i]), g, p_sub, w2, cfg.sigma2_rsi,
                                  cfg.sigma2_ul, i, cfg.duplex);
      rep.snr(t[i]) = gamma;
      rep.per_user_rate(t[i]) = st.tau[ph] * std::log2(1.0 + gamma);
    }
  }
  rep.sum_rate = arma::accu(rep.per_user_rate);
  return rep;
}

Allocation to_allocation(const SystemConfig& cfg, const State& st) {
  Allocation alloc;
  alloc.assignment = st.assign;
  alloc.tau = st.tau;
  alloc.beams = st.beams;
  alloc.dl_active = st.dl_active;
  alloc.lambda_ul = st.lambda;
  alloc.q_hat = st.q_hat;
  alloc.mode = cfg.duplex;
  for (int ph = 0; ph < 2; ++ph) {
    UlPhaseState& ul = alloc.ul[ph];
    ul.filters = arma::cx_mat(cfg.M, cfg.K, arma::fill::zeros);
    ul.theta = arma::vec(cfg.K, arma::fill::ones);
    ul.p_ul = arma::vec(cfg.K, arma::fill::zeros);
    ul.c_noise = c_noise_for(cfg, dl_power(st, ph));
    for (int k : ul_users(st.assign, ph)) {
      ul.filters.col(k) = st.filters.col(k);
      ul.theta(k) = st.theta(k);
      ul.p_ul(k) = st.p(k);
    }
  }
  return alloc;
}

State from_allocation(const SystemConfig& cfg, const Allocation& alloc) {
  State st;
  st.assign = alloc.assignment;
  st.tau = alloc.tau;
  st.beams = alloc.beams;
  st.dl_active = alloc.dl_active;
  st.lambda = alloc.lambda_ul;
  st.q_hat = alloc.q_hat;
  st.filters = arma::cx_mat(cfg.M, cfg.K, arma::fill::zeros);
  st.theta = arma::vec(cfg.K, arma::fill::ones);
  st.p = arma::vec(cfg.K, arma::fill::zeros);
  for (int k = 0; k < cfg.K; ++k) {
    const int up = alloc.assignment.ul_phase(k);
    st.filters.col(k) = alloc.ul[up].filters.col(k);
    st.theta(k) = alloc.ul[up].theta(k);
    st.p(k) = alloc.ul[up].p_ul(k);
  }
  return st;
}

}  // namespace

double ul_snr(const arma::cx_vec& v, const arma::cx_mat& g_hats, const arma::vec& p_uls,
              double w_norm2, double sigma2_rsi, double sigma2_ul, arma::uword k,
              Duplex mode) {
  const double signal = p_uls(k) * std::norm(arma::cdot(v, g_hats.col(k)));
  if (signal == 0.0) return 0.0;
  const double v2 = std::real(arma::cdot(v, v));
  double den = sigma2_ul * v2;
  if (mode == Duplex::FD) den += sigma2_rsi * v2 * w_norm2;
  for (arma::uword j = 0; j < g_hats.n_cols; ++j) {
    if (j == k) continue;
    den += p_uls(j) * std::norm(arma::cdot(v, g_hats.col(j)));
  }
  return signal / den;
}

SolveReport score_allocation(const SystemConfig& cfg, const ChannelRealization& real,
                             const Allocation& alloc) {
  return state_report(cfg, real, from_allocation(cfg, alloc));
}

std::pair<Allocation, SolveReport> algorithm1(const SystemConfig& cfg,
                                              const ChannelRealization& real, double tau1,
                                              const SolveOptions& opts) {
  cfg.validate();
  if (!(tau1 > 0.0 && tau1 < 1.0)) throw std::domain_error("algorithm1: tau1 must lie in (0,1)");
  if (real.users() != cfg.K || real.antennas() != cfg.M) {
    throw std::invalid_argument("algorithm1: realization shape does not match config");
  }

  const bool hd = cfg.duplex == Duplex::HD;
  State st;
  st.tau = {tau1, 1.0 - tau1};
  st.assign = opts.initial_assignment.value_or(hd ? Assignment(cfg.K, 0)
                                                  : Assignment::alternating(cfg.K));
  if (st.assign.users() != cfg.K) {
    throw std::invalid_argument("algorithm1: initial assignment size mismatch");
  }
  const bool sweep_assignment = opts.update_assignment.value_or(!hd);

  st.lambda = arma::vec(cfg.K, arma::fill::ones);
  st.theta = arma::vec(cfg.K, arma::fill::ones);
  st.filters = arma::cx_mat(cfg.M, cfg.K, arma::fill::zeros);
  st.p = arma::vec(cfg.K, arma::fill::zeros);
  st.q_hat = arma::vec(cfg.K, arma::fill::zeros);

  SolveReport report;
  double prev_sr = 0.0;  // the zero-filter initial state carries zero rate
  int used_iters = cfg.max_iters;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    compute_beams(cfg, real, st);
    st.q_hat = compute_budgets(cfg, real, st.assign, st.beams, st.dl_active, st.tau);
    // Budget-anchored WMMSE block: filters and weights respond to full-budget
    // powers, the projection below keeps genuine interference-driven
    // cutbacks. Anchoring at the previous powers instead makes the power
    // coordinate crawl at high SINR (the step is p * (1 + 1/snr)^2) and the
    // loop cannot meet its convergence budget.
    st.p = st.q_hat;
    const double wmmse_pre = state_wmmse_objective(cfg, real, st);

    const double rho = dual_step(iter);
    for (int ph = 0; ph < 2; ++ph) {
      const std::vector<int> t = ul_users(st.assign, ph);
      if (t.empty()) continue;
      const arma::cx_mat g = ul_channel_matrix(real, t, ph);
      const double c = c_noise_for(cfg, dl_power(st, ph));
      arma::vec p_sub(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) p_sub(i) = st.p(t[i]);

      arma::cx_mat v_new(cfg.M, t.size());
      arma::vec theta_new(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        v_new.col(i) = mmse_filter(g, p_sub, c, i);
        theta_new(i) = optimal_weight(mse(v_new.col(i), g, p_sub, c, i));
      }
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double target = dual_lambda(theta_new, v_new, g, i, st.q_hat(t[i]));
        st.lambda(t[i]) += rho * (target - st.lambda(t[i]));
      }
      for (std::size_t i = 0; i < t.size(); ++i) {
        st.filters.col(t[i]) = v_new.col(i);
        st.theta(t[i]) = theta_new(i);
        st.p(t[i]) = ul_power(theta_new, v_new, g, i, st.q_hat(t[i]));
      }
    }

    const double wmmse_post = state_wmmse_objective(cfg, real, st);

    if (sweep_assignment) {
      const State snapshot = st;
      const auto objective = [&](const Assignment& cand) {
        State tmp = snapshot;
        tmp.assign = cand;
        for (int ph = 0; ph < 2; ++ph) tmp.dl_active[ph] = !cand.group(ph).empty();
        tmp.q_hat = compute_budgets(cfg, real, cand, tmp.beams, tmp.dl_active, tmp.tau);
        tmp.p = arma::min(snapshot.p, tmp.q_hat);
        return state_sum_rate(cfg, real, tmp);
      };
      st.assign = coordinate_assign(st.assign, objective);
      for (int ph = 0; ph < 2; ++ph) st.dl_active[ph] = !st.assign.group(ph).empty();
      st.q_hat = compute_budgets(cfg, real, st.assign, st.beams, st.dl_active, st.tau);
      st.p = arma::min(st.p, st.q_hat);
    }

    const double sr = state_sum_rate(cfg, real, st);
    report.trace.push_back({sr, wmmse_post, wmmse_pre});
    if (std::abs(sr - prev_sr) <= cfg.tol_rate) {
      report.converged = true;
      used_iters = iter;
      break;
    }
    prev_sr = sr;
  }

  report.iterations = report.converged ? used_iters : cfg.max_iters;
  SolveReport final_fields = state_report(cfg, real, st);
  final_fields.trace = std::move(report.trace);
  final_fields.iterations = report.iterations;
  final_fields.converged = report.converged;
  return {to_allocation(cfg, st), final_fields};
}

Algorithm2Result algorithm2(const SystemConfig& cfg, const ChannelRealization& real) {
  cfg.validate();
  const auto f = [&](double tau1) { return algorithm1(cfg, real, tau1).second.sum_rate; };

  Algorithm2Result out;
  out.tau_trace = golden_search(f, cfg.tol_tau, 64);
  const double f_star = out.tau_trace.evaluations.back().second;
  // Never return less than the fixed-split baseline: the midpoint of the final
  // bracket can sit a hair below tau = 0.5 when the optimum is there.
  const double f_half = f(0.5);
  const double tau_final = (f_half > f_star) ? 0.5 : out.tau_trace.tau_star;
  std::tie(out.alloc, out.report) = algorithm1(cfg, real, tau_final);
  return out;
}

AuditReport audit_allocation(const SystemConfig& cfg, const ChannelRealization& real,
                             const Allocation& alloc, const SolveReport* report) {
  AuditReport audit;
  auto fail = [&](const std::string& what) {
    audit.ok = false;
    audit.violations.push_back(what);
  };

  if (alloc.assignment.users() != cfg.K) fail("assignment size mismatch");
  for (int k = 0; k < alloc.assignment.users(); ++k) {
    if (alloc.assignment.a(k, 0) + alloc.assignment.a(k, 1) != 1) {
      fail("user " + std::to_string(k) + " not assigned to exactly one group");
    }
  }

  const double tau_sum = alloc.tau[0] + alloc.tau[1];
  if (!(alloc.tau[0] > 0.0 && alloc.tau[0] < 1.0) || !(alloc.tau[1] > 0.0 && alloc.tau[1] < 1.0) ||
      std::abs(tau_sum - 1.0) > 1e-12) {
    fail("slot fractions invalid");
  }

  for (int ph = 0; ph < 2; ++ph) {
    if (alloc.dl_active[ph] != !alloc.assignment.group(ph).empty()) {
      fail("phase " + std::to_string(ph + 1) + " dl_active flag inconsistent with grouping");
    }
    const BeamformerSolution& beam = alloc.beams[ph];
    double w2 = 0.0;
    for (arma::uword i = 0; i < beam.w.n_elem; ++i) w2 += std::norm(beam.w(i));
    if (std::abs(w2 - cfg.p_dl_max) > 1e-10 * std::max(cfg.p_dl_max, 1e-300)) {
      fail("phase " + std::to_string(ph + 1) + " beam power off budget");
    }
    const double b_norm = arma::norm(beam.b_matrix, "fro");
    if (!beam.degenerate && b_norm > 0.0 && w2 > 0.0) {
      const arma::cx_vec u = beam.w / std::sqrt(w2);
      const double residual = arma::norm(beam.b_matrix * u - beam.lambda_dl * u);
      if (residual > 1e-8 * b_norm) {
        fail("phase " + std::to_string(ph + 1) + " beam eigen-residual too large");
      }
    }
    const double expected_c =
        cfg.sigma2_ul +
        (alloc.mode == Duplex::FD && alloc.dl_active[ph] ? cfg.sigma2_rsi * w2 : 0.0);
    if (std::abs(alloc.ul[ph].c_noise - expected_c) > 1e-12 * std::max(expected_c, 1e-300)) {
      fail("phase " + std::to_string(ph + 1) + " noise floor inconsistent");
    }
  }

  // Budgets recomputed from the true channels with explicit loops.
  for (int k = 0; k < cfg.K; ++k) {
    const int hp = alloc.assignment.harvest_phase[k];
    const int up = other_phase(hp);
    double recv = 0.0;
    if (alloc.dl_active[hp]) {
      const arma::cx_vec h = real.true_channel(k, hp);
      std::complex<double> acc = 0.0;
      for (arma::uword i = 0; i < h.n_elem; ++i) acc += std::conj(h(i)) * alloc.beams[hp].w(i);
      recv = std::norm(acc);
    }
    const double clamped = cfg.eh_model == EhModel::NonLinear ? std::min(recv, cfg.p_th) : recv;
    const double q_hat_ref = alloc.tau[hp] * cfg.beta * clamped / alloc.tau[up];
    if (std::abs(alloc.q_hat(k) - q_hat_ref) > 1e-9 * std::max(q_hat_ref, 1e-300)) {
      fail("user " + std::to_string(k) + " stored budget disagrees with recomputation");
    }
    const double p_k = alloc.ul[up].p_ul(k);
    if (p_k < 0.0 || p_k > q_hat_ref + 1e-12) {
      fail("user " + std::to_string(k) + " UL power violates budget");
    }
    if (p_k > 0.0 && alloc.ul[up].theta(k) < 1.0 - 1e-12) {
      fail("user " + std::to_string(k) + " weight below 1");
    }
    // The harvesting-phase slots must stay empty.
    if (alloc.ul[hp].p_ul(k) != 0.0 || arma::norm(alloc.ul[hp].filters.col(k)) != 0.0) {
      fail("user " + std::to_string(k) + " carries UL state in its harvesting phase");
    }
  }

  if (report != nullptr) {
    const double rate_sum = arma::accu(report->per_user_rate);
    if (std::abs(report->sum_rate - rate_sum) > 1e-12 * std::max(1.0, std::abs(rate_sum))) {
      fail("report sum_rate is not the sum of per-user rates");
    }
    const SolveReport rescored = score_allocation(cfg, real, alloc);
    if (std::abs(rescored.sum_rate - report->sum_rate) >
        1e-9 * std::max(1.0, std::abs(report->sum_rate))) {
      fail("report sum_rate disagrees with independent rescoring");
    }
  }

  return audit;
}

}  // namespace wpcn
