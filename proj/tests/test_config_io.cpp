#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wpcn/allocation_io.hpp"
#include "wpcn/config_io.hpp"
#include "wpcn/engine.hpp"

using namespace wpcn;

TEST_CASE("scenario keys parse with dBm conversions and comments") {
  std::istringstream in(R"(
# scenario
K = 6
M = 8
p_dl_max_dbm = 10    # converted to watts
sigma2_ul_dbm = -80
sigma2_rsi = 1e-9
beta = 0.6
p_th_dbm = 7
c0_db = -10
eps_h = 3
r_t = 12.5
d_min = 1
sigma2_e = 0.01
eh_model = linear
duplex = hd
tol_rate = 1e-5
tol_tau = 1e-4
max_iters = 40
)");
  const SystemConfig cfg = parse_system_config(in);
  CHECK(cfg.K == 6);
  CHECK(cfg.M == 8);
  CHECK(cfg.p_dl_max == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(cfg.sigma2_ul == doctest::Approx(1e-11).epsilon(1e-12));
  CHECK(cfg.sigma2_rsi == 1e-9);
  CHECK(cfg.beta == 0.6);
  CHECK(cfg.p_th == doctest::Approx(dbm_to_watts(7.0)));
  CHECK(cfg.r_t == 12.5);
  CHECK(cfg.sigma2_e == 0.01);
  CHECK(cfg.eh_model == EhModel::Linear);
  CHECK(cfg.duplex == Duplex::HD);
  CHECK(cfg.tol_rate == 1e-5);
  CHECK(cfg.max_iters == 40);
}

TEST_CASE("watt and dBm forms of the same key agree") {
  std::istringstream a("p_dl_max = 0.01\n");
  std::istringstream b("p_dl_max_dbm = 10\n");
  CHECK(parse_system_config(a).p_dl_max ==
        doctest::Approx(parse_system_config(b).p_dl_max).epsilon(1e-12));
}

TEST_CASE("config errors carry context") {
  std::istringstream unknown("frequency = 2.4\n");
  CHECK_THROWS_AS(parse_system_config(unknown), ConfigError);

  std::istringstream junk("K = four\n");
  CHECK_THROWS_AS(parse_system_config(junk), ConfigError);

  std::istringstream noeq("K 4\n");
  CHECK_THROWS_AS(parse_system_config(noeq), ConfigError);

  std::istringstream invalid("sigma2_e = 1.5\n");
  CHECK_THROWS_AS(parse_system_config(invalid), ConfigError);

  std::istringstream geometry("d_min = 20\nr_t = 10\n");
  CHECK_THROWS_AS(parse_system_config(geometry), ConfigError);

  CHECK_THROWS_AS(load_system_config("/nonexistent/config"), ConfigError);
}

TEST_CASE("experiment spec parses sweep and scheme lists") {
  std::istringstream in(R"(
K = 4
M = 4
sweep_variable = p_dl_dbm
sweep_values = -10, 0, 10, 20
schemes = FD-opt, HD-opt
n_realizations = 25
seed0 = 17
)");
  const ExperimentSpec spec = parse_experiment_spec(in);
  CHECK(spec.variable == SweepVariable::PDlDbm);
  CHECK(spec.values == std::vector<double>{-10.0, 0.0, 10.0, 20.0});
  CHECK(spec.schemes == std::vector<Scheme>{Scheme::FdOpt, Scheme::HdOpt});
  CHECK(spec.n_realizations == 25);
  CHECK(spec.seed0 == 17);

  std::istringstream bad("sweep_variable = p_dl_dbm\nsweep_values = 3, 2, 5\n");
  CHECK_THROWS_AS(parse_experiment_spec(bad), ConfigError);
}

TEST_CASE("solve bundles round trip through json") {
  SystemConfig cfg;
  cfg.K = 3;
  cfg.M = 2;
  cfg.sigma2_e = 0.01;
  const ChannelRealization real = sample_realization(cfg, 21);
  auto [alloc, report] = algorithm1(cfg, real, 0.5);

  const std::string path = "bundle_roundtrip_test.json";
  save_bundle(path, {cfg, 21, alloc, report});
  const SolveBundle loaded = load_bundle(path);
  std::remove(path.c_str());

  CHECK(loaded.seed == 21);
  CHECK(loaded.config.K == cfg.K);
  CHECK(loaded.config.sigma2_e == cfg.sigma2_e);
  CHECK(loaded.report.sum_rate == report.sum_rate);
  CHECK(loaded.allocation.tau[0] == alloc.tau[0]);
  CHECK(loaded.allocation.assignment == alloc.assignment);
  for (int ph = 0; ph < 2; ++ph) {
    CHECK(arma::norm(loaded.allocation.beams[ph].w - alloc.beams[ph].w) == 0.0);
    CHECK(arma::norm(loaded.allocation.ul[ph].p_ul - alloc.ul[ph].p_ul) == 0.0);
  }

  // The reloaded bundle must still audit cleanly against a re-sampled
  // realization.
  const ChannelRealization resampled = sample_realization(loaded.config, loaded.seed);
  const AuditReport audit =
      audit_allocation(loaded.config, resampled, loaded.allocation, &loaded.report);
  CHECK(audit.ok);

  CHECK_THROWS_AS(load_bundle("/nonexistent/bundle.json"), ConfigError);
}
