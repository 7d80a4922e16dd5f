// Command line front end: single solves, Monte Carlo sweeps, canned figure
// recipes and feasibility audits of saved allocations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wpcn/allocation_io.hpp"
#include "wpcn/config_io.hpp"
#include "wpcn/engine.hpp"
#include "wpcn/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

void print_report(const wpcn::SolveReport& report, double tau1) {
  std::printf("tau1=%.9f\n", tau1);
  std::printf("sum_rate_bits=%.9f\n", report.sum_rate);
  std::printf("iterations=%d\n", report.iterations);
  std::printf("converged=%d\n", report.converged ? 1 : 0);
  for (arma::uword k = 0; k < report.per_user_rate.n_elem; ++k) {
    std::printf("per_user_rate_bits_%llu=%.9f\n", static_cast<unsigned long long>(k),
                report.per_user_rate(k));
    std::printf("per_user_harvest_w_%llu=%.9e\n", static_cast<unsigned long long>(k),
                report.per_user_harvest(k));
    std::printf("snr_%llu=%.9e\n", static_cast<unsigned long long>(k), report.snr(k));
  }
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    std::printf("trace_%zu_sum_rate_bits=%.9f\n", i + 1, report.trace[i].sum_rate);
    std::printf("trace_%zu_wmmse_objective=%.9f\n", i + 1, report.trace[i].wmmse_post);
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw wpcn::ConfigError("cannot write output file: " + path);
  out << content;
}

std::string trace_csv(const wpcn::SolveReport& report) {
  std::string csv = "iteration,sum_rate_bits,wmmse_objective\n";
  char buf[128];
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f\n", i + 1, report.trace[i].sum_rate,
                  report.trace[i].wmmse_post);
    csv += buf;
  }
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink sum-rate solver and Monte Carlo harness for a "
               "wireless powered network with a full-duplex access point"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string mode;
  std::string scheme = "opt";
  double tau1 = 0.5;

  auto* solve = app.add_subcommand("solve", "solve one realization, print key=value report");
  solve->add_option("--config", config_path, "scenario config file");
  solve->add_option("--out", out_path, "write the allocation bundle (JSON)");
  solve->add_option("--seed", seed, "realization seed");
  solve->add_option("--mode", mode, "duplex override: fd|hd");
  solve->add_option("--scheme", scheme, "opt (search tau) | fixed (tau1 below)");
  solve->add_option("--tau1", tau1, "slot split for the fixed scheme");

  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "run a sweep spec, write CSV");
  sweep->add_option("--config", spec_path, "experiment spec file")->required();
  sweep->add_option("--out", out_path, "CSV output path")->required();
  sweep->add_option("--jobs", jobs, "worker threads");

  std::string figure_name;
  int figure_n = -1;
  auto* figure = app.add_subcommand("figure", "write CSV for a canned recipe (fig3..fig10)");
  figure->add_option("name", figure_name, "figure name")->required();
  figure->add_option("--out", out_path, "CSV output path")->required();
  figure->add_option("--n", figure_n, "override realization count");
  figure->add_option("--jobs", jobs, "worker threads");
  figure->add_option("--seed", seed, "first realization seed");

  std::string bundle_path;
  auto* audit = app.add_subcommand("audit", "feasibility-check a saved allocation bundle");
  audit->add_option("bundle", bundle_path, "bundle written by solve --out")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      wpcn::SystemConfig cfg =
          config_path.empty() ? wpcn::SystemConfig{} : wpcn::load_system_config(config_path);
      if (!mode.empty()) {
        if (mode == "fd") cfg.duplex = wpcn::Duplex::FD;
        else if (mode == "hd") cfg.duplex = wpcn::Duplex::HD;
        else throw wpcn::ConfigError("--mode must be fd or hd");
      }
      cfg.validate();
      const wpcn::ChannelRealization real = wpcn::sample_realization(cfg, seed);

      wpcn::Allocation alloc;
      wpcn::SolveReport report;
      double tau_used = tau1;
      if (scheme == "opt") {
        auto result = wpcn::algorithm2(cfg, real);
        alloc = std::move(result.alloc);
        report = std::move(result.report);
        tau_used = alloc.tau[0];
      } else if (scheme == "fixed") {
        std::tie(alloc, report) = wpcn::algorithm1(cfg, real, tau1);
      } else {
        throw wpcn::ConfigError("--scheme must be opt or fixed");
      }

      std::printf("seed=%llu\n", static_cast<unsigned long long>(seed));
      std::printf("mode=%s\n", cfg.duplex == wpcn::Duplex::FD ? "fd" : "hd");
      std::printf("scheme=%s\n", scheme.c_str());
      print_report(report, tau_used);
      if (!out_path.empty()) {
        wpcn::save_bundle(out_path, {cfg, seed, alloc, report});
      }
      return report.converged ? kExitOk : kExitPartial;
    }

    if (sweep->parsed()) {
      const wpcn::ExperimentSpec spec = wpcn::load_experiment_spec(spec_path);
      const wpcn::SweepResult result = wpcn::run_sweep(spec, jobs);
      write_text(out_path, wpcn::to_csv(result));
      int failures = 0;
      for (const auto& row : result.rows) failures += row.n_fail;
      return failures > 0 ? kExitPartial : kExitOk;
    }

    if (figure->parsed()) {
      wpcn::ExperimentSpec spec = wpcn::figure_recipe(figure_name);
      if (figure_n > 0) spec.n_realizations = figure_n;
      spec.seed0 = seed;
      if (figure_name == "fig4" || figure_name == "fig5") {
        // Convergence-trace plots: one solve, per-iteration rows.
        const wpcn::SystemConfig cfg = spec.base;
        const wpcn::ChannelRealization real = wpcn::sample_realization(cfg, spec.seed0);
        wpcn::SolveReport report;
        if (figure_name == "fig4") report = wpcn::algorithm1(cfg, real, 0.5).second;
        else report = wpcn::algorithm2(cfg, real).report;
        write_text(out_path, trace_csv(report));
        return report.converged ? kExitOk : kExitPartial;
      }
      const wpcn::SweepResult result = wpcn::run_sweep(spec, jobs);
      write_text(out_path, wpcn::to_csv(result));
      int failures = 0;
      for (const auto& row : result.rows) failures += row.n_fail;
      return failures > 0 ? kExitPartial : kExitOk;
    }

    if (audit->parsed()) {
      const wpcn::SolveBundle bundle = wpcn::load_bundle(bundle_path);
      const wpcn::ChannelRealization real =
          wpcn::sample_realization(bundle.config, bundle.seed);
      const wpcn::AuditReport result =
          wpcn::audit_allocation(bundle.config, real, bundle.allocation, &bundle.report);
      if (result.ok) {
        std::printf("audit=pass\n");
        return kExitOk;
      }
      std::printf("audit=fail\n");
      for (const std::string& v : result.violations) {
        std::printf("violation=%s\n", v.c_str());
      }
      return kExitPartial;
    }
  } catch (const wpcn::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
