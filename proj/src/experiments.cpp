#include "wpcn/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace wpcn {
namespace {

struct CellResult {
  double sum_rate = 0.0;
  double mean_harvest = 0.0;
  double iterations = 0.0;
  bool converged = true;
};

bool scheme_is_hd(Scheme s) { return s == Scheme::HdOpt || s == Scheme::HdFixed; }
bool scheme_is_opt(Scheme s) { return s == Scheme::FdOpt || s == Scheme::HdOpt; }

CellResult run_cell(const SystemConfig& cfg, const ChannelRealization& real, Scheme scheme,
                    double tau1_fixed) {
  SystemConfig run_cfg = cfg;
  run_cfg.duplex = scheme_is_hd(scheme) ? Duplex::HD : Duplex::FD;

  SolveReport report;
  if (scheme_is_opt(scheme)) {
    report = algorithm2(run_cfg, real).report;
  } else {
    report = algorithm1(run_cfg, real, tau1_fixed).second;
  }

  CellResult cell;
  cell.sum_rate = report.sum_rate;
  cell.mean_harvest = arma::mean(report.per_user_harvest);
  cell.iterations = report.iterations;
  cell.converged = report.converged;
  return cell;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::PDlDbm: return "p_dl_dbm";
    case SweepVariable::Sigma2RsiDb: return "sigma2_rsi_db";
    case SweepVariable::Sigma2UlDbm: return "sigma2_ul_dbm";
    case SweepVariable::KUsers: return "K";
    case SweepVariable::Sigma2E: return "sigma2_e";
    case SweepVariable::Tau1Fixed: return "tau1_fixed";
  }
  return "?";
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::FdOpt: return "FD-opt";
    case Scheme::FdFixed: return "FD-fixed";
    case Scheme::HdOpt: return "HD-opt";
    case Scheme::HdFixed: return "HD-fixed";
  }
  return "?";
}

SweepVariable sweep_variable_from_name(const std::string& name) {
  for (SweepVariable v :
       {SweepVariable::PDlDbm, SweepVariable::Sigma2RsiDb, SweepVariable::Sigma2UlDbm,
        SweepVariable::KUsers, SweepVariable::Sigma2E, SweepVariable::Tau1Fixed}) {
    if (name == sweep_variable_name(v)) return v;
  }
  throw ConfigError("unknown sweep variable: " + name);
}

Scheme scheme_from_name(const std::string& name) {
  for (Scheme s : {Scheme::FdOpt, Scheme::FdFixed, Scheme::HdOpt, Scheme::HdFixed}) {
    if (name == scheme_name(s)) return s;
  }
  throw ConfigError("unknown scheme: " + name);
}

void ExperimentSpec::validate() const {
  base.validate();
  if (n_realizations < 1) throw ConfigError("n_realizations must be >= 1");
  if (values.empty()) throw ConfigError("sweep_values must be non-empty");
  if (schemes.empty()) throw ConfigError("schemes must be non-empty");
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) increasing = false;
    if (values[i] >= values[i - 1]) decreasing = false;
  }
  if (!(increasing || decreasing)) throw ConfigError("sweep_values must be strictly monotone");
  for (double v : values) {
    if (variable == SweepVariable::KUsers &&
        (v < 1.0 || v != std::floor(v) || v > 64.0)) {
      throw ConfigError("K sweep values must be small positive integers");
    }
    if (variable == SweepVariable::Tau1Fixed && !(v > 0.0 && v < 1.0)) {
      throw ConfigError("tau1 sweep values must lie in (0,1)");
    }
    if (variable == SweepVariable::Sigma2E && !(v >= 0.0 && v < 1.0)) {
      throw ConfigError("sigma2_e sweep values must lie in [0,1)");
    }
  }
}

SystemConfig apply_sweep_value(const SystemConfig& base, SweepVariable variable, double value) {
  SystemConfig cfg = base;
  switch (variable) {
    case SweepVariable::PDlDbm: cfg.p_dl_max = dbm_to_watts(value); break;
    // dB axes are read as power levels in dBm; the dimensionless variance is
    // the numeric value of that power in watts.
    case SweepVariable::Sigma2RsiDb: cfg.sigma2_rsi = dbm_to_watts(value); break;
    case SweepVariable::Sigma2UlDbm: cfg.sigma2_ul = dbm_to_watts(value); break;
    case SweepVariable::KUsers: cfg.K = static_cast<int>(value); break;
    case SweepVariable::Sigma2E: cfg.sigma2_e = value; break;
    case SweepVariable::Tau1Fixed: break;  // solve parameter, applied by the runner
  }
  return cfg;
}

SweepResult run_sweep(const ExperimentSpec& spec, int jobs) {
  spec.validate();
  const std::size_t n_values = spec.values.size();
  const std::size_t n_seeds = static_cast<std::size_t>(spec.n_realizations);
  const std::size_t n_schemes = spec.schemes.size();

  std::vector<CellResult> grid(n_values * n_seeds * n_schemes);
  auto cell_index = [&](std::size_t vi, std::size_t si, std::size_t ci) {
    return (vi * n_seeds + si) * n_schemes + ci;
  };

  auto run_task = [&](std::size_t task) {
    const std::size_t vi = task / n_seeds;
    const std::size_t si = task % n_seeds;
    const double value = spec.values[vi];
    const SystemConfig cfg = apply_sweep_value(spec.base, spec.variable, value);
    const ChannelRealization real = sample_realization(cfg, spec.seed0 + si);
    const double tau1 = spec.variable == SweepVariable::Tau1Fixed ? value : 0.5;
    for (std::size_t ci = 0; ci < n_schemes; ++ci) {
      grid[cell_index(vi, si, ci)] = run_cell(cfg, real, spec.schemes[ci], tau1);
    }
  };

  const std::size_t n_tasks = n_values * n_seeds;
  if (jobs <= 1) {
    for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
  } else {
    const std::size_t n_workers = std::min<std::size_t>(jobs, n_tasks);
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&, w]() {
        for (std::size_t task = w; task < n_tasks; task += n_workers) run_task(task);
      });
    }
    for (auto& t : workers) t.join();
  }

  SweepResult result;
  result.variable = spec.variable;
  for (std::size_t ci = 0; ci < n_schemes; ++ci) {
    for (std::size_t vi = 0; vi < n_values; ++vi) {
      SweepRow row;
      row.scheme = spec.schemes[ci];
      row.sweep_value = spec.values[vi];
      double sum = 0.0;
      double harvest = 0.0;
      double iters = 0.0;
      for (std::size_t si = 0; si < n_seeds; ++si) {
        const CellResult& cell = grid[cell_index(vi, si, ci)];
        sum += cell.sum_rate;
        harvest += cell.mean_harvest;
        iters += cell.iterations;
        if (!cell.converged) ++row.n_fail;
      }
      const double n = static_cast<double>(n_seeds);
      row.mean_sum_rate_bits = sum / n;
      row.mean_harvest_w = harvest / n;
      row.mean_iters = iters / n;
      if (n_seeds >= 2) {
        double ss = 0.0;
        for (std::size_t si = 0; si < n_seeds; ++si) {
          const double d = grid[cell_index(vi, si, ci)].sum_rate - row.mean_sum_rate_bits;
          ss += d * d;
        }
        row.stderr_bits = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        row.has_stderr = true;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "scheme,sweep_var,sweep_value,mean_sum_rate_bits,stderr_bits,mean_harvest_w,"
         "mean_iters,n_fail\n";
  char buf[256];
  for (const SweepRow& row : result.rows) {
    std::string stderr_field;
    if (row.has_stderr) {
      std::snprintf(buf, sizeof(buf), "%.6f", row.stderr_bits);
      stderr_field = buf;
    }
    std::snprintf(buf, sizeof(buf), "%.6f", row.mean_sum_rate_bits);
    const std::string rate_field = buf;
    std::snprintf(buf, sizeof(buf), "%.6e", row.mean_harvest_w);
    const std::string harvest_field = buf;
    std::snprintf(buf, sizeof(buf), "%.3f", row.mean_iters);
    const std::string iters_field = buf;
    out << scheme_name(row.scheme) << ',' << sweep_variable_name(result.variable) << ','
        << format_value(row.sweep_value) << ',' << rate_field << ',' << stderr_field << ','
        << harvest_field << ',' << iters_field << ',' << row.n_fail << '\n';
  }
  return out.str();
}

ExperimentSpec figure_recipe(const std::string& name) {
  ExperimentSpec spec;
  SystemConfig& cfg = spec.base;

  auto range = [](double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
  };
  const std::vector<Scheme> all_schemes{Scheme::FdOpt, Scheme::FdFixed, Scheme::HdOpt,
                                        Scheme::HdFixed};

  if (name == "fig3") {
    cfg.p_dl_max = dbm_to_watts(10.0);
    spec.variable = SweepVariable::Tau1Fixed;
    spec.values = range(0.02, 0.98, 0.02);
    spec.schemes = {Scheme::FdFixed};
    spec.n_realizations = 1;
  } else if (name == "fig4") {
    cfg.p_dl_max = dbm_to_watts(10.0);
    spec.variable = SweepVariable::PDlDbm;
    spec.values = {10.0};
    spec.schemes = {Scheme::FdFixed};
    spec.n_realizations = 1;
  } else if (name == "fig5") {
    cfg.p_dl_max = dbm_to_watts(10.0);
    spec.variable = SweepVariable::PDlDbm;
    spec.values = {10.0};
    spec.schemes = {Scheme::FdOpt};
    spec.n_realizations = 1;
  } else if (name == "fig6") {
    cfg.K = 2;
    cfg.M = 2;
    cfg.p_dl_max = dbm_to_watts(0.0);
    spec.variable = SweepVariable::Sigma2E;
    spec.values = {0.0, 0.01, 0.1};
    spec.schemes = all_schemes;
  } else if (name == "fig7") {
    cfg.K = 2;
    cfg.M = 2;
    spec.variable = SweepVariable::PDlDbm;
    spec.values = range(-20.0, 60.0, 5.0);
    spec.schemes = all_schemes;
  } else if (name == "fig8") {
    spec.variable = SweepVariable::PDlDbm;
    spec.values = range(-20.0, 40.0, 5.0);
    spec.schemes = all_schemes;
  } else if (name == "fig9") {
    cfg.p_dl_max = dbm_to_watts(0.0);
    spec.variable = SweepVariable::Sigma2RsiDb;
    spec.values = range(-130.0, -70.0, 10.0);
    spec.schemes = {Scheme::FdFixed, Scheme::HdFixed};
  } else if (name == "fig10") {
    // The source plot states K=4 in its caption while sweeping the user
    // count; the recipe sweeps K and treats the caption value as a typo.
    cfg.p_dl_max = dbm_to_watts(0.0);
    spec.variable = SweepVariable::KUsers;
    spec.values = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    spec.schemes = {Scheme::FdFixed, Scheme::HdFixed};
  } else {
    throw ConfigError("unknown figure name: " + name);
  }
  return spec;
}

}  // namespace wpcn
