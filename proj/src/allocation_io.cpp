#include "wpcn/allocation_io.hpp"

#include <fstream>

#include <json.hpp>

namespace wpcn {
namespace {

using nlohmann::json;

json cx_vec_to_json(const arma::cx_vec& v) {
  json arr = json::array();
  for (arma::uword i = 0; i < v.n_elem; ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

arma::cx_vec cx_vec_from_json(const json& arr) {
  arma::cx_vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v(i) = std::complex<double>(arr[i][0].get<double>(), arr[i][1].get<double>());
  }
  return v;
}

json cx_mat_to_json(const arma::cx_mat& m) {
  json cols = json::array();
  for (arma::uword c = 0; c < m.n_cols; ++c) cols.push_back(cx_vec_to_json(m.col(c)));
  return cols;
}

arma::cx_mat cx_mat_from_json(const json& cols, arma::uword rows) {
  arma::cx_mat m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(c) = cx_vec_from_json(cols[c]);
  return m;
}

json vec_to_json(const arma::vec& v) {
  json arr = json::array();
  for (arma::uword i = 0; i < v.n_elem; ++i) arr.push_back(v(i));
  return arr;
}

arma::vec vec_from_json(const json& arr) {
  arma::vec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
  return v;
}

json config_to_json(const SystemConfig& c) {
  return json{{"K", c.K},
              {"M", c.M},
              {"p_dl_max", c.p_dl_max},
              {"sigma2_ul", c.sigma2_ul},
              {"sigma2_rsi", c.sigma2_rsi},
              {"beta", c.beta},
              {"p_th", c.p_th},
              {"c0_db", c.c0_db},
              {"eps_h", c.eps_h},
              {"r_t", c.r_t},
              {"d_min", c.d_min},
              {"sigma2_e", c.sigma2_e},
              {"eh_model", c.eh_model == EhModel::NonLinear ? "nonlinear" : "linear"},
              {"duplex", c.duplex == Duplex::FD ? "fd" : "hd"},
              {"tol_rate", c.tol_rate},
              {"tol_tau", c.tol_tau},
              {"max_iters", c.max_iters}};
}

SystemConfig config_from_json(const json& j) {
  SystemConfig c;
  c.K = j.at("K").get<int>();
  c.M = j.at("M").get<int>();
  c.p_dl_max = j.at("p_dl_max").get<double>();
  c.sigma2_ul = j.at("sigma2_ul").get<double>();
  c.sigma2_rsi = j.at("sigma2_rsi").get<double>();
  c.beta = j.at("beta").get<double>();
  c.p_th = j.at("p_th").get<double>();
  c.c0_db = j.at("c0_db").get<double>();
  c.eps_h = j.at("eps_h").get<double>();
  c.r_t = j.at("r_t").get<double>();
  c.d_min = j.at("d_min").get<double>();
  c.sigma2_e = j.at("sigma2_e").get<double>();
  c.eh_model = j.at("eh_model").get<std::string>() == "linear" ? EhModel::Linear
                                                               : EhModel::NonLinear;
  c.duplex = j.at("duplex").get<std::string>() == "hd" ? Duplex::HD : Duplex::FD;
  c.tol_rate = j.at("tol_rate").get<double>();
  c.tol_tau = j.at("tol_tau").get<double>();
  c.max_iters = j.at("max_iters").get<int>();
  return c;
}

}  // namespace

void save_bundle(const std::string& path, const SolveBundle& bundle) {
  const Allocation& a = bundle.allocation;
  json j;
  j["config"] = config_to_json(bundle.config);
  j["seed"] = bundle.seed;
  j["tau"] = {a.tau[0], a.tau[1]};
  j["mode"] = a.mode == Duplex::FD ? "fd" : "hd";
  j["harvest_phase"] = a.assignment.harvest_phase;
  j["lambda_ul"] = vec_to_json(a.lambda_ul);
  j["q_hat"] = vec_to_json(a.q_hat);
  for (int ph = 0; ph < 2; ++ph) {
    json phase;
    phase["w"] = cx_vec_to_json(a.beams[ph].w);
    phase["lambda_dl"] = a.beams[ph].lambda_dl;
    phase["degenerate"] = a.beams[ph].degenerate;
    phase["b_matrix"] = cx_mat_to_json(a.beams[ph].b_matrix);
    phase["dl_active"] = a.dl_active[ph];
    phase["filters"] = cx_mat_to_json(a.ul[ph].filters);
    phase["theta"] = vec_to_json(a.ul[ph].theta);
    phase["p_ul"] = vec_to_json(a.ul[ph].p_ul);
    phase["c_noise"] = a.ul[ph].c_noise;
    j["phases"].push_back(phase);
  }
  j["report"] = {{"sum_rate", bundle.report.sum_rate},
                 {"per_user_rate", vec_to_json(bundle.report.per_user_rate)},
                 {"per_user_harvest", vec_to_json(bundle.report.per_user_harvest)},
                 {"snr", vec_to_json(bundle.report.snr)},
                 {"iterations", bundle.report.iterations},
                 {"converged", bundle.report.converged}};

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write bundle: " + path);
  out << j.dump(2) << '\n';
}

SolveBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bundle: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed bundle: ") + e.what());
  }

  SolveBundle bundle;
  bundle.config = config_from_json(j.at("config"));
  bundle.config.validate();
  bundle.seed = j.at("seed").get<std::uint64_t>();

  Allocation& a = bundle.allocation;
  a.tau = {j.at("tau")[0].get<double>(), j.at("tau")[1].get<double>()};
  a.mode = j.at("mode").get<std::string>() == "hd" ? Duplex::HD : Duplex::FD;
  a.assignment.harvest_phase = j.at("harvest_phase").get<std::vector<std::uint8_t>>();
  a.lambda_ul = vec_from_json(j.at("lambda_ul"));
  a.q_hat = vec_from_json(j.at("q_hat"));
  const arma::uword m = static_cast<arma::uword>(bundle.config.M);
  for (int ph = 0; ph < 2; ++ph) {
    const json& phase = j.at("phases")[ph];
    a.beams[ph].w = cx_vec_from_json(phase.at("w"));
    a.beams[ph].lambda_dl = phase.at("lambda_dl").get<double>();
    a.beams[ph].degenerate = phase.at("degenerate").get<bool>();
    a.beams[ph].b_matrix = cx_mat_from_json(phase.at("b_matrix"), m);
    a.dl_active[ph] = phase.at("dl_active").get<bool>();
    a.ul[ph].filters = cx_mat_from_json(phase.at("filters"), m);
    a.ul[ph].theta = vec_from_json(phase.at("theta"));
    a.ul[ph].p_ul = vec_from_json(phase.at("p_ul"));
    a.ul[ph].c_noise = phase.at("c_noise").get<double>();
  }

  const json& rep = j.at("report");
  bundle.report.sum_rate = rep.at("sum_rate").get<double>();
  bundle.report.per_user_rate = vec_from_json(rep.at("per_user_rate"));
  bundle.report.per_user_harvest = vec_from_json(rep.at("per_user_harvest"));
  bundle.report.snr = vec_from_json(rep.at("snr"));
  bundle.report.iterations = rep.at("iterations").get<int>();
  bundle.report.converged = rep.at("converged").get<bool>();
  return bundle;
}

}  // namespace wpcn
