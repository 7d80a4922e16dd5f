#include "wpcn/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace wpcn {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::pair<std::string, std::string>> read_pairs(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number from '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) throw ConfigError(key + ": expected an integer");
  return i;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Applies one scenario key; returns false if the key is not a scenario key.
bool apply_config_key(SystemConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "K") cfg.K = parse_int(key, value);
  else if (key == "M") cfg.M = parse_int(key, value);
  else if (key == "p_dl_max") cfg.p_dl_max = parse_double(key, value);
  else if (key == "p_dl_max_dbm") cfg.p_dl_max = dbm_to_watts(parse_double(key, value));
  else if (key == "sigma2_ul") cfg.sigma2_ul = parse_double(key, value);
  else if (key == "sigma2_ul_dbm") cfg.sigma2_ul = dbm_to_watts(parse_double(key, value));
  else if (key == "sigma2_rsi") cfg.sigma2_rsi = parse_double(key, value);
  else if (key == "beta") cfg.beta = parse_double(key, value);
  else if (key == "p_th") cfg.p_th = parse_double(key, value);
  else if (key == "p_th_dbm") cfg.p_th = dbm_to_watts(parse_double(key, value));
  else if (key == "c0_db") cfg.c0_db = parse_double(key, value);
  else if (key == "eps_h") cfg.eps_h = parse_double(key, value);
  else if (key == "r_t") cfg.r_t = parse_double(key, value);
  else if (key == "d_min") cfg.d_min = parse_double(key, value);
  else if (key == "sigma2_e") cfg.sigma2_e = parse_double(key, value);
  else if (key == "eh_model") {
    const std::string v = lower(value);
    if (v == "nonlinear") cfg.eh_model = EhModel::NonLinear;
    else if (v == "linear") cfg.eh_model = EhModel::Linear;
    else throw ConfigError("eh_model: expected nonlinear or linear, got '" + value + "'");
  } else if (key == "duplex") {
    const std::string v = lower(value);
    if (v == "fd") cfg.duplex = Duplex::FD;
    else if (v == "hd") cfg.duplex = Duplex::HD;
    else throw ConfigError("duplex: expected fd or hd, got '" + value + "'");
  } else if (key == "tol_rate") cfg.tol_rate = parse_double(key, value);
  else if (key == "tol_tau") cfg.tol_tau = parse_double(key, value);
  else if (key == "max_iters") cfg.max_iters = parse_int(key, value);
  else return false;
  return true;
}

}  // namespace

SystemConfig parse_system_config(std::istream& in) {
  SystemConfig cfg;
  for (const auto& [key, value] : read_pairs(in)) {
    if (!apply_config_key(cfg, key, value)) {
      throw ConfigError("unknown config key: " + key);
    }
  }
  cfg.validate();
  return cfg;
}

SystemConfig load_system_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_system_config(in);
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  for (const auto& [key, value] : read_pairs(in)) {
    if (apply_config_key(spec.base, key, value)) continue;
    if (key == "sweep_variable") {
      spec.variable = sweep_variable_from_name(value);
    } else if (key == "sweep_values") {
      spec.values.clear();
      for (const std::string& item : split_list(value)) {
        spec.values.push_back(parse_double(key, item));
      }
    } else if (key == "schemes") {
      spec.schemes.clear();
      for (const std::string& item : split_list(value)) {
        spec.schemes.push_back(scheme_from_name(item));
      }
    } else if (key == "n_realizations") {
      spec.n_realizations = parse_int(key, value);
    } else if (key == "seed0") {
      spec.seed0 = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
      throw ConfigError("unknown experiment key: " + key);
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment file: " + path);
  return parse_experiment_spec(in);
}

}  // namespace wpcn
