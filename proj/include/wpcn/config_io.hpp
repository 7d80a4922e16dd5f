#pragma once

#include <iosfwd>
#include <string>

#include "wpcn/experiments.hpp"
#include "wpcn/types.hpp"

namespace wpcn {

// Flat key=value files: one pair per line, '#' comments, blank lines ignored.
// Keys are named after the SystemConfig fields; powers may instead be given
// in dBm through `_dbm` suffixed keys (p_dl_max_dbm, sigma2_ul_dbm, p_th_dbm).
// Experiment files add sweep_variable, sweep_values, schemes (comma lists),
// n_realizations and seed0 on top of the scenario keys.

SystemConfig parse_system_config(std::istream& in);
SystemConfig load_system_config(const std::string& path);

ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec load_experiment_spec(const std::string& path);

}  // namespace wpcn
