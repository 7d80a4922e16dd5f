#pragma once

#include <cstdint>
#include <string>

#include "wpcn/engine.hpp"
#include "wpcn/types.hpp"

namespace wpcn {

/// Self-contained solve artifact: the channel realization is reproducible
/// from (config, seed), so only decisions and results are stored.
struct SolveBundle {
  SystemConfig config;
  std::uint64_t seed = 0;
  Allocation allocation;
  SolveReport report;
};

void save_bundle(const std::string& path, const SolveBundle& bundle);
SolveBundle load_bundle(const std::string& path);

}  // namespace wpcn
