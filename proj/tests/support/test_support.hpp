#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerrgcs/states.hpp"

#ifndef KERRGCS_FIXTURE_DIR
#error "KERRGCS_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace kerrgcs::fixtures {

inline std::string fixture_path(const std::string& name) { return std::string(KERRGCS_FIXTURE_DIR) + "/" + name; }

/// Seed recorded under `key` in fixtures/property_seeds.txt.
inline std::uint64_t fixture_seed(const std::string& key) {
  std::ifstream in(fixture_path("property_seeds.txt"));
  if (!in) throw std::runtime_error("cannot open property_seeds.txt");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k == key) return std::stoull(line.substr(eq + 1));
  }
  throw std::runtime_error("no seed named " + key);
}

inline std::vector<cplx> random_amplitudes(std::mt19937_64& rng, std::size_t M) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> v(M);
  for (auto& z : v) z = {gauss(rng), gauss(rng)};
  return v;
}

inline GcsState random_gcs(std::mt19937_64& rng, std::uint64_t S, std::size_t M) {
  return GcsState::normalized(S, random_amplitudes(rng, M));
}

}  // namespace kerrgcs::fixtures
