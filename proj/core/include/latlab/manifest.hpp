#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace latlab {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility record emitted once per CLI run. Everything except
// wall_time_s is a pure function of the config.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;   // echoed flags
  std::map<std::string, std::string> derived;  // run constants (c, lambda, ...)
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;

  std::string to_json() const;
};

}  // namespace latlab
