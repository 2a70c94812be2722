#include "latlab/manifest.hpp"

#include <json.hpp>

namespace latlab {

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["config"] = config;
  j["derived"] = derived;
  j["wall_time_s"] = wall_time_s;
  return j.dump(2);
}

}  // namespace latlab
