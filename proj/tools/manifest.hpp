#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace selberg::cli {

inline constexpr const char* kToolVersion = "selberg 0.1.0";

struct RunManifest {
  std::string command;
  std::string instance;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<std::string> outputs;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json complex_json(double re, double im);

// %.17g, with "-0" folded to "0" so equal values print identically.
std::string fmt(double v);

}  // namespace selberg::cli
