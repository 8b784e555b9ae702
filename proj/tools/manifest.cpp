#include "manifest.hpp"

#include <cstdio>

namespace selberg::cli {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["instance"] = instance;
  j["parameters"] = parameters;
  j["outputs"] = outputs;
  j["tool_version"] = kToolVersion;
  j["determinism"] = "no random input; sums are reduced in ascending order, so output does not depend on RIESZ_THREADS";
  return j;
}

nlohmann::ordered_json complex_json(double re, double im) { return nlohmann::ordered_json::array({re, im}); }

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace selberg::cli
