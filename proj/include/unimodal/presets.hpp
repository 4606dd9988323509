#pragma once

#include <string>
#include <vector>

#include "unimodal/kneading.hpp"

namespace unimodal {

// Named entry points. A preset either fixes the parameter exactly or names a
// cutting-time target together with a cached witness that realizes it.
struct Preset {
  std::string name;
  MapSpec map;                 // cached witness or exact parameter
  std::vector<long> target_S;  // empty for exact parameters
  PrecisionPolicy precision{};
  std::string summary;
};

const std::vector<std::string>& preset_names();
// Throws config for an unknown name.
Preset preset(const std::string& name);

// Certifies that the cached witness realizes the target prefix.
bool verify_preset(const Preset& p);
// Recomputes the witness by bisection, ignoring the cache.
ParameterEnclosure recompute_preset(const Preset& p, int max_steps = 4096);

}  // namespace unimodal
