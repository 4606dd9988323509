#pragma once

#include <functional>
#include <vector>

#include "unimodal/map.hpp"

namespace unimodal {

// Certified critical orbit c_0 = c, c_1, ... at one working precision,
// extended on demand. Sides and memberships raise Undecided when uncertain.
class Dynamics {
 public:
  Dynamics(const MapSpec& map, Precision prec);

  const MapSpec& map() const noexcept { return f_.map(); }
  Precision precision() const noexcept { return f_.precision(); }
  MapEvaluator& f() noexcept { return f_; }

  const CertifiedPoint& orbit(std::size_t i);
  Side orbit_side(std::size_t i);

 private:
  MapEvaluator f_;
  std::vector<CertifiedPoint> orbit_;
};

// Intervals whose membership is recorded for every sampled orbit point. The
// factory is re-run at each precision so the probes stay as sharp as the orbit.
using ProbeFactory = std::function<std::vector<Interval>(Dynamics&)>;

struct SampleOptions {
  PrecisionPolicy precision{};
  ProbeFactory probes;        // at most 8 intervals
};

struct OrbitSample {
  MapSpec map;
  Precision precision = 0;
  std::vector<Side> side;            // side[0] = C
  std::vector<double> approx;        // midpoints, for reports and sorting
  std::vector<std::uint8_t> member;  // bit p set iff c_i lies in probe p
  std::size_t probe_count = 0;

  std::size_t size() const noexcept { return side.size(); }
  bool in(std::size_t i, std::size_t probe) const { return (member[i] >> probe) & 1u; }
  std::vector<std::uint8_t> membership(std::size_t probe) const;
};

// c_0 .. c_n with all sides and probe memberships certified.
OrbitSample sample_critical_orbit(const MapSpec& map, std::size_t n, const SampleOptions& opts = {});

}  // namespace unimodal
