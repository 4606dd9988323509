#include "unimodal/orbit.hpp"

namespace unimodal {

Dynamics::Dynamics(const MapSpec& map, Precision prec) : f_(map, prec) {
  orbit_.push_back(critical_point(prec));
}

const CertifiedPoint& Dynamics::orbit(std::size_t i) {
  while (orbit_.size() <= i) {
    CertifiedPoint next(f_.precision());
    f_.apply(orbit_.back(), next);
    orbit_.push_back(std::move(next));
  }
  return orbit_[i];
}

Side Dynamics::orbit_side(std::size_t i) { return MapEvaluator::side(orbit(i)); }

std::vector<std::uint8_t> OrbitSample::membership(std::size_t probe) const {
  std::vector<std::uint8_t> out(member.size());
  for (std::size_t i = 0; i < member.size(); ++i) out[i] = in(i, probe) ? 1 : 0;
  return out;
}

OrbitSample sample_critical_orbit(const MapSpec& map, std::size_t n, const SampleOptions& opts) {
  map.validate();
  return with_precision(opts.precision, [&](Precision prec) {
    Dynamics dyn(map, prec);
    std::vector<Interval> probes;
    if (opts.probes) probes = opts.probes(dyn);
    if (probes.size() > 8) throw Error(ErrorKind::invalid_argument, "at most 8 probe intervals");

    OrbitSample s;
    s.map = map;
    s.precision = prec;
    s.probe_count = probes.size();
    s.side.resize(n + 1);
    s.approx.resize(n + 1);
    s.member.assign(n + 1, 0);
    MapEvaluator& f = dyn.f();
    CertifiedPoint x = critical_point(prec);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i > 0) {
        f.apply(x, x);
        Side side = MapEvaluator::side(x);
        if (side == Side::C)
          throw Error(ErrorKind::superattracting,
                      "f^" + std::to_string(i) + "(c) = c: superattracting parameter");
        s.side[i] = side;
      } else {
        s.side[0] = Side::C;
      }
      s.approx[i] = x.midpoint();
      for (std::size_t p = 0; p < probes.size(); ++p)
        if (probes[p].contains(x)) s.member[i] |= static_cast<std::uint8_t>(1u << p);
    }
    return s;
  });
}

}  // namespace unimodal
