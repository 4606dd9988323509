#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "unimodal/complexity.hpp"
#include "unimodal/kneading.hpp"
#include "unimodal/nice.hpp"
#include "unimodal/odometer.hpp"
#include "unimodal/presets.hpp"

namespace unimodal::cli {

namespace {

// A preset raises the floor to what its witness needs.
PrecisionPolicy policy_of(const RunConfig& cfg) {
  PrecisionPolicy policy{static_cast<Precision>(cfg.precision_start), static_cast<Precision>(cfg.precision_max)};
  if (cfg.param.empty() && !cfg.preset.empty()) {
    Preset p = preset(cfg.preset);
    policy.start = std::max(policy.start, p.precision.start);
    policy.cap = std::max(policy.cap, p.precision.cap);
  }
  return policy;
}

MapSpec resolve_map(const RunConfig& cfg) {
  if (!cfg.param.empty()) {
    MapSpec m{cfg.param, cfg.ell};
    try {
      m.validate();
      m.parameter(64);
    } catch (const Error& e) {
      throw Error(ErrorKind::config, e.what());
    }
    return m;
  }
  if (cfg.preset.empty()) throw Error(ErrorKind::config, "either param or preset is required");
  Preset p = preset(cfg.preset);
  if (p.target_S.empty() || cfg.ell == p.map.ell) {
    p.map.ell = cfg.ell;
    return p.map;
  }
  // The cached witness belongs to ell = 2; other exponents need a fresh search.
  BisectionOptions opts;
  opts.precision = p.precision;
  return parameter_bisection(cfg.ell, BisectionTarget::from_S(p.target_S), cfg.tol, opts).witness;
}

NiceInterval resolve_cover(Dynamics& dyn, const RunConfig& cfg) {
  if (cfg.cover == "seed") return seed_nice_interval(dyn);
  auto level = [&](std::size_t prefix) {
    try {
      return std::stol(cfg.cover.substr(prefix));
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "bad cover level in '" + cfg.cover + "'");
    }
  };
  if (cfg.cover.rfind("nest:", 0) == 0) {
    long k = level(5);
    if (k == 0) return seed_nice_interval(dyn);
    auto nest = principal_nest(dyn, static_cast<std::size_t>(k), cfg.budget_iterate);
    return nest.back().central_domain;
  }
  if (cfg.cover.rfind("renorm:", 0) == 0) {
    long k = level(7);
    auto tower = renormalization_tower(dyn, static_cast<std::size_t>(k) + 1, cfg.budget_iterate);
    if (tower.size() <= static_cast<std::size_t>(k))
      throw Error(ErrorKind::not_found, "only " + std::to_string(tower.size()) + " renormalization levels found");
    return tower[static_cast<std::size_t>(k)];
  }
  throw Error(ErrorKind::config, "unknown cover '" + cfg.cover + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::config, "cannot write " + path);
  f << content;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

}  // namespace

int run_kneading(const RunConfig& cfg, std::ostream& out) {
  MapSpec m = resolve_map(cfg);
  CuttingTimeOptions opts;
  opts.iterate_budget = cfg.budget_iterate;
  opts.precision = policy_of(cfg);
  KneadingData kd = cutting_times_partial(m, static_cast<std::size_t>(cfg.cutting_times), opts);
  std::string text = "a: " + m.a + "\nell: " + fmt(m.ell) + "\n" + kd.to_text();
  if (cfg.out.empty()) out << text;
  else write_file(cfg.out, text);
  return kd.complete ? 0 : exit_code(ErrorKind::horizon_exceeded);
}

int run_bisect(const RunConfig& cfg, std::ostream& out) {
  std::vector<long> S = cfg.target_S;
  const PrecisionPolicy policy = policy_of(cfg);
  if (S.empty()) {
    if (cfg.preset.empty()) throw Error(ErrorKind::config, "bisect needs target_S or a preset");
    Preset p = preset(cfg.preset);
    if (p.target_S.empty()) throw Error(ErrorKind::config, "preset " + p.name + " is an exact parameter");
    S = p.target_S;
  }
  BisectionOptions opts;
  opts.precision = policy;
  ParameterEnclosure e = parameter_bisection(cfg.ell, BisectionTarget::from_S(S), cfg.tol, opts);
  std::ostringstream os;
  os << "lower: " << e.lower << "\nupper: " << e.upper << "\nwitness: " << e.witness.a
     << "\napprox: " << fmt(e.witness.approx_parameter()) << "\nsteps: " << e.steps
     << "\nprecision: " << e.precision << "\n";
  if (cfg.out.empty()) out << os.str();
  else write_file(cfg.out, os.str());
  return 0;
}

namespace {

std::string complexity_report(const ComplexityCurve& curve, const SandwichReport& sw, long n_max) {
  std::ostringstream os;
  os.precision(8);
  os << "map\ta=" << curve.meta.map.a << "\tell=" << curve.meta.map.ell << '\n';
  os << "cover\t" << curve.meta.cover << "\telements=" << curve.meta.elements
     << "\tdropped=" << curve.meta.dropped << '\n';
  os << "children of Y\tmax transition time=" << curve.max_child_time_Y
     << "\tcomplete=" << (curve.children_complete_Y ? "yes" : "no") << '\n';
  os << "sandwich\tviolations=" << sw.violations.size() << "\tupper bound from n=" << sw.upper_from << '\n';
  for (const auto& v : sw.violations)
    os << "violation\tn=" << v.n << "\tinequality " << v.inequality << '\t' << v.lhs << " > " << v.rhs << '\n';
  if (!sw.notice.empty()) os << "notice\t" << sw.notice << '\n';

  std::vector<std::pair<long, double>> series;
  for (const auto& r : curve.rows)
    if (r.n >= 1) series.emplace_back(r.n, static_cast<double>(r.p));
  try {
    os << growth_classify(series).to_text();
  } catch (const Error& e) {
    os << "fit\tunavailable: " << e.what() << '\n';
  }

  double sup_p = 0, inf_p = std::numeric_limits<double>::infinity(), inf_q = inf_p;
  for (const auto& r : curve.rows) {
    double n = static_cast<double>(r.n);
    if (r.n >= 50) sup_p = std::max(sup_p, static_cast<double>(r.p) / (n * std::log(n)));
    if (2 * r.n >= n_max && r.n >= 1) inf_p = std::min(inf_p, static_cast<double>(r.p_next) / n);
    if (r.n >= 100) inf_q = std::min(inf_q, static_cast<double>(r.q) / n);
  }
  if (n_max >= 50) os << "sup p(n)/(n log n) over [50, " << n_max << "]\t" << sup_p << '\n';
  os << "inf p(n+1)/n over [" << (n_max + 1) / 2 << ", " << n_max << "]\t" << inf_p << '\n';
  if (n_max >= 100) os << "inf q(n)/n over [100, " << n_max << "]\t" << inf_q << '\n';

  long star = n_max;
  while (star > 1 && curve.rows[static_cast<std::size_t>(star - 1)].p == curve.rows.back().p) --star;
  os << "p constant from n*\t" << star << "\tvalue=" << curve.rows.back().p << '\n';

  std::size_t monotone = 0, growth = 0, fib = 0;
  double max_M = 0, min_gap = std::numeric_limits<double>::infinity();
  for (const auto& rec : curve.essential) {
    auto chk = check_essential_order(rec);
    monotone += chk.monotone;
    growth += chk.growth;
    fib += chk.fibonacci;
    if (rec.n >= 2) max_M = std::max(max_M, static_cast<double>(rec.M) / std::log(static_cast<double>(rec.n)));
  }
  for (const auto& r : curve.rows)
    if (r.second_child) min_gap = std::min(min_gap, static_cast<double>(*r.second_child) / static_cast<double>(r.n));
  os << "essential orders\trecords=" << curve.essential.size() << "\tmonotone=" << monotone
     << "\tgrowth=" << growth << "\tfibonacci=" << fib << '\n';
  os << "max M(n)/log n\t" << max_M << '\n';
  if (std::isfinite(min_gap)) os << "min second child time/n\t" << min_gap << '\n';
  return os.str();
}

}  // namespace

int run_complexity(const RunConfig& cfg, std::ostream& out) {
  MapSpec m = resolve_map(cfg);
  SampleOptions opts;
  opts.precision = policy_of(cfg);
  opts.probes = [&](Dynamics& dyn) { return std::vector<Interval>{resolve_cover(dyn, cfg).span}; };
  OrbitSample sample = sample_critical_orbit(m, static_cast<std::size_t>(cfg.n_orbit), opts);
  OrbitCoding coding = code_orbit(sample.side, sample.membership(0));

  ComplexityCurve curve = complexity_curve(coding, {cfg.n_max, cfg.budget_transition});
  curve.meta.map = m;
  curve.meta.preset = cfg.preset;
  curve.meta.cover = cfg.cover;
  curve.meta.n_orbit = cfg.n_orbit;
  curve.meta.iterate_budget = cfg.budget_iterate;
  curve.meta.precision_cap = static_cast<Precision>(cfg.precision_max);
  curve.meta.precision_used = sample.precision;
  SandwichReport sw = sandwich_check(curve);
  std::string report = complexity_report(curve, sw, cfg.n_max);

  if (cfg.out.empty()) {
    out << curve.to_csv() << '\n' << report;
  } else {
    write_file(cfg.out + ".csv", curve.to_csv());
    write_file(cfg.out + ".json", curve.sidecar_json());
    write_file(cfg.out + ".report.txt", report);
  }
  return 0;
}

int run_nest(const RunConfig& cfg, std::ostream& out) {
  MapSpec m = resolve_map(cfg);
  std::string text = with_precision(policy_of(cfg), [&](Precision prec) {
    Dynamics dyn(m, prec);
    auto nest = principal_nest(dyn, static_cast<std::size_t>(cfg.depth), cfg.budget_iterate);
    std::ostringstream os;
    os << "k\treturn\tkind\theight\tinterval\n";
    for (std::size_t k = 0; k < nest.size(); ++k) {
      const auto& L = nest[k];
      os << k << '\t' << L.return_time << '\t' << (L.kind == ReturnKind::central ? "central" : "non-central") << '\t'
         << (L.height == Height::high ? "high" : "low") << '\t' << L.interval.span.to_string(12) << '\n';
    }
    return os.str();
  });
  if (cfg.out.empty()) out << text;
  else write_file(cfg.out, text);
  return 0;
}

namespace {

struct CheckLog {
  std::ostringstream os;
  bool all = true;
  void record(const std::string& name, bool ok, const std::string& detail = "") {
    all = all && ok;
    os << "check " << name << ": " << (ok ? "pass" : "fail");
    if (!detail.empty()) os << " (" << detail << ')';
    os << '\n';
  }
};

std::string join(const std::vector<long>& xs, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

void wild_geometry(const MapSpec& m, const RunConfig& cfg, const WildCombinatorics& w, CheckLog& log) {
  const std::size_t depth = static_cast<std::size_t>(cfg.depth);
  with_precision(policy_of(cfg), [&](Precision prec) {
    Dynamics dyn(m, prec);
    NiceInterval I0 = seed_nice_interval(dyn);
    CertifiedPoint c(kCritical, prec);
    bool first = compare(dyn.orbit(1), c) == Order::greater && compare(dyn.orbit(2), I0.span.left) == Order::less &&
                 I0.span.contains(dyn.orbit(3)) && I0.span.contains(dyn.orbit(5));
    log.record("orbit of c: c1 > c, c2 < q^, c3 and c5 in I_0", first);

    auto nest = principal_nest(dyn, depth, cfg.budget_iterate);
    std::vector<long> r_seen, t_seen;
    bool disjoint = true, high = true;
    for (const auto& L : nest) {
      r_seen.push_back(L.return_time);
      std::size_t back = static_cast<std::size_t>(L.return_time);
      long t = first_entry_index(dyn, back, L.interval.span, cfg.budget_iterate);
      t_seen.push_back(t);
      Interval J = entry_domain_of_orbit(dyn, back, L.interval.span, cfg.budget_iterate);
      // Domains of a nice interval are equal or disjoint, and neighbours can share an
      // endpoint, so c outside J is the decidable form of the test.
      disjoint = disjoint && (compare(c, J.left) != Order::greater || compare(J.right, c) != Order::greater);
      high = high && L.height == Height::high;
    }
    std::vector<long> r_expect(w.r.begin(), w.r.begin() + static_cast<long>(std::min(depth, w.r.size())));
    std::vector<long> t_expect(w.t.begin(), w.t.begin() + static_cast<long>(std::min(depth, w.t.size())));
    log.record("nest return times equal r_k", r_seen == r_expect, "seen " + join(r_seen, depth));
    log.record("return times of R(c) equal t_k", t_seen == t_expect, "seen " + join(t_seen, depth));
    log.record("I_{k+1} and J_{k+1} disjoint", disjoint);
    log.record("R(I_{k+1}) covers I_{k+1}", high);
    return 0;
  });

  // Cyclic covers for T_n = I_{2n}, n = 1, 2.
  SampleOptions opts;
  opts.precision = policy_of(cfg);
  std::vector<CoverIntervals> levels;
  opts.probes = [&](Dynamics& dyn) {
    levels = nest_cover_intervals(dyn, 2, cfg.budget_iterate);
    std::vector<Interval> probes;
    for (const auto& L : levels)
      for (const Interval* iv : {&L.T, &L.T_prime, &L.Q, &L.Q_hat}) probes.push_back(*iv);
    return probes;
  };
  OrbitSample sample = sample_critical_orbit(m, static_cast<std::size_t>(cfg.n_orbit), opts);
  std::vector<CyclicCover> covers;
  try {
    check_shrinking(levels);
    for (std::size_t n = 0; n < levels.size(); ++n)
      covers.push_back(build_cyclic_cover(levels[n], sample, {4 * n, 4 * n + 1, 4 * n + 2, 4 * n + 3}));
    log.record("cover hypotheses (i)-(iv)", true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::hypothesis_violation) throw;
    log.record("cover hypotheses (i)-(iv)", false, e.what());
    return;
  }
  for (std::size_t n = 0; n < covers.size(); ++n) {
    log.record("cover " + std::to_string(n + 1) + " cyclic", is_cyclic(covers[n]),
               "k=" + std::to_string(covers[n].k) + " l=" + std::to_string(covers[n].l));
    log.os << covers[n].to_text(sample);
  }
  log.record("cover 2 refines cover 1", refinement_check(covers[0], covers[1]));
  double d1 = *std::max_element(covers[0].diameter.begin(), covers[0].diameter.end());
  double d2 = *std::max_element(covers[1].diameter.begin(), covers[1].diameter.end());
  log.record("max diameter decreases", d2 < d1, fmt(d1) + " -> " + fmt(d2));
  log.os << base_data_line(base_data(covers)) << '\n';
}

}  // namespace

int run_wild_verify(const RunConfig& cfg, std::ostream& out) {
  CheckLog log;
  const std::size_t K = static_cast<std::size_t>(cfg.cutting_times);
  WildCombinatorics w = wild_combinatorics(K, cfg.r0, cfg.t0);
  log.os << "r: " << join(w.r, 12) << "\nt: " << join(w.t, 12)
         << "\nmerged: " << join(w.merged_cutting_times, 12) << '\n';

  std::vector<long> S = wild_cutting_times(w);
  std::vector<long> Q;
  try {
    Q = kneading_map_from_S(S);
    log.record("cutting times admissible", true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::not_a_cutting_sequence) throw;
    log.record("cutting times admissible", false, e.what());
  }
  if (!Q.empty()) {
    WildCombinatorics reference = wild_combinatorics(K);
    auto k0 = detect_wild_offset(S, reference);
    log.record("merged pattern r_1, r_1 + r_0, r_2, r_3, ...", k0.has_value(),
               k0 ? "k0=" + std::to_string(*k0) : "no lock-in");
    auto start = detect_closed_form_start(Q, k0.value_or(2));
    log.record("kneading map closed form", start.has_value(),
               start ? "from k=" + std::to_string(*start) : "not reached");
    long k1 = start.value_or(static_cast<long>(Q.size()));
    auto fails = bruin_criterion(Q, k1, 5);
    std::string detail = "N=5 from k=" + std::to_string(k1);
    if (!fails.empty())
      detail += ", first failure k=" + std::to_string(fails.front().k) + " inequality " +
                std::to_string(fails.front().inequality);
    log.record("Q(k+1) >= Q(Q(k)) + 1 and k - Q(k) <= N", fails.empty() && start.has_value(), detail);
  }

  if (cfg.bisect || !cfg.param.empty() || !cfg.preset.empty()) {
    MapSpec m;
    if (cfg.bisect) {
      BisectionOptions opts;
      opts.precision = policy_of(cfg);
      m = parameter_bisection(cfg.ell, BisectionTarget::from_S(S), cfg.tol, opts).witness;
      log.os << "parameter: " << m.a << '\n';
    } else {
      m = resolve_map(cfg);
    }
    wild_geometry(m, cfg, w, log);
  }
  log.os << "result: " << (log.all ? "pass" : "fail") << '\n';
  if (cfg.out.empty()) out << log.os.str();
  else write_file(cfg.out, log.os.str());
  return log.all ? 0 : exit_code(ErrorKind::hypothesis_violation);
}

int run_odometer(const RunConfig& cfg, std::ostream& out) {
  OdometerBase base{std::vector<int>(cfg.alpha.begin(), cfg.alpha.end())};
  try {
    base.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::config, e.what());
  }
  std::ostringstream os;
  std::uint64_t states = base.state_count();
  std::uint64_t period = orbit_period(base);
  bool bijective = is_bijection(base);
  OdometerState top{std::vector<int>(base.alpha.size())};
  for (std::size_t i = 0; i < top.digits.size(); ++i) top.digits[i] = base.alpha[i] - 1;
  os << "alpha:";
  for (int p : base.alpha) os << ' ' << p;
  os << "\nstates: " << states << "\nperiod: " << period << "\nbijection: " << (bijective ? "yes" : "no")
     << "\nstep " << to_string(top) << " -> " << to_string(step(base, top)) << '\n';
  bool ok = bijective && period == states;
  os << "result: " << (ok ? "pass" : "fail") << '\n';
  if (cfg.out.empty()) out << os.str();
  else write_file(cfg.out, os.str());
  return ok ? 0 : exit_code(ErrorKind::hypothesis_violation);
}

int run(const RunConfig& cfg, std::ostream& out) {
  try {
    cfg.validate();
    if (cfg.command == "kneading") return run_kneading(cfg, out);
    if (cfg.command == "bisect") return run_bisect(cfg, out);
    if (cfg.command == "complexity") return run_complexity(cfg, out);
    if (cfg.command == "nest") return run_nest(cfg, out);
    if (cfg.command == "wild-verify") return run_wild_verify(cfg, out);
    if (cfg.command == "odometer") return run_odometer(cfg, out);
    throw Error(ErrorKind::config, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace unimodal::cli
