// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits are the constants below; `acceptance N` runs criterion N alone.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "unimodal/complexity.hpp"
#include "unimodal/kneading.hpp"
#include "unimodal/odometer.hpp"
#include "unimodal/presets.hpp"

using namespace unimodal;

namespace {

constexpr double kWildSeconds = 1.0;
constexpr double kRoundTripSeconds = 1.0;
constexpr double kFibonacciSeconds = 120.0;
constexpr double kSandwichSeconds = 600.0;
constexpr double kOdometerSeconds = 1.0;
constexpr double kNoLimit = 1e9;

constexpr long kNMax = 200;
constexpr long kTransitionBudget = 2048;
constexpr long kIterateBudget = 1'000'000;
constexpr std::size_t kSmallOrbit = 20'000;
constexpr std::size_t kLargeOrbit = 200'000;

constexpr double kLinearDrift = 0.05;   // relative change of min q(n)/n
constexpr double kEssentialDrift = 0.05;  // relative change of max M(n)/log n
constexpr long kSettleBy = 100;         // p constant on [n*, 200] with n* <= this
constexpr std::uint64_t kOdometerStates = 10'000;

struct Verdict {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  double limit;
  std::function<Verdict()> body;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string join(const std::vector<long>& xs, std::size_t limit = 12) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

template <class T>
bool starts_with(const std::vector<T>& xs, const std::vector<T>& prefix) {
  return xs.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), xs.begin());
}

// ---- shared runs ---------------------------------------------------------

struct Run {
  OrbitCoding coding;
  ComplexityCurve curve;
};

Run complexity_run(const std::string& name, const std::string& cover, std::size_t n_orbit) {
  Preset p = preset(name);
  SampleOptions opts;
  opts.precision = p.precision;
  opts.probes = [&](Dynamics& dyn) -> std::vector<Interval> {
    if (cover == "seed") return {seed_nice_interval(dyn).span};
    std::size_t k = std::stoul(cover.substr(cover.find(':') + 1));
    auto tower = renormalization_tower(dyn, k + 1, kIterateBudget);
    if (tower.size() <= k) throw Error(ErrorKind::renormalization_detected, "tower too short");
    return {tower[k].span};
  };
  OrbitSample sample = sample_critical_orbit(p.map, n_orbit, opts);
  Run run{code_orbit(sample.side, sample.membership(0)), {}};
  run.curve = complexity_curve(run.coding, {kNMax, kTransitionBudget});
  return run;
}

const Run& cached(const std::string& name, std::size_t n_orbit) {
  static std::map<std::pair<std::string, std::size_t>, Run> runs;
  auto key = std::make_pair(name, n_orbit);
  auto it = runs.find(key);
  if (it == runs.end()) it = runs.emplace(key, complexity_run(name, "seed", n_orbit)).first;
  return it->second;
}

double min_q_over_n(const ComplexityCurve& c) {
  double best = INFINITY;
  for (long n = 100; n <= kNMax; ++n) best = std::min(best, static_cast<double>(c.rows[n].q) / static_cast<double>(n));
  return best;
}

double max_M_over_log(const ComplexityCurve& c) {
  double best = 0;
  for (const auto& rec : c.essential)
    if (rec.n >= 2 && rec.n <= kNMax)
      best = std::max(best, static_cast<double>(rec.M) / std::log(static_cast<double>(rec.n)));
  return best;
}

// ---- criteria ------------------------------------------------------------

Verdict wild_combinatorics_exact() {
  WildCombinatorics w = wild_combinatorics(30);
  bool r_ok = starts_with(w.r, {3, 5, 10, 15, 30, 45, 90});
  bool t_ok = starts_with(w.t, {2, 5, 5, 15, 15, 45, 45});
  bool merged_ok = starts_with(w.merged_cutting_times, {5, 8, 10, 15, 25, 30, 45, 75, 90});
  std::vector<long> Q = kneading_map_from_S(wild_cutting_times(w));
  auto k0 = detect_wild_offset(wild_cutting_times(w), w);
  auto start = detect_closed_form_start(Q, k0.value_or(2));
  bool bruin = start && bruin_criterion(Q, *start, 5).empty();
  return {r_ok && t_ok && merged_ok && bruin,
          "r " + join(w.r, 7) + ", t " + join(w.t, 7) + ", merged " + join(w.merged_cutting_times, 9) +
              ", lock-in k=" + (start ? std::to_string(*start) : "none") + ", Q bounds " +
              (bruin ? "hold" : "fail") + " over " + std::to_string(Q.size()) + " entries"};
}

Verdict kneading_round_trip() {
  std::mt19937_64 rng(20240613);
  int good = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t len = 1 + rng() % 40;
    std::vector<long> Q{0};
    for (std::size_t j = 1; j <= len; ++j) Q.push_back(static_cast<long>(rng() % j));
    good += kneading_map_from_S(S_from_Q(Q, len)) == Q;
  }
  return {good == 50, std::to_string(good) + "/50 prefixes round-trip"};
}

std::string sides(const SpecialCombinatoricsReport& rep) {
  std::string out = rep.holds ? "true" : "false";
  out += " (sides per level:";
  for (const auto& l : rep.levels) out += " " + std::to_string(l.sides_hit);
  return out + ")";
}

Verdict fibonacci_realization() {
  const std::vector<long> target{1, 2, 3, 5, 8, 13, 21, 34};
  ParameterEnclosure e = parameter_bisection(2.0, BisectionTarget::from_S(target), 1e-10);
  KneadingData kd = cutting_times(e.witness, target.size() - 1);
  bool reproduced = kd.S == target;
  std::vector<long> r;
  bool in_S = with_precision(PrecisionPolicy{}, [&](Precision prec) {
    Dynamics dyn(e.witness, prec);
    r.clear();
    bool all = true;
    for (const auto& level : principal_nest(dyn, 6, kIterateBudget)) {
      r.push_back(level.return_time);
      all = all && std::binary_search(target.begin(), target.end(), level.return_time);
    }
    return all;
  });
  // Past S_K the orbit at the returned parameter is no longer pinned by the
  // target and is chaotic, so the sample needs a higher cap than the default.
  const PrecisionPolicy wide{64, 1 << 16};
  SpecialCombinatoricsReport sc = special_combinatorics_check(e.witness, 6, kSmallOrbit, kIterateBudget, wide);
  SpecialCombinatoricsReport pinned =
      special_combinatorics_check(e.witness, 6, static_cast<std::size_t>(target.back()) + 1, kIterateBudget, wide);
  Preset deep = preset("fibonacci");
  SpecialCombinatoricsReport reference =
      special_combinatorics_check(deep.map, 6, kSmallOrbit, kIterateBudget, deep.precision);
  KneadingData next = cutting_times(e.witness, target.size(), CuttingTimeOptions{});
  return {reproduced && in_S && sc.applicable && sc.holds,
          "a = " + e.witness.a + ", S " + join(kd.S) + " (next " + std::to_string(next.S.back()) +
              "), nest returns " + join(r) + ", special combinatorics to depth 6: " + sides(sc) +
              " on 2e4 points, " + sides(pinned) + " on c_1..c_" + std::to_string(target.back()) +
              ", deep preset witness " + sides(reference)};
}

Verdict sandwich() {
  const Run& run = cached("fibonacci", kSmallOrbit);
  SandwichReport sw = sandwich_check(run.curve);
  return {sw.violations.empty() && run.curve.children_complete_Y,
          std::to_string(sw.violations.size()) + " violations, n <= " + std::to_string(kNMax) +
              ", upper bound checked from n=" + std::to_string(sw.upper_from) +
              (sw.notice.empty() ? "" : ", " + sw.notice)};
}

Verdict linear_lower_bound() {
  double small = min_q_over_n(cached("fibonacci", kSmallOrbit).curve);
  double large = min_q_over_n(cached("fibonacci", kLargeOrbit).curve);
  double drift = std::fabs(large - small) / small;
  return {small > 0 && drift < kLinearDrift,
          "min q(n)/n on [100, 200] = " + fmt(small) + " (2e4), " + fmt(large) + " (2e5), change " + fmt(drift)};
}

Verdict nlogn_envelope() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"fibonacci", "wild"}) {
    const ComplexityCurve& c = cached(name, kSmallOrbit).curve;
    double prev = INFINITY, first = 0;
    bool monotone = true;
    for (long lo = 50; lo <= kNMax; lo += 10) {
      double sup = 0;
      for (long n = lo; n <= kNMax; ++n)
        sup = std::max(sup, static_cast<double>(c.rows[n].p) / (static_cast<double>(n) * std::log(static_cast<double>(n))));
      if (lo == 50) first = sup;
      monotone = monotone && std::isfinite(sup) && sup <= prev;
      prev = sup;
    }
    std::vector<std::pair<long, double>> series;
    for (long n = 10; n <= kNMax; ++n) series.emplace_back(n, static_cast<double>(c.rows[n].p));
    GrowthReport g = growth_classify(series);
    ok = ok && monotone && g.best != GrowthModel::quadratic;
    detail += std::string(detail.empty() ? "" : "; ") + name + ": sup p/(n log n) on [50, 200] = " + fmt(first) +
              (monotone ? ", non-increasing" : ", NOT non-increasing") + ", fit " + to_string(g.best);
  }
  return {ok, detail};
}

Verdict adding_machine_bounded() {
  std::string detail;
  bool ok = true;
  for (const char* cover : {"seed", "renorm:1", "renorm:2"}) {
    Run run = complexity_run("feigenbaum", cover, kSmallOrbit);
    long settle = kNMax;
    while (settle > 1 && run.curve.rows[settle - 1].p == run.curve.rows[kNMax].p) --settle;
    ok = ok && settle <= kSettleBy;
    detail += std::string(detail.empty() ? "" : "; ") + cover + ": p = " + std::to_string(run.curve.rows[kNMax].p) +
              " from n*=" + std::to_string(settle);
  }
  return {ok, detail};
}

Verdict essential_order_growth() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"fibonacci", "wild"}) {
    const ComplexityCurve& c = cached(name, kSmallOrbit).curve;
    std::size_t bad = 0;
    for (const auto& rec : c.essential) {
      EssentialOrderCheck chk = check_essential_order(rec);
      bad += !(chk.monotone && chk.growth);
    }
    double small = max_M_over_log(c);
    double large = max_M_over_log(cached(name, kLargeOrbit).curve);
    double drift = std::fabs(large - small) / small;
    ok = ok && bad == 0 && !c.essential.empty() && drift <= kEssentialDrift;
    detail += std::string(detail.empty() ? "" : "; ") + name + ": " + std::to_string(c.essential.size()) +
              " records, " + std::to_string(bad) + " failing, max M/log n = " + fmt(small) + " (2e4), " + fmt(large) +
              " (2e5)";
  }
  return {ok, detail};
}

// Every ordered tuple of digit bases p_i >= 2 with product <= kOdometerStates.
void sweep(std::vector<int>& alpha, std::uint64_t product, std::uint64_t& tuples, std::uint64_t& failures) {
  if (!alpha.empty()) {
    OdometerBase base{alpha};
    ++tuples;
    if (!is_bijection(base) || orbit_period(base) != product) ++failures;
  }
  for (int p = 2; product * static_cast<std::uint64_t>(p) <= kOdometerStates; ++p) {
    alpha.push_back(p);
    sweep(alpha, product * static_cast<std::uint64_t>(p), tuples, failures);
    alpha.pop_back();
  }
}

Verdict odometer_exact() {
  bool explicit_ok = orbit_period({{2, 3}}) == 6 && orbit_period({{2, 2, 2, 2}}) == 16 &&
                     orbit_period({{2, 3, 2}}) == 12 && is_bijection({{2, 3}}) && is_bijection({{2, 2, 2, 2}});
  std::vector<int> alpha;
  std::uint64_t tuples = 0, failures = 0;
  sweep(alpha, 1, tuples, failures);
  return {explicit_ok && failures == 0, "(2,3) -> 6, (2,2,2,2) -> 16, (2,3,2) -> 12; " + std::to_string(tuples) +
                                            " bases with product <= 10^4, " + std::to_string(failures) + " failures"};
}

Verdict cyclic_covers() {
  Preset p = preset("wild");
  std::vector<CoverIntervals> levels;
  SampleOptions opts;
  opts.precision = p.precision;
  opts.probes = [&](Dynamics& dyn) {
    levels = nest_cover_intervals(dyn, 2, kIterateBudget);
    std::vector<Interval> probes;
    for (const auto& L : levels)
      for (const Interval* iv : {&L.T, &L.T_prime, &L.Q, &L.Q_hat}) probes.push_back(*iv);
    return probes;
  };
  OrbitSample sample = sample_critical_orbit(p.map, kSmallOrbit, opts);
  check_shrinking(levels);
  CyclicCover c1 = build_cyclic_cover(levels[0], sample, {0, 1, 2, 3});
  CyclicCover c2 = build_cyclic_cover(levels[1], sample, {4, 5, 6, 7});
  bool disjoint = true;
  for (const CyclicCover* c : {&c1, &c2}) {
    std::vector<int> owner(sample.size(), -1);
    for (std::size_t j = 0; j < c->sets.size(); ++j)
      for (std::size_t i : c->sets[j]) {
        disjoint = disjoint && owner[i] == -1;
        owner[i] = static_cast<int>(j);
      }
  }
  bool ok = is_cyclic(c1) && is_cyclic(c2) && disjoint && refinement_check(c1, c2);
  return {ok, "(k, l) = (" + std::to_string(c1.k) + ", " + std::to_string(c1.l) + "), (" + std::to_string(c2.k) +
                  ", " + std::to_string(c2.l) + "), cyclic, " + (disjoint ? "disjoint" : "overlapping") +
                  ", refinement " + (refinement_check(c1, c2) ? "holds" : "fails") + ", " +
                  base_data_line(base_data({c1, c2}))};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

Verdict determinism() {
  std::vector<RunConfig> configs;
  for (const char* name : {"fibonacci", "wild", "feigenbaum"}) {
    RunConfig c;
    c.command = "complexity";
    c.preset = name;
    c.n_orbit = static_cast<long>(kSmallOrbit);
    configs.push_back(c);
  }
  RunConfig wild;
  wild.command = "wild-verify";
  wild.preset = "wild";
  configs.push_back(wild);
  RunConfig odo;
  odo.command = "odometer";
  odo.alpha = {2, 3, 2};
  configs.push_back(odo);

  int identical = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string bytes[2];
    for (auto& b : bytes) {
      RunConfig c = configs[i];
      c.out = "acceptance_run" + std::to_string(i);
      std::ostringstream sink;
      cli::run(c, sink);
      b = c.command == "complexity" ? slurp(c.out + ".csv") : slurp(c.out);
    }
    identical += !bytes[0].empty() && bytes[0] == bytes[1];
    for (const char* ext : {"", ".csv", ".json", ".report.txt"})
      std::remove(("acceptance_run" + std::to_string(i) + ext).c_str());
  }
  return {identical == static_cast<int>(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " commands byte-identical on rerun"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, kWildSeconds, wild_combinatorics_exact},
      {2, kRoundTripSeconds, kneading_round_trip},
      {3, kFibonacciSeconds, fibonacci_realization},
      {4, kSandwichSeconds, sandwich},
      {5, kNoLimit, linear_lower_bound},
      {6, kNoLimit, nlogn_envelope},
      {7, kNoLimit, adding_machine_bounded},
      {8, kNoLimit, essential_order_growth},
      {9, kOdometerSeconds, odometer_exact},
      {10, kNoLimit, cyclic_covers},
      {11, kNoLimit, determinism},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = seconds <= c.limit;
    bool pass = v.ok && in_time;
    failed += !pass;
    std::string timing = fmt(seconds) + " s";
    if (c.limit < kNoLimit) timing += (in_time ? " <= " : " > ") + fmt(c.limit) + " s";
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " [" << timing << "] " << v.detail
              << std::endl;
  }
  return failed ? 1 : 0;
}
