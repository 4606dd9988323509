#include "unimodal/complexity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace unimodal {

NiceCover build_nice_cover(Dynamics& dyn, const NiceInterval& Y, const OrbitSample& sample,
                           std::size_t probe, std::size_t geometry_horizon) {
  if (probe >= sample.probe_count) throw Error(ErrorKind::invalid_argument, "no such probe in the sample");
  NiceCover cover{Y, code_orbit(sample.side, sample.membership(probe)), {}};
  for (const auto& e : cover.coding.elements) {
    if (e.entry_time == 0) {
      cover.spans.emplace_back(Y.span);
    } else if (e.first_index + static_cast<std::size_t>(e.entry_time) < geometry_horizon) {
      cover.spans.emplace_back(
          pullback_chain(dyn, e.first_index, static_cast<std::size_t>(e.entry_time), Y.span).intervals[0]);
    } else {
      cover.spans.emplace_back(std::nullopt);
    }
  }
  return cover;
}

std::size_t q_of_n(const OrbitCoding& coding, std::size_t n) {
  ComponentLevels levels(coding);
  while (levels.level() < n) levels.advance();
  return levels.count();
}

std::size_t p_of_n(const OrbitCoding& coding, std::size_t n) {
  if (n == 0) return 1;
  WordLevels words(coding);
  while (words.length() < n) words.advance();
  return words.count();
}

ChildScan symbolic_children(const AgreementDepths& depths, long i, long time_budget) {
  // A child of Y_{-i} with transition time s needs c_s in Y_{-i} and no
  // j in [1, s) whose point reaches c within the chain: reach(j) < i + s.
  ChildScan scan;
  const long limit = static_cast<long>(depths.limit());
  long max_exact = std::numeric_limits<long>::min();
  long max_bound = std::numeric_limits<long>::min();
  bool any_bound = false;
  for (long s = 1; s <= time_budget; ++s) {
    if (s >= limit) {
      scan.complete = false;
      return scan;
    }
    if (s >= 2) {
      std::size_t j = static_cast<std::size_t>(s - 1);
      long r = depths.reach(j);
      if (depths.depth_exact(j)) {
        max_exact = std::max(max_exact, r);
      } else {
        max_bound = std::max(max_bound, r);
        any_bound = true;
      }
    }
    std::size_t us = static_cast<std::size_t>(s);
    long d = depths.depth(us);
    bool inside = d >= i;
    if (!inside && !depths.depth_exact(us)) {
      scan.complete = false;
      return scan;
    }
    if (inside) {
      bool blocked = std::max(max_exact, max_bound) >= i + s;
      if (!blocked && any_bound) {
        scan.complete = false;
        return scan;
      }
      if (!blocked) scan.times.push_back(s);
    }
    scan.scanned_to = s;
  }
  return scan;
}

EssentialOrderRecord essential_order(const AgreementDepths& depths, const OrbitCoding& coding, long n) {
  if (n < 1 || static_cast<std::size_t>(n) >= coding.coded || coding.code[static_cast<std::size_t>(n)] != 0)
    throw Error(ErrorKind::not_in_domain, "f^" + std::to_string(n) + "(c) is not in Y");
  std::vector<long> crit{n};
  for (long j = n - 1; j >= 1; --j) {
    std::size_t uj = static_cast<std::size_t>(j);
    long r = depths.reach(uj);
    if (!depths.depth_exact(uj) && r < n)
      throw Error(ErrorKind::insufficient_horizon, "chain of depth " + std::to_string(n) + " not resolved");
    if (r >= n) crit.push_back(j);
  }
  crit.push_back(0);
  EssentialOrderRecord rec;
  rec.n = n;
  for (long j : crit) rec.critical_indices.push_back(j - n);
  for (std::size_t k = 1; k < crit.size(); ++k) rec.transition_times.push_back(crit[k - 1] - crit[k]);
  std::set<long> distinct(rec.transition_times.begin(), rec.transition_times.end());
  rec.M = static_cast<long>(distinct.size());
  rec.jumps.push_back(1);
  for (std::size_t m = 2; m <= rec.transition_times.size(); ++m)
    if (rec.transition_times[m - 1] > rec.transition_times[static_cast<std::size_t>(rec.jumps.back()) - 1])
      rec.jumps.push_back(static_cast<long>(m));
  return rec;
}

EssentialOrderCheck check_essential_order(const EssentialOrderRecord& rec) {
  EssentialOrderCheck out;
  const auto& s = rec.transition_times;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k] < s[k - 1]) out.monotone = false;
  auto at = [&](long m) { return s[static_cast<std::size_t>(m) - 1]; };
  for (std::size_t j = 2; j < rec.jumps.size(); ++j) {
    long mj = rec.jumps[j], m1 = rec.jumps[j - 1], m2 = rec.jumps[j - 2];
    if (at(mj) < at(m1) * (mj - m1) + at(m2)) out.growth = false;
    if (at(mj) <= at(m1) + at(m2)) out.fibonacci = false;
  }
  return out;
}

ComplexityCurve complexity_curve(const OrbitCoding& coding, const CurveOptions& opts) {
  if (opts.n_max < 1 || opts.transition_budget < 1)
    throw Error(ErrorKind::invalid_argument, "n_max and the transition budget must be positive");
  const long walk_cap = opts.n_max + opts.transition_budget + 16;
  const std::size_t limit = static_cast<std::size_t>(opts.n_max + opts.transition_budget + walk_cap + 16);
  AgreementDepths depths(coding, limit, walk_cap);

  ComplexityCurve curve;
  curve.meta.transition_budget = opts.transition_budget;
  curve.meta.walk_cap = walk_cap;
  curve.meta.elements = static_cast<long>(coding.element_count());
  curve.meta.dropped = static_cast<long>(coding.dropped());

  const std::size_t n_max = static_cast<std::size_t>(opts.n_max);
  std::vector<long> p(n_max + 2, 1);
  {
    WordLevels words(coding);
    for (std::size_t len = 1; len <= n_max + 1; ++len) {
      while (words.length() < len) words.advance();
      p[len] = static_cast<long>(words.count());
    }
  }
  ComponentLevels levels(coding);
  long nu_sum = 0;
  bool nu_sum_complete = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    while (levels.level() < n) levels.advance();
    CurveRow row;
    row.n = static_cast<long>(n);
    row.q = static_cast<long>(levels.count());
    row.p = p[n];
    row.p_next = p[n + 1];
    row.nu_sum = nu_sum;
    row.nu_complete = nu_sum_complete;
    ChildScan scan = symbolic_children(depths, row.n, opts.transition_budget);
    row.nu = static_cast<long>(scan.times.size());
    if (n == 0) {
      curve.max_child_time_Y = scan.times.empty() ? 0 : scan.times.back();
      curve.children_complete_Y = scan.complete;
    }
    if (n >= 1 && n < coding.coded && coding.code[n] == 0) {
      curve.essential.push_back(essential_order(depths, coding, row.n));
      row.M = curve.essential.back().M;
      if (scan.times.size() >= 2) row.second_child = scan.times[1];
    }
    nu_sum += row.nu;
    nu_sum_complete = nu_sum_complete && scan.complete;
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

std::string ComplexityCurve::to_csv() const {
  std::ostringstream os;
  os << "n,q,p,M,nu_sum,notes\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.q << ',' << r.p << ',';
    if (r.M) os << *r.M;
    os << ',' << r.nu_sum << ',';
    std::string notes;
    if (r.M) notes += "return";
    if (!r.nu_complete) notes += notes.empty() ? "nu-partial" : ";nu-partial";
    os << notes << '\n';
  }
  return os.str();
}

std::string ComplexityCurve::sidecar_json() const {
  nlohmann::ordered_json j;
  j["map"] = {{"a", meta.map.a}, {"ell", meta.map.ell}};
  j["preset"] = meta.preset;
  j["cover"] = meta.cover;
  j["n_orbit"] = meta.n_orbit;
  j["budgets"] = {{"iterate", meta.iterate_budget},
                  {"transition", meta.transition_budget},
                  {"walk_cap", meta.walk_cap}};
  j["precision_cap"] = meta.precision_cap;
  j["precision_used"] = meta.precision_used;
  j["cover_elements"] = meta.elements;
  j["dropped_points"] = meta.dropped;
  j["max_child_time_Y"] = max_child_time_Y;
  j["children_complete_Y"] = children_complete_Y;
  return j.dump(2) + "\n";
}

SandwichReport sandwich_check(const ComplexityCurve& curve) {
  SandwichReport rep;
  rep.upper_from = curve.max_child_time_Y + 1;
  if (!curve.children_complete_Y)
    rep.notice = "children of Y not resolved within the transition budget; upper bound skipped";
  for (const auto& r : curve.rows) {
    if (r.p_next > r.q) rep.violations.push_back({r.n, 1, r.p_next, r.q});
    if (!curve.children_complete_Y || r.n < rep.upper_from) continue;
    if (!r.nu_complete) {
      if (rep.notice.empty()) rep.notice = "children counts incomplete from n = " + std::to_string(r.n);
      continue;
    }
    if (r.q > r.nu_sum) rep.violations.push_back({r.n, 2, r.q, r.nu_sum});
  }
  return rep;
}

SpecialCombinatoricsReport special_combinatorics_check(const OrbitSample& sample, std::size_t depth,
                                                       std::size_t sample_limit) {
  SpecialCombinatoricsReport rep;
  if (sample.probe_count < depth + 1) {
    rep.applicable = false;
    rep.notice = "sample lacks nest probes";
    return rep;
  }
  const std::size_t n = std::min(sample_limit, sample.size());
  rep.holds = true;
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<long> next(n + 1, -1);  // next index > i inside I^k
    for (std::size_t i = sample.size() - 1, last = static_cast<std::size_t>(-1);; --i) {
      if (i < n + 1) next[i] = last == static_cast<std::size_t>(-1) ? -1 : static_cast<long>(last);
      if (sample.in(i, k)) last = i;
      if (i == 0) break;
    }
    std::set<Side> sides;
    std::set<std::string> domains;
    for (std::size_t i = 1; i < n; ++i) {
      if (!sample.in(i, k) || sample.in(i, k + 1)) continue;
      sides.insert(sample.side[i]);
      if (next[i] < 0) continue;
      std::string key = std::to_string(next[i] - static_cast<long>(i)) + ':';
      for (std::size_t j = i; j < static_cast<std::size_t>(next[i]); ++j) key.push_back(to_char(sample.side[j]));
      domains.insert(std::move(key));
    }
    rep.levels.push_back({k, sides.size(), domains.size()});
    if (sides.size() != 1) rep.holds = false;
  }
  return rep;
}

SpecialCombinatoricsReport special_combinatorics_check(const MapSpec& m, std::size_t depth,
                                                       std::size_t n_orbit, long budget,
                                                       const PrecisionPolicy& policy) {
  SampleOptions opts;
  opts.precision = policy;
  opts.probes = [&](Dynamics& dyn) {
    auto nest = principal_nest(dyn, depth, budget);
    std::vector<Interval> out;
    for (const auto& level : nest) out.push_back(level.interval.span);
    out.push_back(nest.back().central_domain.span);
    return out;
  };
  try {
    OrbitSample sample = sample_critical_orbit(m, n_orbit, opts);
    return special_combinatorics_check(sample, depth);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget_exceeded && e.kind() != ErrorKind::no_fixed_point &&
        e.kind() != ErrorKind::renormalization_detected)
      throw;
    SpecialCombinatoricsReport rep;
    rep.applicable = false;
    rep.notice = std::string("principal nest unavailable: ") + e.what();
    return rep;
  }
}

const char* to_string(GrowthModel g) noexcept {
  switch (g) {
    case GrowthModel::constant: return "C";
    case GrowthModel::linear: return "C*n";
    case GrowthModel::n_log_n: return "C*n*log(n)";
    case GrowthModel::quadratic: return "C*n^2";
  }
  return "?";
}

GrowthReport growth_classify(const std::vector<std::pair<long, double>>& series) {
  if (series.size() < 20) throw Error(ErrorKind::insufficient_data, "growth fit needs at least 20 points");
  long lo = std::numeric_limits<long>::max(), hi = 0;
  for (const auto& [n, v] : series) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  if (lo < 1 || hi < 10 * lo) throw Error(ErrorKind::insufficient_data, "growth fit needs n spread over a decade");
  const GrowthModel models[] = {GrowthModel::constant, GrowthModel::linear, GrowthModel::n_log_n,
                                GrowthModel::quadratic};
  auto g = [](GrowthModel m, double n) {
    switch (m) {
      case GrowthModel::constant: return 1.0;
      case GrowthModel::linear: return n;
      case GrowthModel::n_log_n: return n * std::log(n);
      case GrowthModel::quadratic: return n * n;
    }
    return 0.0;
  };
  GrowthReport rep{};
  for (GrowthModel m : models) {
    double num = 0, den = 0;
    for (const auto& [n, v] : series) {
      double gn = g(m, static_cast<double>(n));
      num += v * gn;
      den += gn * gn;
    }
    double C = den > 0 ? num / den : 0;
    double sse = 0;
    for (const auto& [n, v] : series) {
      double e = v - C * g(m, static_cast<double>(n));
      sse += e * e;
    }
    rep.fits.push_back({m, C, sse});
  }
  const GrowthFit* best = &rep.fits[0];
  for (const auto& f : rep.fits)
    if (f.residual < best->residual * (1 - 1e-9) - 1e-12) best = &f;
  rep.best = best->model;
  rep.best_C = best->C;
  rep.sup_over_nlogn = 0;
  rep.inf_over_n = std::numeric_limits<double>::infinity();
  for (const auto& [n, v] : series) {
    double dn = static_cast<double>(n);
    if (n >= 2) rep.sup_over_nlogn = std::max(rep.sup_over_nlogn, v / (dn * std::log(dn)));
    rep.inf_over_n = std::min(rep.inf_over_n, v / dn);
  }
  return rep;
}

std::string GrowthReport::to_text() const {
  std::ostringstream os;
  os.precision(10);
  for (const auto& f : fits) os << "fit\t" << to_string(f.model) << "\tC=" << f.C << "\tresidual=" << f.residual << '\n';
  os << "best\t" << to_string(best) << "\tC=" << best_C << '\n';
  os << "sup value/(n log n)\t" << sup_over_nlogn << '\n';
  os << "inf value/n\t" << inf_over_n << '\n';
  return os.str();
}

}  // namespace unimodal
