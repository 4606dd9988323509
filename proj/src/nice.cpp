#include "unimodal/nice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace unimodal {

const char* to_string(Origin o) noexcept {
  switch (o) {
    case Origin::seed: return "seed";
    case Origin::critical_pullback: return "pullback";
    case Origin::renormalization_seed: return "renormalization-seed";
  }
  return "?";
}

namespace {

// Component of f^{-1}(U) containing x. Central when U holds the critical value.
Interval pull_step(MapEvaluator& f, const Interval& U, const CertifiedPoint& x, bool& central) {
  const CertifiedPoint& a = f.critical_value();
  if (compare(U.left, a) != Order::less)
    throw Error(ErrorKind::not_in_domain, "interval lies above the critical value");
  central = compare(a, U.right) == Order::less;
  CertifiedPoint l(f.precision()), r(f.precision());
  if (central) {
    l = f.preimage(U.left, Side::L);
    r = f.preimage(U.left, Side::R);
  } else if (MapEvaluator::side(x) == Side::L) {
    l = f.preimage(U.left, Side::L);
    r = f.preimage(U.right, Side::L);
  } else {
    l = f.preimage(U.right, Side::R);
    r = f.preimage(U.left, Side::R);
  }
  Interval out(std::move(l), std::move(r));
  if (!out.contains(x)) throw Undecided{};
  return out;
}

bool outside_open(const Interval& T, const CertifiedPoint& y) {
  if (compare(y, T.left) != Order::greater) return true;
  return compare(y, T.right) != Order::less;
}

bool stationary(const Interval& inner, const Interval& outer) {
  return overlaps(inner.left, outer.left) || overlaps(inner.right, outer.right);
}

int orientation_after(Dynamics& dyn, long from, long to) {
  int eps = 1;
  for (long j = from; j < to; ++j)
    if (dyn.orbit_side(static_cast<std::size_t>(j)) == Side::R) eps = -eps;
  return eps;
}

}  // namespace

Chain pullback_chain(Dynamics& dyn, const std::vector<CertifiedPoint>& points, const Interval& target) {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "empty orbit segment");
  const std::size_t s = points.size() - 1;
  if (!target.contains(points[s]))
    throw Error(ErrorKind::not_in_domain, "orbit segment does not end in the target interval");
  Chain chain;
  chain.intervals.assign(s + 1, target);
  chain.central.assign(s, false);
  for (std::size_t j = s; j-- > 0;) {
    bool central = false;
    chain.intervals[j] = pull_step(dyn.f(), chain.intervals[j + 1], points[j], central);
    chain.central[j] = central;
    chain.order += central ? 1 : 0;
  }
  return chain;
}

Chain pullback_chain(Dynamics& dyn, std::size_t from, std::size_t s, const Interval& target) {
  std::vector<CertifiedPoint> points;
  points.reserve(s + 1);
  for (std::size_t j = 0; j <= s; ++j) points.push_back(dyn.orbit(from + j));
  return pullback_chain(dyn, points, target);
}

NiceInterval seed_nice_interval(Dynamics& dyn) {
  CertifiedPoint q = fixed_point_q(dyn.map(), dyn.precision());
  return NiceInterval{Interval(one_minus(q), q), Origin::seed, 0, 1,
                      "boundary {q^, q} with f(q^) = f(q) = q"};
}

NiceInterval critical_pullback(Dynamics& dyn, const NiceInterval& T, long n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "pull-back depth must be >= 1");
  if (!T.span.contains(dyn.orbit(static_cast<std::size_t>(n))))
    throw Error(ErrorKind::not_in_domain, "f^" + std::to_string(n) + "(c) is not in the interval");
  Chain chain = pullback_chain(dyn, 0, static_cast<std::size_t>(n), T.span);
  return NiceInterval{chain.intervals[0], Origin::critical_pullback, T.depth + n, T.boundary_period,
                      "order " + std::to_string(chain.order)};
}

Landing first_entry(Dynamics& dyn, const CertifiedPoint& x, const Interval& T, long budget) {
  CertifiedPoint y = x;
  for (long k = 1; k <= budget; ++k) {
    dyn.f().apply(y, y);
    if (T.contains(y)) return Landing{k, y};
  }
  throw Error(ErrorKind::budget_exceeded, "no entry within " + std::to_string(budget) + " iterates");
}

long first_entry_index(Dynamics& dyn, std::size_t i, const Interval& T, long budget) {
  for (long k = 1; k <= budget; ++k)
    if (T.contains(dyn.orbit(i + static_cast<std::size_t>(k)))) return k;
  throw Error(ErrorKind::budget_exceeded, "no entry within " + std::to_string(budget) + " iterates");
}

Interval entry_domain(Dynamics& dyn, const CertifiedPoint& x, const Interval& T, long budget) {
  long k = first_entry(dyn, x, T, budget).time;
  std::vector<CertifiedPoint> points{x};
  for (long j = 0; j < k; ++j) points.push_back(dyn.f()(points.back()));
  return pullback_chain(dyn, points, T).intervals[0];
}

Interval entry_domain_of_orbit(Dynamics& dyn, std::size_t i, const Interval& T, long budget) {
  long k = first_entry_index(dyn, i, T, budget);
  return pullback_chain(dyn, i, static_cast<std::size_t>(k), T).intervals[0];
}

std::vector<EntryDomain> return_domains(Dynamics& dyn, const NiceInterval& T, std::size_t sample_end,
                                        long budget) {
  // Two points with the same entry time and the same laps before entering
  // lie in the same entry domain, so the pair is a complete identity key.
  std::map<std::string, std::size_t> index;
  std::vector<EntryDomain> out;
  for (std::size_t i = 1; i < sample_end; ++i) {
    if (!T.span.contains(dyn.orbit(i))) continue;
    long k = first_entry_index(dyn, i, T.span, budget);
    std::string key = std::to_string(k) + ':';
    for (long j = 0; j < k; ++j) key.push_back(to_char(dyn.orbit_side(i + static_cast<std::size_t>(j))));
    auto it = index.find(key);
    if (it == index.end()) {
      Interval span = pullback_chain(dyn, i, static_cast<std::size_t>(k), T.span).intervals[0];
      // The central domain holds points on both laps; file it under C.
      std::string canonical = key;
      if (span.contains(critical_point(dyn.precision()))) canonical[key.find(':') + 1] = 'C';
      auto [c_it, fresh] = index.try_emplace(canonical, out.size());
      if (fresh) out.push_back(EntryDomain{std::move(span), k, i, 0});
      it = index.emplace(key, c_it->second).first;
    }
    ++out[it->second].hits;
  }
  std::sort(out.begin(), out.end(),
            [](const EntryDomain& x, const EntryDomain& y) { return x.span.left.midpoint() < y.span.left.midpoint(); });
  // Domains of a nice interval are equal or disjoint and neighbours may share an
  // endpoint, so overlap shows up as a representative inside the other domain.
  auto outside = [&](const CertifiedPoint& x, const Interval& J) {
    return compare(x, J.left) != Order::greater || compare(J.right, x) != Order::greater;
  };
  for (std::size_t j = 0; j + 1 < out.size(); ++j)
    if (!outside(dyn.orbit(out[j + 1].representative), out[j].span) ||
        !outside(dyn.orbit(out[j].representative), out[j + 1].span))
      throw Error(ErrorKind::hypothesis_violation, "return domains overlap");
  return out;
}

std::vector<NestLevel> principal_nest(Dynamics& dyn, const NiceInterval& top, std::size_t depth,
                                      long budget) {
  std::vector<NestLevel> levels;
  NiceInterval current = top;
  for (std::size_t k = 0; k < depth; ++k) {
    long r = first_entry_index(dyn, 0, current.span, budget);
    NiceInterval inner = critical_pullback(dyn, current, r);
    if (stationary(inner.span, current.span)) {
      if (restrictive_period(dyn, current, budget))
        throw Error(ErrorKind::renormalization_detected,
                    "restrictive interval of period " + std::to_string(r) + " at nest level " +
                        std::to_string(k));
      throw Undecided{};
    }
    std::size_t ur = static_cast<std::size_t>(r);
    ReturnKind kind = inner.span.contains(dyn.orbit(ur)) ? ReturnKind::central : ReturnKind::non_central;
    // f^{r-1} is monotone on f(I^{k+1}) with the orientation read off the
    // laps of c_1 .. c_{r-1}; the boundary of I^{k+1} goes to the end of
    // I^k on the far side from c_r exactly when that orientation says so.
    int eps = orientation_after(dyn, 1, r);
    bool right = dyn.orbit_side(ur) == Side::R;
    Height height = (eps > 0) == right ? Height::high : Height::low;
    levels.push_back(NestLevel{current, r, kind, height, inner});
    current = inner;
  }
  return levels;
}

std::vector<NestLevel> principal_nest(Dynamics& dyn, std::size_t depth, long budget) {
  return principal_nest(dyn, seed_nice_interval(dyn), depth, budget);
}

std::vector<ChildRecord> children(Dynamics& dyn, const NiceInterval& T, long time_budget) {
  std::vector<ChildRecord> out;
  MapEvaluator& f = dyn.f();
  for (long s = 1; s <= time_budget; ++s) {
    std::size_t us = static_cast<std::size_t>(s);
    if (!T.span.contains(dyn.orbit(us))) continue;
    // Pull back from the top; a central step above T_0 means order > 1.
    Interval U = T.span;
    bool child = true;
    for (std::size_t j = us; j-- > 0;) {
      bool central = false;
      U = pull_step(f, U, dyn.orbit(j), central);
      if (central && j > 0) {
        child = false;
        break;
      }
    }
    if (child)
      out.push_back(ChildRecord{
          NiceInterval{U, Origin::critical_pullback, T.depth + s, T.boundary_period, "child"}, s});
  }
  return out;
}

CascadeRecord central_cascade(Dynamics& dyn, const NiceInterval& T, long budget, std::size_t max_levels) {
  CascadeRecord rec;
  rec.shared_return_time = first_entry_index(dyn, 0, T.span, budget);
  rec.levels.push_back(T);
  const std::size_t s = static_cast<std::size_t>(rec.shared_return_time);
  while (rec.levels.size() <= max_levels) {
    NiceInterval next = critical_pullback(dyn, rec.levels.back(), rec.shared_return_time);
    if (stationary(next.span, rec.levels.back().span)) {
      if (restrictive_period(dyn, rec.levels.back(), budget))
        throw Error(ErrorKind::renormalization_detected,
                    "restrictive interval of period " + std::to_string(s) + " inside the cascade");
      throw Undecided{};
    }
    rec.levels.push_back(next);
    if (!next.span.contains(dyn.orbit(s))) {
      rec.maximal = true;
      break;
    }
  }
  return rec;
}

CertifiedPoint well_inside_margin(const Interval& J, const Interval& I) {
  if (!I.contains(J)) throw Error(ErrorKind::not_contained, "inner interval is not inside the outer one");
  CertifiedPoint gap = min(sub(J.left, I.left), sub(I.right, J.right));
  return div(gap, J.length());
}

void check_niceness(Dynamics& dyn, const NiceInterval& T, long horizon) {
  // From time `depth` on the boundary orbit is the periodic boundary orbit of
  // the root interval, which avoids the root and hence T.
  const long direct = std::min(horizon, T.depth > 0 ? T.depth - 1 : T.boundary_period - 1);
  for (const CertifiedPoint* e : {&T.span.left, &T.span.right}) {
    CertifiedPoint y = *e;
    for (long j = 1; j <= direct; ++j) {
      dyn.f().apply(y, y);
      if (!outside_open(T.span, y))
        throw Error(ErrorKind::hypothesis_violation,
                    "boundary returns into the interval at time " + std::to_string(j));
    }
  }
}

std::optional<long> restrictive_period(Dynamics& dyn, const NiceInterval& T, long budget) {
  long s = first_entry_index(dyn, 0, T.span, budget);
  NiceInterval inner = critical_pullback(dyn, T, s);
  if (!stationary(inner.span, T.span)) return std::nullopt;
  CertifiedPoint y = T.span.left;
  for (long j = 0; j < s; ++j) dyn.f().apply(y, y);
  if (overlaps(y, T.span.left) || overlaps(y, T.span.right)) return s;
  throw Undecided{};
}

NiceInterval renormalization_seed(Dynamics& dyn, const NiceInterval& K, long s) {
  MapEvaluator& f = dyn.f();
  const Precision prec = dyn.precision();
  // f^s restricted to the right half has orientation -(laps of c_1..c_{s-1}).
  bool right_half = -orientation_after(dyn, 1, s) < 0;
  auto g_sign = [&](mpfr_srcptr x) {
    CertifiedPoint p(prec);
    mpfr_set(p.lower(), x, MPFR_RNDD);
    mpfr_set(p.upper(), x, MPFR_RNDU);
    CertifiedPoint y = p;
    for (long j = 0; j < s; ++j) f.apply(y, y);
    return compare(y, p);
  };
  // On the decreasing half f^s(x) - x goes from positive to negative.
  mpfr_t lo, hi, mid;
  for (mpfr_ptr v : {lo, hi, mid}) mpfr_init2(v, prec);
  if (right_half) {
    mpfr_set_d(lo, 0.5, MPFR_RNDN);
    mpfr_set(hi, K.span.right.lower(), MPFR_RNDD);
  } else {
    mpfr_set(lo, K.span.left.upper(), MPFR_RNDU);
    mpfr_set_d(hi, 0.5, MPFR_RNDN);
  }
  CertifiedPoint p(prec);
  try {
    if (g_sign(lo) != Order::greater || g_sign(hi) != Order::less)
      throw Error(ErrorKind::hypothesis_violation, "no sign change of f^s(x) - x on the decreasing half");
    for (Precision step = 0; step < prec; ++step) {
      mpfr_add(mid, lo, hi, MPFR_RNDN);
      mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
      if (mpfr_equal_p(mid, lo) || mpfr_equal_p(mid, hi)) break;
      Order o;
      try {
        o = g_sign(mid);
      } catch (const Undecided&) {
        break;
      }
      if (o == Order::equal) {
        mpfr_set(lo, mid, MPFR_RNDN);
        mpfr_set(hi, mid, MPFR_RNDN);
        break;
      }
      mpfr_set(o == Order::greater ? lo : hi, mid, MPFR_RNDN);
    }
    mpfr_set(p.lower(), lo, MPFR_RNDD);
    mpfr_set(p.upper(), hi, MPFR_RNDU);
  } catch (...) {
    for (mpfr_ptr v : {lo, hi, mid}) mpfr_clear(v);
    throw;
  }
  for (mpfr_ptr v : {lo, hi, mid}) mpfr_clear(v);
  CertifiedPoint mirror = one_minus(p);
  Interval span = right_half ? Interval(mirror, p) : Interval(p, mirror);
  return NiceInterval{std::move(span), Origin::renormalization_seed, 0, s,
                      "boundary: orientation-reversing fixed point of f^" + std::to_string(s)};
}

std::vector<NiceInterval> renormalization_tower(Dynamics& dyn, std::size_t count, long budget) {
  std::vector<NiceInterval> out{seed_nice_interval(dyn)};
  while (out.size() < count) {
    auto s = restrictive_period(dyn, out.back(), budget);
    if (!s) break;
    out.push_back(renormalization_seed(dyn, out.back(), *s));
  }
  return out;
}

std::string report_line(const NiceInterval& T, const std::string& extra) {
  std::ostringstream os;
  os << to_string(T.origin) << '\t' << T.depth << '\t' << T.span.left.to_string(17) << '\t'
     << T.span.right.to_string(17);
  if (!extra.empty()) os << '\t' << extra;
  return os.str();
}

}  // namespace unimodal
