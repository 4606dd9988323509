#include <doctest.h>

#include "oracles.hpp"
#include "unimodal/kneading.hpp"
#include "unimodal/nice.hpp"
#include "unimodal/presets.hpp"

using namespace unimodal;

namespace {

constexpr long kBudget = 100000;
constexpr oracle::real kFibA = 0.978101749785812025707L;

// Midpoint comparison with slack: neighbouring domains share endpoints that two
// different pull-backs enclose separately.
bool nested_or_disjoint(const Interval& a, const Interval& b) {
  const double eps = 1e-15;
  double al = a.left.midpoint(), ar = a.right.midpoint(), bl = b.left.midpoint(), br = b.right.midpoint();
  bool disjoint = ar <= bl + eps || br <= al + eps;
  bool a_in_b = bl <= al + eps && ar <= br + eps;
  bool b_in_a = al <= bl + eps && br <= ar + eps;
  return disjoint || a_in_b || b_in_a;
}

}  // namespace

TEST_SUITE("interval_dynamics") {

TEST_CASE("seed interval") {
  Dynamics full(MapSpec{"1", 2}, 128);
  NiceInterval I0 = seed_nice_interval(full);
  CHECK(compare(I0.span.left, 0.25) == Order::equal);
  CHECK(compare(I0.span.right, 0.75) == Order::equal);

  Dynamics low(MapSpec{"0.4", 2}, 128);
  try {
    seed_nice_interval(low);
    FAIL("expected no_fixed_point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_fixed_point);
  }

  Dynamics fib(preset("fibonacci").map, 512);
  NiceInterval seed = seed_nice_interval(fib);
  double q = static_cast<double>(oracle::fixed_point_q(kFibA, 2));
  CHECK(std::fabs(seed.span.right.midpoint() - q) < 1e-12);
  CHECK(std::fabs(seed.span.left.midpoint() - (1 - q)) < 1e-12);
  CertifiedPoint residual = sub(fib.f()(seed.span.right), seed.span.right);
  CHECK(std::fabs(residual.midpoint()) < 1e-12);
}

TEST_CASE("first entry to the seed") {
  Dynamics fib(preset("fibonacci").map, 512);
  NiceInterval seed = seed_nice_interval(fib);
  // c_2 sits left of the seed, c_3 inside: S_2 = 3.
  CHECK(oracle::iterate(kFibA, 2, 0.5L, 2) < 1 - oracle::fixed_point_q(kFibA, 2));
  CHECK(first_entry(fib, critical_point(512), seed.span, kBudget).time == 3);
  CHECK(first_entry_index(fib, 0, seed.span, kBudget) == 3);

  Dynamics wild(preset("wild").map, 1024);
  CHECK(first_entry(wild, critical_point(1024), seed_nice_interval(wild).span, kBudget).time == 3);

  // The landing point is the iterate itself.
  Landing l = first_entry(fib, CertifiedPoint(0.1, 512), seed.span, kBudget);
  oracle::real x = 0.1L;
  int k = 0;
  do {
    x = oracle::f(kFibA, 2, x);
    ++k;
  } while (!(x > 1 - oracle::fixed_point_q(kFibA, 2) && x < oracle::fixed_point_q(kFibA, 2)));
  CHECK(l.time == k);
  CHECK(std::fabs(l.point.midpoint() - static_cast<double>(x)) < 1e-12);

  CHECK_THROWS_AS(first_entry(fib, CertifiedPoint(0.0, 512), seed.span, 50), Error);
}

TEST_CASE("critical pull-backs") {
  Dynamics fib(preset("fibonacci").map, 512);
  NiceInterval seed = seed_nice_interval(fib);
  NiceInterval T3 = critical_pullback(fib, seed, 3);
  CHECK(seed.span.contains(T3.span));
  CHECK(compare(seed.span.left, T3.span.left) == Order::less);
  CHECK(compare(T3.span.right, seed.span.right) == Order::less);
  CHECK(overlaps(add(T3.span.left, T3.span.right), CertifiedPoint(1.0, 512)));
  // Endpoints solve f^3(x) = boundary of the seed.
  for (const CertifiedPoint* e : {&T3.span.left, &T3.span.right}) {
    CertifiedPoint y = iterate(fib.map(), *e, 3);
    CHECK((overlaps(y, seed.span.left) || overlaps(y, seed.span.right)));
  }
  // Long double oracle for the left endpoint on the branch through c.
  oracle::real qh = 1 - oracle::fixed_point_q(kFibA, 2);
  oracle::real qq = oracle::fixed_point_q(kFibA, 2);
  oracle::real left = oracle::bisect(
      [&](oracle::real x) {
        oracle::real y = oracle::iterate(kFibA, 2, x, 3);
        return (y - qh) * (y - qq);
      },
      static_cast<oracle::real>(seed.span.left.midpoint()) + 1e-12L, 0.5L);
  CHECK(std::fabs(T3.span.left.midpoint() - static_cast<double>(left)) < 1e-12);

  // The first return time gives the central return domain.
  auto nest = principal_nest(fib, 1, kBudget);
  NiceInterval T1 = critical_pullback(fib, seed, nest[0].return_time);
  CHECK(overlaps(T1.span.left, nest[0].central_domain.span.left));

  // Composition of pull-backs.
  NiceInterval inner = critical_pullback(fib, seed, 3);
  long n2 = first_entry_index(fib, 0, inner.span, kBudget);
  NiceInterval twice = critical_pullback(fib, inner, n2);
  NiceInterval once = critical_pullback(fib, seed, 3 + n2);
  CHECK(overlaps(twice.span.left, once.span.left));
  CHECK(overlaps(twice.span.right, once.span.right));

  try {
    critical_pullback(fib, seed, 2);
    FAIL("expected not_in_domain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_in_domain);
  }
}

TEST_CASE("entry domains") {
  Dynamics fib(preset("fibonacci").map, 512);
  NiceInterval seed = seed_nice_interval(fib);
  Interval J = entry_domain_of_orbit(fib, 1, seed.span, kBudget);
  CHECK(J.contains(fib.orbit(1)));
  // Entry time S_2 - 1 = 2: both endpoints map onto the boundary of the seed.
  for (const CertifiedPoint* e : {&J.left, &J.right}) {
    CertifiedPoint y = iterate(fib.map(), *e, 2);
    CHECK((overlaps(y, seed.span.left) || overlaps(y, seed.span.right)));
  }
  // Entry time is constant on the domain.
  for (double t : {0.01, 0.5, 0.99}) {
    CertifiedPoint x = add(J.left, mul(sub(J.right, J.left), CertifiedPoint(t, 512)));
    CHECK(first_entry(fib, x, seed.span, kBudget).time == 2);
  }
  auto nest = principal_nest(fib, 1, kBudget);
  Interval central = entry_domain(fib, critical_point(512), seed.span, kBudget);
  CHECK(overlaps(central.left, nest[0].central_domain.span.left));
  CHECK(overlaps(central.right, nest[0].central_domain.span.right));
}

TEST_CASE("return domains") {
  Preset fp = preset("fibonacci");
  auto domains = [&](std::size_t n) {
    return with_precision(fp.precision, [&](Precision prec) {
      Dynamics dyn(fp.map, prec);
      return return_domains(dyn, seed_nice_interval(dyn), n, kBudget);
    });
  };
  auto small = domains(2000);
  auto large = domains(20000);
  CHECK(small.size() == large.size());
  bool central = false;
  for (std::size_t j = 0; j < large.size(); ++j) {
    const double q = static_cast<double>(oracle::fixed_point_q(kFibA, 2));
    CHECK(large[j].span.left.midpoint() >= 1 - q - 1e-15);
    CHECK(large[j].span.right.midpoint() <= q + 1e-15);
    if (large[j].span.contains(CertifiedPoint(0.5, 64))) central = true;
    if (j + 1 < large.size()) CHECK(large[j].span.right.midpoint() <= large[j + 1].span.left.midpoint() + 1e-15);
  }
  CHECK(central);
}

TEST_CASE("principal nest") {
  Preset fp = preset("fibonacci");
  Dynamics fib(fp.map, 512);
  auto nest = principal_nest(fib, 8, kBudget);
  REQUIRE(nest.size() == 8);
  KneadingData kd = cutting_times(fp.map, 12);
  for (std::size_t k = 0; k < nest.size(); ++k) {
    if (k > 0) CHECK(nest[k].return_time >= nest[k - 1].return_time);
    CHECK(nest[k].interval.span.contains(nest[k].central_domain.span));
    CHECK(std::binary_search(kd.S.begin(), kd.S.end(), nest[k].return_time));
    if (k >= 2) CHECK(nest[k].kind == ReturnKind::non_central);
    check_niceness(fib, nest[k].central_domain, 2000);
  }

  Dynamics wild(preset("wild").map, 1024);
  auto wn = principal_nest(wild, 6, kBudget);
  std::vector<long> r;
  for (const auto& L : wn) r.push_back(L.return_time);
  CHECK(r == std::vector<long>{3, 5, 10, 15, 30, 45});
}

TEST_CASE("renormalization is detected") {
  Dynamics feig(preset("feigenbaum").map, 256);
  try {
    principal_nest(feig, 4, kBudget);
    FAIL("expected renormalization_detected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::renormalization_detected);
  }
  auto tower = renormalization_tower(feig, 3, kBudget);
  REQUIRE(tower.size() == 3);
  CHECK(tower[0].span.contains(tower[1].span));
  CHECK(tower[1].span.contains(tower[2].span));
  CHECK(tower[1].origin == Origin::renormalization_seed);
}

TEST_CASE("children") {
  Dynamics fib(preset("fibonacci").map, 2048);
  NiceInterval seed = seed_nice_interval(fib);
  auto kids = children(fib, seed, 400);
  REQUIRE_FALSE(kids.empty());
  CHECK(kids[0].transition_time == first_entry_index(fib, 0, seed.span, kBudget));
  for (std::size_t j = 1; j < kids.size(); ++j) {
    CHECK(kids[j].transition_time > kids[j - 1].transition_time);
    CHECK(kids[j - 1].child.span.contains(kids[j].child.span));
  }
  for (const auto& kid : kids) {
    Chain ch = pullback_chain(fib, 0, static_cast<std::size_t>(kid.transition_time), seed.span);
    CHECK(ch.order == 1);
    // Orbit points in the child take at least s steps to come back.
    for (std::size_t i = 1; i < 3000; ++i)
      if (kid.child.span.contains(fib.orbit(i)))
        CHECK(first_entry_index(fib, i, kid.child.span, kBudget) >= kid.transition_time);
  }

  // Bounded numbers of children along the nest.
  auto nest = principal_nest(fib, 6, kBudget);
  for (std::size_t k = 2; k < nest.size(); ++k) CHECK(children(fib, nest[k].interval, 2000).size() <= 4);

  // Nested-or-disjoint over everything produced from the seed.
  std::vector<Interval> all;
  for (const auto& kid : kids) all.push_back(kid.child.span);
  for (const auto& L : nest) all.push_back(L.central_domain.span);
  for (const auto& d : return_domains(fib, seed, 5000, kBudget)) all.push_back(d.span);
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t k = j + 1; k < all.size(); ++k) CHECK(nested_or_disjoint(all[j], all[k]));
}

TEST_CASE("central cascades") {
  Dynamics fib(preset("fibonacci").map, 512);
  NiceInterval seed = seed_nice_interval(fib);
  auto nest = principal_nest(fib, 4, kBudget);
  CascadeRecord short_run = central_cascade(fib, nest[3].interval, kBudget);
  CHECK(short_run.levels.size() == 2);
  CHECK(short_run.maximal);

  // Just below the period-3 saddle-node: c lingers near the ghost orbit.
  const MapSpec sn{"0.9571", 2};
  with_precision({1024, 8192}, [&](Precision prec) {
    Dynamics dyn(sn, prec);
    CascadeRecord long_run = central_cascade(dyn, seed_nice_interval(dyn), kBudget);
    // levels holds T, T^1, ..., T^m.
    const std::size_t m = long_run.levels.size() - 1;
    CHECK(m > 3);
    CHECK(long_run.maximal);
    CHECK(long_run.shared_return_time == 3);
    auto levels = principal_nest(dyn, m + 1, kBudget);
    std::size_t run = 0;
    while (run < levels.size() && levels[run].kind == ReturnKind::central) ++run;
    CHECK(m == run + 1);
    for (std::size_t j = 1; j <= m; ++j) CHECK(long_run.levels[j - 1].span.contains(long_run.levels[j].span));
    return 0;
  });
  (void)seed;
}

TEST_CASE("well inside margin") {
  const Precision p = 128;
  Interval I(CertifiedPoint(0.0, p), CertifiedPoint(3.0, p));
  CHECK(compare(well_inside_margin(Interval(CertifiedPoint(1.0, p), CertifiedPoint(2.0, p)), I), 1.0) ==
        Order::equal);
  CHECK(compare(well_inside_margin(Interval(CertifiedPoint(0.0, p), CertifiedPoint(1.0, p)), I), 0.0) ==
        Order::equal);
  // (1 + 2 tau) J = I with tau = 0.25.
  Interval J(CertifiedPoint(1.0, p), CertifiedPoint(3.0, p));
  Interval wide(CertifiedPoint(0.5, p), CertifiedPoint(3.5, p));
  CHECK(compare(well_inside_margin(J, wide), 0.25) == Order::equal);
  try {
    well_inside_margin(wide, J);
    FAIL("expected not_contained");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_contained);
  }
}

}
