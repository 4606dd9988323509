#include <doctest.h>

#include <random>

#include "unimodal/odometer.hpp"
#include "unimodal/presets.hpp"

using namespace unimodal;

namespace {

// Mixed-radix value, first digit least significant.
std::uint64_t value(const std::vector<int>& alpha, const std::vector<int>& digits) {
  std::uint64_t v = 0;
  for (std::size_t i = alpha.size(); i-- > 0;) v = v * static_cast<std::uint64_t>(alpha[i]) + static_cast<std::uint64_t>(digits[i]);
  return v;
}

struct WildCovers {
  OrbitSample sample;
  std::vector<CoverIntervals> levels;
};

const WildCovers& wild_covers() {
  static const WildCovers wc = [] {
    Preset p = preset("wild");
    WildCovers out;
    SampleOptions opts;
    opts.precision = p.precision;
    opts.probes = [&](Dynamics& dyn) {
      out.levels = nest_cover_intervals(dyn, 2, 100000);
      std::vector<Interval> probes;
      for (const auto& L : out.levels)
        for (const Interval* iv : {&L.T, &L.T_prime, &L.Q, &L.Q_hat}) probes.push_back(*iv);
      return probes;
    };
    out.sample = sample_critical_orbit(p.map, 20000, opts);
    return out;
  }();
  return wc;
}

}  // namespace

TEST_SUITE("odometer") {

TEST_CASE("step examples") {
  OdometerBase b{{2, 3}};
  CHECK(step(b, {{1, 2}}) == OdometerState{{0, 0}});
  CHECK(step(b, {{1, 0}}) == OdometerState{{0, 1}});
  CHECK(step(b, {{0, 1}}) == OdometerState{{1, 1}});
  CHECK(to_string(OdometerState{{1, 2}}) == "(1,2)");
  OdometerState s{{1, 2}};
  step_in_place(b, s);
  CHECK(s == OdometerState{{0, 0}});
}

TEST_CASE("step is +1 in mixed radix") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> alpha(1 + rng() % 5);
    for (int& p : alpha) p = 2 + static_cast<int>(rng() % 6);
    OdometerBase b{alpha};
    std::uint64_t n = b.state_count();
    OdometerState s{std::vector<int>(alpha.size())};
    for (std::size_t i = 0; i < alpha.size(); ++i) s.digits[i] = static_cast<int>(rng() % static_cast<unsigned>(alpha[i]));
    CHECK(value(alpha, step(b, s).digits) == (value(alpha, s.digits) + 1) % n);
    CHECK(state_index(b, s) == value(alpha, s.digits));
  }
}

TEST_CASE("periods and bijection") {
  CHECK(orbit_period({{2, 3}}) == 6);
  CHECK(orbit_period({{2, 2, 2, 2}}) == 16);
  CHECK(orbit_period({{2, 3, 2}}) == 12);
  CHECK(orbit_period({{5}}) == 5);
  CHECK(is_bijection({{2, 3}}));
  CHECK(is_bijection({{3, 3, 7}}));
  CHECK(OdometerBase{{15, 3}}.state_count() == 45);
  const OdometerBase unit_digit{{2, 1}}, empty{};
  CHECK_THROWS_AS(unit_digit.validate(), Error);
  CHECK_THROWS_AS(empty.validate(), Error);
}

TEST_CASE("cyclic covers of the wild map") {
  const WildCovers& wc = wild_covers();
  REQUIRE(wc.levels.size() == 2);
  check_shrinking(wc.levels);
  CyclicCover c1 = build_cyclic_cover(wc.levels[0], wc.sample, {0, 1, 2, 3});
  CyclicCover c2 = build_cyclic_cover(wc.levels[1], wc.sample, {4, 5, 6, 7});
  CHECK(c1.k == 10);
  CHECK(c1.l == 5);
  CHECK(c2.k == 30);
  CHECK(c2.l == 15);
  CHECK(is_cyclic(c1));
  CHECK(is_cyclic(c2));
  CHECK(refinement_check(c1, c2));
  CHECK_FALSE(refinement_check(c2, c1));
  CHECK(base_data({c1, c2}) == std::vector<long>{15, 3});
  CHECK(base_data_line({15, 3}) == "alpha: 15 3");
  // Sets are pairwise disjoint.
  std::vector<int> owner(wc.sample.size(), -1);
  for (std::size_t j = 0; j < c2.sets.size(); ++j)
    for (std::size_t i : c2.sets[j]) {
      CHECK(owner[i] == -1);
      owner[i] = static_cast<int>(j);
    }
}

TEST_CASE("injected faults are rejected") {
  const WildCovers& wc = wild_covers();
  // Q in place of T': the return from Q does not take the T' time.
  CHECK_THROWS_AS(build_cyclic_cover(wc.levels[0], wc.sample, {0, 2, 1, 3}), Error);
  // T of the next level in place of T.
  CHECK_THROWS_AS(build_cyclic_cover(wc.levels[0], wc.sample, {4, 1, 2, 3}), Error);

  CyclicCover c1 = build_cyclic_cover(wc.levels[0], wc.sample, {0, 1, 2, 3});
  CyclicCover broken = c1;
  for (std::size_t i = 0; i < broken.label.size(); ++i)
    if (broken.label[i] == 3) {
      broken.label[i] = 7;
      break;
    }
  CHECK_FALSE(is_cyclic(broken));

  std::vector<CoverIntervals> swapped{wc.levels[1], wc.levels[0]};
  CHECK_THROWS_AS(check_shrinking(swapped), Error);

  CyclicCover a, b;
  a.k = 2;
  a.l = 1;
  b.k = 2;
  b.l = 2;
  CHECK_THROWS_AS(base_data({a, b}), Error);
}

}
