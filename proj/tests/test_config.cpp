#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "unimodal/config.hpp"
#include "unimodal/errors.hpp"

using namespace unimodal;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    RunConfig::parse(text).validate();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.n_orbit == 200000);
  CHECK(RunConfig::parse("") == c);
  CHECK(RunConfig::parse("# only a comment\n\n") == c);
}

TEST_CASE("round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    RunConfig c;
    c.command = trial % 2 ? "wild-verify" : "complexity";
    c.param = trial % 3 ? "" : "0.97";
    c.ell = 1 + 5 * unit(rng);
    c.tol = std::ldexp(unit(rng), -30);
    c.n_max = 1 + static_cast<long>(rng() % 1000);
    c.cover = trial % 4 ? "seed" : "renorm:2";
    c.bisect = trial % 5 == 0;
    c.target_S = {1, 2, 3, static_cast<long>(5 + rng() % 3)};
    c.alpha = {2, static_cast<long>(2 + rng() % 5)};
    c.out = trial % 2 ? "" : "run" + std::to_string(trial);
    std::string text = c.serialize();
    RunConfig back = RunConfig::parse(text);
    CHECK(back == c);
    CHECK(back.serialize() == text);
  }
}

TEST_CASE("comments and whitespace") {
  RunConfig c = RunConfig::parse("  command = odometer   # trailing\nalpha=2 3\n\tn_max = 50\n");
  CHECK(c.command == "odometer");
  CHECK(c.alpha == std::vector<long>{2, 3});
  CHECK(c.n_max == 50);
  CHECK(RunConfig::parse("ell = 2.5").ell == 2.5);
  CHECK(RunConfig::parse("ell = 0x1.4p+1").ell == 2.5);
}

TEST_CASE("rejections") {
  CHECK(kind_of("colour = red") == ErrorKind::config);
  CHECK(kind_of("n_max = twelve") == ErrorKind::config);
  CHECK(kind_of("n_max = 12x") == ErrorKind::config);
  CHECK(kind_of("n_max") == ErrorKind::config);
  CHECK(kind_of("n_max = 0") == ErrorKind::config);
  CHECK(kind_of("ell = 1") == ErrorKind::config);
  CHECK(kind_of("bisect = maybe") == ErrorKind::config);
  CHECK(kind_of("command = plot") == ErrorKind::config);
  CHECK(kind_of("alpha = 2 1") == ErrorKind::config);
  CHECK(kind_of("cover = nest") == ErrorKind::config);
  CHECK(kind_of("precision_start = 8192") == ErrorKind::config);
  CHECK(kind_of("tol = -1") == ErrorKind::config);
  CHECK(exit_code(ErrorKind::config) == 5);
}

TEST_CASE("load from a file") {
  const std::string path = "test_config_load.cfg";
  {
    std::ofstream f(path);
    f << "command = kneading\npreset = fibonacci\ncutting_times = 8\n";
  }
  RunConfig c = RunConfig::load(path);
  std::remove(path.c_str());
  CHECK(c.command == "kneading");
  CHECK(c.preset == "fibonacci");
  CHECK(c.cutting_times == 8);
  CHECK_THROWS_AS(RunConfig::load("no/such/file.cfg"), Error);
}

}
