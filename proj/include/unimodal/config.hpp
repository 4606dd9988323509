#pragma once

#include <string>
#include <vector>

namespace unimodal {

// Key-value run description: one "key = value" per line, '#' starts a comment.
// Serialization writes every key in a fixed order with doubles as hex floats,
// so parse(serialize(c)) == c and serialize(parse(serialize(c))) is identical.
struct RunConfig {
  std::string command = "complexity";
  std::string param;         // parameter a as decimal or hex text
  double ell = 2.0;
  std::string preset;
  std::string cover = "seed";  // seed | nest:<k> | renorm:<k>
  long cutting_times = 30;
  long n_max = 200;
  long n_orbit = 200000;
  long budget_iterate = 1'000'000;
  long budget_transition = 2048;
  long budget_branch = 1 << 20;
  long precision_start = 64;
  long precision_max = 4096;
  long depth = 6;
  double tol = 1e-10;
  long r0 = 3;
  long t0 = 2;
  bool bisect = false;
  std::vector<long> target_S;
  std::vector<long> alpha;
  std::string out;

  bool operator==(const RunConfig&) const = default;

  // Throws config on a malformed or out-of-range entry.
  void validate() const;
  std::string serialize() const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
};

}  // namespace unimodal
