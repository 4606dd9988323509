#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unimodal/map.hpp"

namespace unimodal {

using Word = std::string;  // letters 'L', 'C', 'R'

// Symbols of f^j(c) for j = 1..n. Throws superattracting if some f^j(c) = c
// exactly, precision_exhausted if a side cannot be certified below the cap.
Word itinerary(const MapSpec& m, std::size_t n, const PrecisionPolicy& policy = {});

struct KneadingData {
  Word symbols;                    // symbols[j-1] is the side of f^j(c)
  std::vector<CertifiedPoint> z;   // closest precritical points, z[k] < c
  std::vector<long> S;             // cutting times, S[0] = 1
  std::vector<long> Q;             // kneading map, Q[0] = 0
  bool complete = true;            // false when the horizon ran out first

  // Line format: "S: 1 2 3", "Q: 0 0 0", "sym: RLL", optional "z: ..." lines.
  std::string to_text() const;
  static KneadingData from_text(const std::string& text);
};

struct CuttingTimeOptions {
  long iterate_budget = 1'000'000;
  // Closest precritical points are produced for cutting times up to this bound.
  long z_limit = 4096;
  PrecisionPolicy precision{};
};

// First K+1 cutting times S[0..K]. Throws horizon_exceeded if S[K] would pass
// the iterate budget.
KneadingData cutting_times(const MapSpec& m, std::size_t K, const CuttingTimeOptions& opts = {});
// Same, but stops quietly at the budget and flags the result incomplete.
KneadingData cutting_times_partial(const MapSpec& m, std::size_t K, const CuttingTimeOptions& opts = {});

// Cutting times read off an itinerary with symbols[j-1] = side of f^j(c).
std::vector<long> cutting_times_from_symbols(const Word& symbols);
// The itinerary prefix (positions 1..S.back()) determined by a cutting-time list.
Word symbols_from_cutting_times(const std::vector<long>& S);

std::vector<long> kneading_map_from_S(const std::vector<long>& S);
// S[0..K] from Q[1..K] (Q[0] is ignored and taken as 0).
std::vector<long> S_from_Q(const std::vector<long>& Q, std::size_t K);

struct WildCombinatorics {
  std::vector<long> r, t;
  std::vector<long> merged_cutting_times;
  std::optional<long> k0_offset;
};

// r[0..K], t[0..K] and the merged cutting times r_1, r_1+r_0, r_2, r_3, r_3+r_2, ...
WildCombinatorics wild_combinatorics(std::size_t K, long r0 = 3, long t0 = 2);
// Cutting times of the wild example: the low-order prefix 1, 2, 3 followed by
// the merged sequence.
std::vector<long> wild_cutting_times(const WildCombinatorics& w);
// Index k0 with S[k0 + 3m + 1] = r_{2m+1}, S[k0+3m+2] = r_{2m+1} + r_{2m},
// S[k0+3m+3] = r_{2m+2} for every m the data covers; nullopt if no lock-in.
std::optional<long> detect_wild_offset(const std::vector<long>& S, const WildCombinatorics& w);
// First index from which Q follows the closed form k-5, k-3, k-2 by (k-k0) mod 3.
std::optional<long> detect_closed_form_start(const std::vector<long>& Q, long k0);

struct BruinFailure {
  long k;
  int inequality;  // 1: Q(k+1) >= Q(Q(k)) + 1, 2: k - Q(k) <= N
};

std::vector<BruinFailure> bruin_criterion(const std::vector<long>& Q, long k1, long N);

struct BisectionTarget {
  std::vector<long> S;
  static BisectionTarget from_S(std::vector<long> S);
  static BisectionTarget from_Q(const std::vector<long>& Q);
};

struct ParameterEnclosure {
  std::string lower;    // exact hex literals
  std::string upper;
  MapSpec witness;      // parameter at which the target prefix is certified
  int steps = 0;
  Precision precision = 0;
};

struct BisectionOptions {
  PrecisionPolicy precision{};
  int max_steps = 4096;
  std::string lower = "0.5";
  std::string upper = "1";
};

// Certified bisection in the kneading order. On a full prefix match the search
// moves left, so the witness converges to the left end of the realizing set.
ParameterEnclosure parameter_bisection(double ell, const BisectionTarget& target, double tol,
                                       const BisectionOptions& opts = {});

// -1 / +1 when the itinerary of m is below / above the target in the
// parity-lexicographic order, 0 when the prefix matches.
int compare_to_target(const MapSpec& m, const Word& target, const PrecisionPolicy& policy);

}  // namespace unimodal
