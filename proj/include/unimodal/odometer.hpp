#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimodal/nice.hpp"

namespace unimodal {

// Finite truncation (p_1, ..., p_m) of an adding-machine base.
struct OdometerBase {
  std::vector<int> alpha;

  // Throws invalid_argument unless every p_i >= 2.
  void validate() const;
  // p_1 * ... * p_m; throws invalid_argument past 2^62.
  std::uint64_t state_count() const;
};

struct OdometerState {
  std::vector<int> digits;

  bool operator==(const OdometerState&) const = default;
};

// +1 with carry into later digits; the all-maximal state wraps to zero.
OdometerState step(const OdometerBase& base, const OdometerState& s);
void step_in_place(const OdometerBase& base, OdometerState& s);

// Length of the orbit of (0, ..., 0).
std::uint64_t orbit_period(const OdometerBase& base);

// Every state has exactly one preimage under step. Enumerates all states.
bool is_bijection(const OdometerBase& base);

// Mixed-radix position of a state, first digit least significant.
std::uint64_t state_index(const OdometerBase& base, const OdometerState& s);

std::string to_string(const OdometerState& s);

// Intervals of one level: T nice around c, T' the return domain holding c,
// Q and its mirror Q^ two further return domains of T.
struct CoverIntervals {
  Interval T;
  Interval T_prime;
  Interval Q;
  Interval Q_hat;
};

// Which sample probes record membership in T, T', Q and Q^.
struct CoverProbes {
  std::size_t T, T_prime, Q, Q_hat;
};

// U_j for j < k holds the points f^j(T' n sample); U_{k+j} for j < l holds
// f^j((Q u Q^) n sample). Indices before the first full return are unlabeled.
struct CyclicCover {
  long k = 0;  // return time of T' into T
  long l = 0;  // return time of Q into T
  std::vector<int> label;                    // per sample index, -1 if unlabeled
  std::vector<std::vector<std::size_t>> sets;
  std::vector<double> diameter;

  long period() const noexcept { return k + l; }
  // One line per U_j: j, point count, min and max coordinate.
  std::string to_text(const OrbitSample& sample) const;
};

// Checks hypotheses (ii)-(iv) on the sample and assembles the cover. Throws
// hypothesis_violation naming the condition and the offending orbit index.
CyclicCover build_cyclic_cover(const CoverIntervals& iv, const OrbitSample& sample, const CoverProbes& probes);

// Condition (i) along the supplied levels: strictly shrinking |T_n|.
void check_shrinking(const std::vector<CoverIntervals>& levels);

// Every labeled point of `fine` carries a label of `coarse`, and each fine
// set sits inside a single coarse set.
bool refinement_check(const CyclicCover& coarse, const CyclicCover& fine);

// f maps U_j into U_{j+1 mod (k+l)} along consecutive labeled indices.
bool is_cyclic(const CyclicCover& cover);

// (k_1 + l_1, (k_2 + l_2) / (k_1 + l_1), ...); throws hypothesis_violation
// when a period does not divide the next one.
std::vector<long> base_data(const std::vector<CyclicCover>& covers);
std::string base_data_line(const std::vector<long>& alpha);

// T_n = I_{2n}, T'_n = I_{2n+1}, Q_n = J_{2n+1} from the principal nest of
// the seed, for n = 1 .. levels.
std::vector<CoverIntervals> nest_cover_intervals(Dynamics& dyn, std::size_t levels, long budget);

}  // namespace unimodal
