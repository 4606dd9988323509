#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimodal/orbit.hpp"

namespace unimodal {

enum class Origin { seed, critical_pullback, renormalization_seed };

const char* to_string(Origin o) noexcept;

struct NiceInterval {
  Interval span;
  Origin origin = Origin::seed;
  long depth = 0;    // pull-back depth below the seed it descends from
  long boundary_period = 1;  // f^{depth + period}(boundary) returns to the root's boundary
  std::string notes;
};

// T_0, ..., T_s with T_j the component of f^{-1}(T_{j+1}) holding the orbit point.
struct Chain {
  std::vector<Interval> intervals;
  std::vector<bool> central;  // central[j]: c in T_j
  int order = 0;              // #{j < s : c in T_j}
};

struct ChildRecord {
  NiceInterval child;
  long transition_time;
};

enum class ReturnKind { central, non_central };
enum class Height { high, low };

struct NestLevel {
  NiceInterval interval;        // I^k
  long return_time;             // first return time of c to I^k
  ReturnKind kind;              // central iff c_{r_k} in I^{k+1}
  Height height;                // high iff f^{r_k}(I^{k+1}) contains c
  NiceInterval central_domain;  // I^{k+1}
};

struct CascadeRecord {
  std::vector<NiceInterval> levels;  // T, T^1, ..., T^m
  long shared_return_time = 0;
  bool maximal = false;
};

struct EntryDomain {
  Interval span;
  long time;
  std::size_t representative;  // orbit index of the first sample point found in it
  std::size_t hits;
};

// Pulls `target` back along points[0..s] where f(points[j]) = points[j+1] and
// points[s] lies in target.
Chain pullback_chain(Dynamics& dyn, const std::vector<CertifiedPoint>& points, const Interval& target);
// The same along the critical orbit c_from, ..., c_{from+s}.
Chain pullback_chain(Dynamics& dyn, std::size_t from, std::size_t s, const Interval& target);

NiceInterval seed_nice_interval(Dynamics& dyn);
// Component of f^{-n}(T) containing c; requires c_n in T.
NiceInterval critical_pullback(Dynamics& dyn, const NiceInterval& T, long n);

struct Landing {
  long time;
  CertifiedPoint point;
};
Landing first_entry(Dynamics& dyn, const CertifiedPoint& x, const Interval& T, long budget);
// First k >= 1 with c_{i+k} in T.
long first_entry_index(Dynamics& dyn, std::size_t i, const Interval& T, long budget);

Interval entry_domain(Dynamics& dyn, const CertifiedPoint& x, const Interval& T, long budget);
Interval entry_domain_of_orbit(Dynamics& dyn, std::size_t i, const Interval& T, long budget);

// Return domains of T met by c_i, i in [1, sample_end), sorted left to right.
std::vector<EntryDomain> return_domains(Dynamics& dyn, const NiceInterval& T, std::size_t sample_end,
                                        long budget);

std::vector<NestLevel> principal_nest(Dynamics& dyn, std::size_t depth, long budget);
std::vector<NestLevel> principal_nest(Dynamics& dyn, const NiceInterval& top, std::size_t depth,
                                      long budget);

std::vector<ChildRecord> children(Dynamics& dyn, const NiceInterval& T, long time_budget);

CascadeRecord central_cascade(Dynamics& dyn, const NiceInterval& T, long budget,
                              std::size_t max_levels = 4096);

// min(left gap, right gap) / |J| for J inside I.
CertifiedPoint well_inside_margin(const Interval& J, const Interval& I);

// Certifies f^j(boundary) outside the open interval for 1 <= j <= horizon.
// Only the prefix before the boundary reaches the root's periodic boundary
// orbit is iterated. Throws hypothesis_violation on failure.
void check_niceness(Dynamics& dyn, const NiceInterval& T, long horizon);

// Restrictive-interval test: T^1 = T for the pull-back at the return time s.
// Returns s when T is restrictive, nothing otherwise.
std::optional<long> restrictive_period(Dynamics& dyn, const NiceInterval& T, long budget);

// For a restrictive interval K of period s: the symmetric interval bounded by
// the orientation-reversing fixed point of f^s in K and its mirror image.
NiceInterval renormalization_seed(Dynamics& dyn, const NiceInterval& K, long s);

// Seed followed by successive renormalization seeds while the current one is
// restrictive, at most `count` intervals.
std::vector<NiceInterval> renormalization_tower(Dynamics& dyn, std::size_t count, long budget);

// Tab-separated record: origin, depth, left, right, and extra columns.
std::string report_line(const NiceInterval& T, const std::string& extra = "");

}  // namespace unimodal
