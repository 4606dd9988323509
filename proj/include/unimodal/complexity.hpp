#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimodal/coding.hpp"
#include "unimodal/nice.hpp"

namespace unimodal {

struct NiceCover {
  NiceInterval base;
  OrbitCoding coding;
  // Geometric span per element, filled for elements whose representative
  // lies within the geometry horizon.
  std::vector<std::optional<Interval>> spans;
};

// `probe` selects which membership bit of the sample encodes Y.
NiceCover build_nice_cover(Dynamics& dyn, const NiceInterval& Y, const OrbitSample& sample,
                           std::size_t probe, std::size_t geometry_horizon = 20000);

// Single-n evaluations; the curve builder below computes all n in one sweep.
std::size_t q_of_n(const OrbitCoding& coding, std::size_t n);
std::size_t p_of_n(const OrbitCoding& coding, std::size_t n);

struct ChildScan {
  std::vector<long> times;  // transition times of the children found
  long scanned_to = 0;      // every s <= scanned_to was decided
  bool complete = true;     // false when the scan stopped short of the budget
};

// Children of Y_{-i}, the critical component of f^{-i}(W), by transition time.
ChildScan symbolic_children(const AgreementDepths& depths, long i, long time_budget);

struct EssentialOrderRecord {
  long n = 0;
  std::vector<long> critical_indices;  // i_0 = 0 > i_1 > ... > i_p = -n
  std::vector<long> transition_times;  // s_1 .. s_p
  long M = 0;                          // distinct transition times
  std::vector<long> jumps;             // m(1) = 1 < m(2) < ..., 1-based
};

// Requires c_n in Y; throws not_in_domain otherwise.
EssentialOrderRecord essential_order(const AgreementDepths& depths, const OrbitCoding& coding, long n);

struct EssentialOrderCheck {
  bool monotone = true;       // s non-decreasing
  bool growth = true;         // s_{m(j)} >= s_{m(j-1)} (m(j) - m(j-1)) + s_{m(j-2)}
  bool fibonacci = true;      // s_{m(j)} > s_{m(j-1)} + s_{m(j-2)}
};
EssentialOrderCheck check_essential_order(const EssentialOrderRecord& rec);

struct CurveRow {
  long n = 0;
  long q = 0;
  long p = 0;       // p(n); p(0) = 1
  long p_next = 0;  // p(n + 1)
  std::optional<long> M;
  long nu = 0;      // children of Y_{-n}
  long nu_sum = 0;  // sum over i < n
  bool nu_complete = true;
  std::optional<long> second_child;  // transition time, for n in N_Y
};

struct CurveMeta {
  MapSpec map;
  std::string preset;
  std::string cover;
  long n_orbit = 0;
  long transition_budget = 0;
  long walk_cap = 0;
  long iterate_budget = 0;
  Precision precision_cap = 0;
  Precision precision_used = 0;
  long elements = 0;
  long dropped = 0;
};

struct ComplexityCurve {
  CurveMeta meta;
  std::vector<CurveRow> rows;
  std::vector<EssentialOrderRecord> essential;
  long max_child_time_Y = 0;
  bool children_complete_Y = true;

  std::string to_csv() const;
  std::string sidecar_json() const;
};

struct CurveOptions {
  long n_max = 200;
  long transition_budget = 2048;
};

ComplexityCurve complexity_curve(const OrbitCoding& coding, const CurveOptions& opts);

struct SandwichViolation {
  long n;
  int inequality;  // 1: p(n+1) <= q(n), 2: q(n) <= nu_sum(n)
  long lhs, rhs;
};
struct SandwichReport {
  std::vector<SandwichViolation> violations;
  long upper_from = 0;  // first n at which the upper bound is checked
  std::string notice;
};
SandwichReport sandwich_check(const ComplexityCurve& curve);

struct AnnulusCount {
  std::size_t level;
  std::size_t sides_hit;       // components of Y_k \ Y_{k+1} meeting the sample
  std::size_t domains_hit;     // return domains of Y_k inside the annulus meeting it
};
struct SpecialCombinatoricsReport {
  bool holds = false;
  bool applicable = true;
  std::vector<AnnulusCount> levels;
  std::string notice;
};
// The sample's probes 0..depth must be the principal nest I^0 ⊃ ... ⊃ I^depth.
SpecialCombinatoricsReport special_combinatorics_check(const OrbitSample& sample, std::size_t depth,
                                                       std::size_t sample_limit = 50000);
// Builds the nest and the sample itself.
SpecialCombinatoricsReport special_combinatorics_check(const MapSpec& m, std::size_t depth,
                                                       std::size_t n_orbit, long budget,
                                                       const PrecisionPolicy& policy = {});

enum class GrowthModel { constant, linear, n_log_n, quadratic };
const char* to_string(GrowthModel g) noexcept;

struct GrowthFit {
  GrowthModel model;
  double C;
  double residual;
};
struct GrowthReport {
  GrowthModel best;
  double best_C;
  std::vector<GrowthFit> fits;
  double sup_over_nlogn;
  double inf_over_n;
  std::string to_text() const;
};
// Least squares against C, Cn, Cn log n and the super-(n log n) sentinel Cn^2.
GrowthReport growth_classify(const std::vector<std::pair<long, double>>& series);

}  // namespace unimodal
