#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimodal/arith.hpp"

namespace unimodal {

enum class Side : std::uint8_t { L = 0, C = 1, R = 2 };

char to_char(Side s) noexcept;

// Symmetric power family x -> a(1 - |2x - 1|^ell) with critical point 1/2.
// The parameter is kept as text so that every precision re-reads it exactly.
struct MapSpec {
  std::string a = "1";
  double ell = 2.0;

  static MapSpec from_double(double a, double ell = 2.0);
  // Throws invalid_argument unless 0 < a <= 1 and ell > 1.
  void validate() const;
  CertifiedPoint parameter(Precision prec) const;
  double approx_parameter() const;
};

inline constexpr double kCritical = 0.5;

// Evaluation context at a fixed working precision. Holds scratch registers so
// the hot loops do not allocate.
class MapEvaluator {
 public:
  MapEvaluator(const MapSpec& map, Precision prec);
  MapEvaluator(const MapEvaluator&) = delete;
  MapEvaluator& operator=(const MapEvaluator&) = delete;
  ~MapEvaluator();

  Precision precision() const noexcept { return prec_; }
  const MapSpec& map() const noexcept { return map_; }
  // Enclosure of the critical value f(c) = a.
  const CertifiedPoint& critical_value() const noexcept { return a_; }

  // out may alias x. Width of out is at most 2*ell*a*width(x) plus a few
  // units in the last place of the working precision.
  void apply(const CertifiedPoint& x, CertifiedPoint& out);
  CertifiedPoint operator()(const CertifiedPoint& x);

  // The preimage of y on the given lap: 1/2 -+ (1 - y/a)^(1/ell) / 2.
  // y must lie in [0, a]; throws Undecided if that is not certain.
  CertifiedPoint preimage(const CertifiedPoint& y, Side lap);

  // Certified side of x relative to c; C only for the exact point 1/2.
  static Side side(const CertifiedPoint& x);

 private:
  MapSpec map_;
  Precision prec_;
  CertifiedPoint a_;
  bool integer_ell_;
  unsigned long ell_int_;
  mpfr_t ell_, inv_ell_lo_, inv_ell_hi_;
  mpfr_t t_lo_, t_hi_, u_lo_, u_hi_;
};

CertifiedPoint critical_point(Precision prec);

CertifiedPoint evaluate(const MapSpec& m, const CertifiedPoint& x);
// f^n(x) at the precision of x.
CertifiedPoint iterate(const MapSpec& m, const CertifiedPoint& x, std::size_t n);
// f^n(x) with precision raised until the radius is at most tol.
CertifiedPoint iterate(const MapSpec& m, const CertifiedPoint& x, std::size_t n, double tol,
                       const PrecisionPolicy& policy = {});
CertifiedPoint hat_point(const MapSpec& m, const CertifiedPoint& x);
// Orientation-reversing fixed point q in (c, 1). Throws no_fixed_point when f(c) <= c.
CertifiedPoint fixed_point_q(const MapSpec& m, Precision prec);

struct Branch {
  Interval span;
  int orientation;  // +1 increasing, -1 decreasing
};

// Maximal subintervals of the window on which f^n is strictly monotone, in
// left-to-right order.
std::vector<Branch> monotone_branches(const MapSpec& m, std::size_t n, const Interval& window,
                                      std::size_t branch_cap = 1u << 16);

}  // namespace unimodal
