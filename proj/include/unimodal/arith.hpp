#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include "unimodal/errors.hpp"

namespace unimodal {

using Precision = mpfr_prec_t;

struct PrecisionPolicy {
  Precision start = 64;
  Precision cap = 4096;
};

// Rigorous enclosure [lower, upper] of a real number, with outward rounding
// in every operation that produces one.
class CertifiedPoint {
 public:
  explicit CertifiedPoint(Precision prec = 64);
  CertifiedPoint(double value, Precision prec);
  CertifiedPoint(const CertifiedPoint& other);
  CertifiedPoint(CertifiedPoint&& other) noexcept;
  CertifiedPoint& operator=(const CertifiedPoint& other);
  CertifiedPoint& operator=(CertifiedPoint&& other) noexcept;
  ~CertifiedPoint();

  // Accepts decimal ("0.9781") or hex-float ("0x1.f4p-1") text. Dyadic
  // literals that fit the precision are held exactly.
  static CertifiedPoint parse(std::string_view text, Precision prec);
  static CertifiedPoint hull(const CertifiedPoint& a, const CertifiedPoint& b);

  mpfr_srcptr lower() const noexcept { return lo_; }
  mpfr_srcptr upper() const noexcept { return hi_; }
  mpfr_ptr lower() noexcept { return lo_; }
  mpfr_ptr upper() noexcept { return hi_; }

  Precision precision() const noexcept { return mpfr_get_prec(lo_); }
  // Changes the working precision, rounding the bounds outward.
  void set_precision(Precision prec);

  double midpoint() const;
  // Upper bound for half the width.
  double radius() const;
  double width() const;
  bool is_exact() const { return mpfr_equal_p(lo_, hi_) != 0; }

  // Decimal rendering "mid +- rad" with the given number of significant digits.
  std::string to_string(int digits = 17) const;
  // Exact hexadecimal rendering of the lower bound (used for witnesses).
  std::string lower_hex() const;
  std::string upper_hex() const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

enum class Order { less, equal, greater };

// Certified comparison; equal is only returned for two identical exact points.
// Throws Undecided when the enclosures overlap otherwise.
Order compare(const CertifiedPoint& a, const CertifiedPoint& b);
Order compare(const CertifiedPoint& a, double b);

bool overlaps(const CertifiedPoint& a, const CertifiedPoint& b);
// True when every point of `inner` lies in the closed enclosure `outer`.
bool encloses(const CertifiedPoint& outer, const CertifiedPoint& inner);

CertifiedPoint add(const CertifiedPoint& a, const CertifiedPoint& b);
CertifiedPoint sub(const CertifiedPoint& a, const CertifiedPoint& b);
CertifiedPoint mul(const CertifiedPoint& a, const CertifiedPoint& b);
// Requires b bounded away from zero; throws Undecided otherwise.
CertifiedPoint div(const CertifiedPoint& a, const CertifiedPoint& b);
CertifiedPoint one_minus(const CertifiedPoint& a);
CertifiedPoint min(const CertifiedPoint& a, const CertifiedPoint& b);

// Open interval with certified left < right.
struct Interval {
  CertifiedPoint left;
  CertifiedPoint right;

  Interval(CertifiedPoint l, CertifiedPoint r);
  CertifiedPoint length() const { return sub(right, left); }
  // Certified strict membership of a point in the open interval.
  bool contains(const CertifiedPoint& x) const;
  bool contains(const Interval& inner) const;
  bool disjoint(const Interval& other) const;
  std::string to_string(int digits = 17) const;
};

// Runs body(prec) with prec = start, 2*start, ... until it returns without
// raising Undecided. Gives up with precision_exhausted past the cap.
template <class Body>
auto with_precision(const PrecisionPolicy& policy, Body&& body) {
  for (Precision prec = policy.start;; prec *= 2) {
    try {
      return body(prec);
    } catch (const Undecided&) {
      if (prec >= policy.cap)
        throw Error(ErrorKind::precision_exhausted,
                    "undecided at the precision cap of " + std::to_string(policy.cap) + " bits");
    }
  }
}

}  // namespace unimodal
