#include "unimodal/arith.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

namespace unimodal {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::horizon_exceeded: return "horizon-exceeded";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::branch_budget_exceeded: return "branch-budget-exceeded";
    case ErrorKind::no_fixed_point: return "no-fixed-point";
    case ErrorKind::superattracting: return "superattracting";
    case ErrorKind::not_in_domain: return "not-in-domain";
    case ErrorKind::not_contained: return "not-contained";
    case ErrorKind::not_a_cutting_sequence: return "not-a-cutting-sequence";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::renormalization_detected: return "renormalization-detected";
    case ErrorKind::hypothesis_violation: return "hypothesis-violation";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::insufficient_horizon: return "insufficient-horizon";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::precision_exhausted: return 2;
    case ErrorKind::horizon_exceeded:
    case ErrorKind::budget_exceeded:
    case ErrorKind::branch_budget_exceeded:
    case ErrorKind::insufficient_horizon: return 3;
    case ErrorKind::hypothesis_violation: return 4;
    case ErrorKind::config: return 5;
    default: return 1;
  }
}

CertifiedPoint::CertifiedPoint(Precision prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedPoint::CertifiedPoint(double value, Precision prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_d(lo_, value, MPFR_RNDD);
  mpfr_set_d(hi_, value, MPFR_RNDU);
}

CertifiedPoint::CertifiedPoint(const CertifiedPoint& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

CertifiedPoint::CertifiedPoint(CertifiedPoint&& other) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

CertifiedPoint& CertifiedPoint::operator=(const CertifiedPoint& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

CertifiedPoint& CertifiedPoint::operator=(CertifiedPoint&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

CertifiedPoint::~CertifiedPoint() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedPoint CertifiedPoint::parse(std::string_view text, Precision prec) {
  std::string s(text);
  CertifiedPoint p(prec);
  char* end = nullptr;
  mpfr_strtofr(p.lo_, s.c_str(), &end, 0, MPFR_RNDD);
  if (end == s.c_str() || *end != '\0')
    throw Error(ErrorKind::invalid_argument, "not a number: '" + s + "'");
  mpfr_strtofr(p.hi_, s.c_str(), &end, 0, MPFR_RNDU);
  return p;
}

CertifiedPoint CertifiedPoint::hull(const CertifiedPoint& a, const CertifiedPoint& b) {
  CertifiedPoint p(std::max(a.precision(), b.precision()));
  mpfr_min(p.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(p.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return p;
}

void CertifiedPoint::set_precision(Precision prec) {
  mpfr_prec_round(lo_, prec, MPFR_RNDD);
  mpfr_prec_round(hi_, prec, MPFR_RNDU);
}

double CertifiedPoint::midpoint() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double CertifiedPoint::width() const {
  mpfr_t w;
  mpfr_init2(w, 53);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

double CertifiedPoint::radius() const {
  // Half the width bounds the distance from the decimal midpoint up to the
  // rounding of the midpoint itself, which the extra ulp absorbs.
  double w = width();
  return w == 0.0 ? 0.0 : std::nextafter(w / 2, INFINITY);
}

std::string CertifiedPoint::to_string(int digits) const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  std::unique_ptr<char[]> buf(new char[digits + 64]);
  mpfr_snprintf(buf.get(), digits + 64, "%.*Rg", digits, m);
  mpfr_clear(m);
  char rad[64];
  std::snprintf(rad, sizeof rad, "%.3g", radius());
  return std::string(buf.get()) + " +- " + rad;
}

static std::string hex_of(mpfr_srcptr x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%Ra", x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string CertifiedPoint::lower_hex() const { return hex_of(lo_); }
std::string CertifiedPoint::upper_hex() const { return hex_of(hi_); }

Order compare(const CertifiedPoint& a, const CertifiedPoint& b) {
  if (mpfr_less_p(a.upper(), b.lower())) return Order::less;
  if (mpfr_greater_p(a.lower(), b.upper())) return Order::greater;
  if (a.is_exact() && b.is_exact() && mpfr_equal_p(a.lower(), b.lower())) return Order::equal;
  throw Undecided{};
}

Order compare(const CertifiedPoint& a, double b) {
  if (mpfr_cmp_d(a.upper(), b) < 0) return Order::less;
  if (mpfr_cmp_d(a.lower(), b) > 0) return Order::greater;
  if (a.is_exact() && mpfr_cmp_d(a.lower(), b) == 0) return Order::equal;
  throw Undecided{};
}

bool overlaps(const CertifiedPoint& a, const CertifiedPoint& b) {
  return !(mpfr_less_p(a.upper(), b.lower()) || mpfr_greater_p(a.lower(), b.upper()));
}

bool encloses(const CertifiedPoint& outer, const CertifiedPoint& inner) {
  return mpfr_lessequal_p(outer.lower(), inner.lower()) &&
         mpfr_greaterequal_p(outer.upper(), inner.upper());
}

static Precision joint(const CertifiedPoint& a, const CertifiedPoint& b) {
  return std::max(a.precision(), b.precision());
}

CertifiedPoint add(const CertifiedPoint& a, const CertifiedPoint& b) {
  CertifiedPoint r(joint(a, b));
  mpfr_add(r.lower(), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_add(r.upper(), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

CertifiedPoint sub(const CertifiedPoint& a, const CertifiedPoint& b) {
  CertifiedPoint r(joint(a, b));
  mpfr_sub(r.lower(), a.lower(), b.upper(), MPFR_RNDD);
  mpfr_sub(r.upper(), a.upper(), b.lower(), MPFR_RNDU);
  return r;
}

CertifiedPoint mul(const CertifiedPoint& a, const CertifiedPoint& b) {
  Precision prec = joint(a, b);
  CertifiedPoint r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lower(), a.upper()}) {
    for (mpfr_srcptr y : {b.lower(), b.upper()}) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lower())) mpfr_set(r.lower(), t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.upper())) mpfr_set(r.upper(), t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

CertifiedPoint div(const CertifiedPoint& a, const CertifiedPoint& b) {
  if (mpfr_sgn(b.lower()) <= 0 && mpfr_sgn(b.upper()) >= 0) throw Undecided{};
  Precision prec = joint(a, b);
  CertifiedPoint r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lower(), a.upper()}) {
    for (mpfr_srcptr y : {b.lower(), b.upper()}) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lower())) mpfr_set(r.lower(), t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.upper())) mpfr_set(r.upper(), t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

CertifiedPoint one_minus(const CertifiedPoint& a) {
  CertifiedPoint r(a.precision());
  mpfr_ui_sub(r.lower(), 1, a.upper(), MPFR_RNDD);
  mpfr_ui_sub(r.upper(), 1, a.lower(), MPFR_RNDU);
  return r;
}

CertifiedPoint min(const CertifiedPoint& a, const CertifiedPoint& b) {
  CertifiedPoint r(joint(a, b));
  mpfr_min(r.lower(), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_min(r.upper(), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

Interval::Interval(CertifiedPoint l, CertifiedPoint r) : left(std::move(l)), right(std::move(r)) {
  if (compare(left, right) != Order::less) throw Undecided{};
}

bool Interval::contains(const CertifiedPoint& x) const {
  return compare(left, x) == Order::less && compare(x, right) == Order::less;
}

bool Interval::contains(const Interval& inner) const {
  // Endpoints may coincide exactly (a domain sharing a boundary point).
  Order l = compare(left, inner.left);
  Order r = compare(inner.right, right);
  return l != Order::greater && r != Order::greater;
}

bool Interval::disjoint(const Interval& other) const {
  return compare(right, other.left) != Order::greater ||
         compare(other.right, left) != Order::greater;
}

std::string Interval::to_string(int digits) const {
  return "(" + left.to_string(digits) + ", " + right.to_string(digits) + ")";
}

}  // namespace unimodal
