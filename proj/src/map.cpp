#include "unimodal/map.hpp"

#include <cmath>
#include <sstream>

namespace unimodal {

char to_char(Side s) noexcept {
  switch (s) {
    case Side::L: return 'L';
    case Side::C: return 'C';
    case Side::R: return 'R';
  }
  return '?';
}

MapSpec MapSpec::from_double(double a, double ell) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", a);
  return MapSpec{buf, ell};
}

void MapSpec::validate() const {
  if (!(ell > 1.0) || !std::isfinite(ell))
    throw Error(ErrorKind::invalid_argument, "critical order must be a finite real > 1");
  CertifiedPoint p = parameter(128);
  if (mpfr_sgn(p.lower()) <= 0 || mpfr_cmp_ui(p.upper(), 1) > 0)
    throw Error(ErrorKind::invalid_argument, "parameter must lie in (0, 1]: " + a);
}

CertifiedPoint MapSpec::parameter(Precision prec) const { return CertifiedPoint::parse(a, prec); }

double MapSpec::approx_parameter() const { return parameter(64).midpoint(); }

CertifiedPoint critical_point(Precision prec) { return CertifiedPoint(0.5, prec); }

MapEvaluator::MapEvaluator(const MapSpec& map, Precision prec)
    : map_(map), prec_(prec), a_(map.parameter(prec)) {
  integer_ell_ = std::floor(map.ell) == map.ell && map.ell < 1e6;
  ell_int_ = integer_ell_ ? static_cast<unsigned long>(map.ell) : 0;
  for (mpfr_ptr v : {ell_, inv_ell_lo_, inv_ell_hi_, t_lo_, t_hi_, u_lo_, u_hi_}) mpfr_init2(v, prec);
  mpfr_set_d(ell_, map.ell, MPFR_RNDN);  // a double is exact at >= 53 bits
  mpfr_ui_div(inv_ell_lo_, 1, ell_, MPFR_RNDD);
  mpfr_ui_div(inv_ell_hi_, 1, ell_, MPFR_RNDU);
}

MapEvaluator::~MapEvaluator() {
  for (mpfr_ptr v : {ell_, inv_ell_lo_, inv_ell_hi_, t_lo_, t_hi_, u_lo_, u_hi_}) mpfr_clear(v);
}

void MapEvaluator::apply(const CertifiedPoint& x, CertifiedPoint& out) {
  // t = 2x - 1
  mpfr_mul_2ui(t_lo_, x.lower(), 1, MPFR_RNDD);
  mpfr_sub_ui(t_lo_, t_lo_, 1, MPFR_RNDD);
  mpfr_mul_2ui(t_hi_, x.upper(), 1, MPFR_RNDU);
  mpfr_sub_ui(t_hi_, t_hi_, 1, MPFR_RNDU);
  // |t|
  if (mpfr_sgn(t_hi_) <= 0) {
    mpfr_neg(u_lo_, t_hi_, MPFR_RNDD);
    mpfr_neg(t_hi_, t_lo_, MPFR_RNDU);
    mpfr_set(t_lo_, u_lo_, MPFR_RNDD);
  } else if (mpfr_sgn(t_lo_) < 0) {
    mpfr_neg(t_lo_, t_lo_, MPFR_RNDU);
    mpfr_max(t_hi_, t_hi_, t_lo_, MPFR_RNDU);
    mpfr_set_zero(t_lo_, 1);
  }
  // |t|^ell, increasing in |t|
  if (integer_ell_) {
    mpfr_pow_ui(u_lo_, t_lo_, ell_int_, MPFR_RNDD);
    mpfr_pow_ui(u_hi_, t_hi_, ell_int_, MPFR_RNDU);
  } else {
    mpfr_pow(u_lo_, t_lo_, ell_, MPFR_RNDD);
    mpfr_pow(u_hi_, t_hi_, ell_, MPFR_RNDU);
  }
  // v = 1 - |t|^ell, kept in t
  mpfr_ui_sub(t_lo_, 1, u_hi_, MPFR_RNDD);
  mpfr_ui_sub(t_hi_, 1, u_lo_, MPFR_RNDU);
  mpfr_set_prec(out.lower(), prec_);
  mpfr_set_prec(out.upper(), prec_);
  // a * v with a > 0
  if (mpfr_sgn(t_lo_) >= 0) {
    mpfr_mul(out.lower(), a_.lower(), t_lo_, MPFR_RNDD);
    mpfr_mul(out.upper(), a_.upper(), t_hi_, MPFR_RNDU);
  } else if (mpfr_sgn(t_hi_) <= 0) {
    mpfr_mul(out.lower(), a_.upper(), t_lo_, MPFR_RNDD);
    mpfr_mul(out.upper(), a_.lower(), t_hi_, MPFR_RNDU);
  } else {
    mpfr_mul(out.lower(), a_.upper(), t_lo_, MPFR_RNDD);
    mpfr_mul(out.upper(), a_.upper(), t_hi_, MPFR_RNDU);
  }
}

CertifiedPoint MapEvaluator::operator()(const CertifiedPoint& x) {
  CertifiedPoint out(prec_);
  apply(x, out);
  return out;
}

CertifiedPoint MapEvaluator::preimage(const CertifiedPoint& y, Side lap) {
  // w = 1 - y/a, decreasing in y
  mpfr_div(t_lo_, y.upper(), mpfr_sgn(y.upper()) >= 0 ? a_.lower() : a_.upper(), MPFR_RNDU);
  mpfr_ui_sub(t_lo_, 1, t_lo_, MPFR_RNDD);
  mpfr_div(t_hi_, y.lower(), mpfr_sgn(y.lower()) >= 0 ? a_.upper() : a_.lower(), MPFR_RNDD);
  mpfr_ui_sub(t_hi_, 1, t_hi_, MPFR_RNDU);
  if (mpfr_sgn(t_hi_) < 0)
    throw Error(ErrorKind::not_in_domain, "value above the critical value has no preimage");
  if (mpfr_sgn(t_lo_) < 0) {
    // y overlaps a: exact only when both are the same exact number.
    if (y.is_exact() && a_.is_exact() && mpfr_equal_p(y.lower(), a_.lower()))
      mpfr_set_zero(t_lo_, 1);
    else
      throw Undecided{};
  }
  // g = w^(1/ell), increasing in w
  if (integer_ell_) {
    mpfr_rootn_ui(u_lo_, t_lo_, ell_int_, MPFR_RNDD);
    mpfr_rootn_ui(u_hi_, t_hi_, ell_int_, MPFR_RNDU);
  } else {
    // w^e is monotone in e; take the extreme over the exponent enclosure.
    mpfr_t alt;
    mpfr_init2(alt, prec_);
    mpfr_pow(u_lo_, t_lo_, inv_ell_lo_, MPFR_RNDD);
    mpfr_pow(alt, t_lo_, inv_ell_hi_, MPFR_RNDD);
    mpfr_min(u_lo_, u_lo_, alt, MPFR_RNDD);
    mpfr_pow(u_hi_, t_hi_, inv_ell_lo_, MPFR_RNDU);
    mpfr_pow(alt, t_hi_, inv_ell_hi_, MPFR_RNDU);
    mpfr_max(u_hi_, u_hi_, alt, MPFR_RNDU);
    mpfr_clear(alt);
  }
  mpfr_div_2ui(u_lo_, u_lo_, 1, MPFR_RNDD);
  mpfr_div_2ui(u_hi_, u_hi_, 1, MPFR_RNDU);
  CertifiedPoint x(prec_);
  if (lap == Side::L) {
    mpfr_d_sub(x.lower(), 0.5, u_hi_, MPFR_RNDD);
    mpfr_d_sub(x.upper(), 0.5, u_lo_, MPFR_RNDU);
  } else {
    mpfr_add_d(x.lower(), u_lo_, 0.5, MPFR_RNDD);
    mpfr_add_d(x.upper(), u_hi_, 0.5, MPFR_RNDU);
  }
  return x;
}

Side MapEvaluator::side(const CertifiedPoint& x) {
  switch (compare(x, kCritical)) {
    case Order::less: return Side::L;
    case Order::greater: return Side::R;
    case Order::equal: return Side::C;
  }
  return Side::C;
}

CertifiedPoint evaluate(const MapSpec& m, const CertifiedPoint& x) {
  MapEvaluator f(m, x.precision());
  return f(x);
}

CertifiedPoint iterate(const MapSpec& m, const CertifiedPoint& x, std::size_t n) {
  MapEvaluator f(m, x.precision());
  CertifiedPoint y = x;
  for (std::size_t i = 0; i < n; ++i) f.apply(y, y);
  return y;
}

CertifiedPoint iterate(const MapSpec& m, const CertifiedPoint& x, std::size_t n, double tol,
                       const PrecisionPolicy& policy) {
  return with_precision(policy, [&](Precision prec) {
    CertifiedPoint start = x;
    if (prec > start.precision()) start.set_precision(prec);
    CertifiedPoint y = iterate(m, start, n);
    if (y.radius() > tol) throw Undecided{};
    return y;
  });
}

CertifiedPoint hat_point(const MapSpec&, const CertifiedPoint& x) { return one_minus(x); }

CertifiedPoint fixed_point_q(const MapSpec& m, Precision prec) {
  MapEvaluator f(m, prec);
  if (compare(f.critical_value(), kCritical) != Order::greater)
    throw Error(ErrorKind::no_fixed_point, "f(c) <= c: no orientation-reversing fixed point");
  // f(x) - x is strictly decreasing on [c, 1], positive at c and negative at 1.
  CertifiedPoint lo(0.5, prec), hi(1.0, prec), mid(prec), fx(prec);
  for (Precision step = 0; step < prec + 4; ++step) {
    mpfr_add(mid.lower(), lo.lower(), hi.lower(), MPFR_RNDN);
    mpfr_div_2ui(mid.lower(), mid.lower(), 1, MPFR_RNDN);
    mpfr_set(mid.upper(), mid.lower(), MPFR_RNDN);
    if (mpfr_equal_p(mid.lower(), lo.lower()) || mpfr_equal_p(mid.lower(), hi.lower())) break;
    f.apply(mid, fx);
    Order o;
    try {
      o = compare(fx, mid);
    } catch (const Undecided&) {
      break;
    }
    if (o == Order::equal) return mid;
    (o == Order::greater ? lo : hi) = mid;
  }
  CertifiedPoint q(prec);
  mpfr_set(q.lower(), lo.lower(), MPFR_RNDD);
  mpfr_set(q.upper(), hi.lower(), MPFR_RNDU);
  return q;
}

namespace {

struct PartialBranch {
  CertifiedPoint left, right;          // the branch in the window
  CertifiedPoint image_left, image_right;  // f^j of the endpoints
  std::vector<Side> word;              // laps of f^i(branch), i < j
  int orientation;
};

}  // namespace

std::vector<Branch> monotone_branches(const MapSpec& m, std::size_t n, const Interval& window,
                                      std::size_t branch_cap) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "monotone_branches needs n >= 1");
  Precision prec = std::max(window.left.precision(), window.right.precision());
  MapEvaluator f(m, prec);
  CertifiedPoint c = critical_point(prec);
  std::vector<PartialBranch> branches;
  branches.push_back({window.left, window.right, window.left, window.right, {}, +1});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<PartialBranch> next;
    for (auto& b : branches) {
      // The image interval f^j(branch), oriented low to high.
      const CertifiedPoint& lo = b.orientation > 0 ? b.image_left : b.image_right;
      const CertifiedPoint& hi = b.orientation > 0 ? b.image_right : b.image_left;
      bool splits = compare(lo, c) == Order::less && compare(c, hi) == Order::less;
      auto lap_of = [&](const CertifiedPoint& low, const CertifiedPoint& high) {
        // The image lies on one lap; decide it from whichever end is not c.
        Order o = compare(low, c);
        if (o == Order::equal) o = compare(high, c);
        return o == Order::less ? Side::L : Side::R;
      };
      if (!splits) {
        Side lap = lap_of(lo, hi);
        PartialBranch nb = b;
        nb.word.push_back(lap);
        if (lap == Side::R) nb.orientation = -nb.orientation;
        nb.image_left = f(b.image_left);
        nb.image_right = f(b.image_right);
        next.push_back(std::move(nb));
        continue;
      }
      // Pull c back along the laps recorded so far to find the separator.
      CertifiedPoint x = c;
      for (std::size_t i = b.word.size(); i-- > 0;) x = f.preimage(x, b.word[i]);
      if (!(compare(b.left, x) == Order::less && compare(x, b.right) == Order::less))
        throw Undecided{};
      Side first_lap = b.orientation > 0 ? Side::L : Side::R;
      Side second_lap = first_lap == Side::L ? Side::R : Side::L;
      PartialBranch left_part{b.left, x, b.image_left, c, b.word, b.orientation};
      PartialBranch right_part{x, b.right, c, b.image_right, b.word, b.orientation};
      left_part.word.push_back(first_lap);
      right_part.word.push_back(second_lap);
      for (PartialBranch* p : {&left_part, &right_part}) {
        if (p->word.back() == Side::R) p->orientation = -p->orientation;
        p->image_left = f(p->image_left);
        p->image_right = f(p->image_right);
        next.push_back(std::move(*p));
      }
    }
    if (next.size() > branch_cap)
      throw Error(ErrorKind::branch_budget_exceeded,
                  "more than " + std::to_string(branch_cap) + " monotone branches");
    branches = std::move(next);
  }
  std::vector<Branch> out;
  for (auto& b : branches) out.push_back({Interval(b.left, b.right), b.orientation});
  return out;
}

}  // namespace unimodal
