#include "unimodal/odometer.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace unimodal {

void OdometerBase::validate() const {
  if (alpha.empty()) throw Error(ErrorKind::invalid_argument, "odometer base is empty");
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] < 2)
      throw Error(ErrorKind::invalid_argument,
                  "odometer digit " + std::to_string(i + 1) + " has p = " + std::to_string(alpha[i]) + " < 2");
}

std::uint64_t OdometerBase::state_count() const {
  validate();
  std::uint64_t n = 1;
  for (int p : alpha) {
    if (n > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p))
      throw Error(ErrorKind::invalid_argument, "odometer state space too large");
    n *= static_cast<std::uint64_t>(p);
  }
  return n;
}

void step_in_place(const OdometerBase& base, OdometerState& s) {
  for (std::size_t i = 0; i < s.digits.size(); ++i) {
    if (s.digits[i] < base.alpha[i] - 1) {
      ++s.digits[i];
      return;
    }
    s.digits[i] = 0;
  }
}

OdometerState step(const OdometerBase& base, const OdometerState& s) {
  if (s.digits.size() != base.alpha.size()) throw Error(ErrorKind::invalid_argument, "state length differs from base");
  for (std::size_t i = 0; i < s.digits.size(); ++i)
    if (s.digits[i] < 0 || s.digits[i] >= base.alpha[i])
      throw Error(ErrorKind::invalid_argument, "digit " + std::to_string(i + 1) + " out of range");
  OdometerState out = s;
  step_in_place(base, out);
  return out;
}

std::uint64_t state_index(const OdometerBase& base, const OdometerState& s) {
  std::uint64_t idx = 0;
  for (std::size_t i = s.digits.size(); i-- > 0;)
    idx = idx * static_cast<std::uint64_t>(base.alpha[i]) + static_cast<std::uint64_t>(s.digits[i]);
  return idx;
}

std::uint64_t orbit_period(const OdometerBase& base) {
  const std::uint64_t limit = base.state_count();
  OdometerState s{std::vector<int>(base.alpha.size(), 0)};
  auto is_zero = [&] {
    for (int d : s.digits)
      if (d != 0) return false;
    return true;
  };
  for (std::uint64_t n = 1; n <= limit; ++n) {
    step_in_place(base, s);
    if (s.digits[0] == 0 && is_zero()) return n;
  }
  // A finite permutation cannot avoid zero for longer than the state count.
  throw Error(ErrorKind::invalid_argument, "orbit of zero does not close");
}

bool is_bijection(const OdometerBase& base) {
  const std::uint64_t n = base.state_count();
  std::vector<std::uint8_t> hits(n, 0);
  const std::size_t m = base.alpha.size();
  OdometerState s{std::vector<int>(m, 0)};
  OdometerState image = s;
  for (std::uint64_t visited = 0; visited < n; ++visited) {
    // s runs over all states in mixed-radix order; image is rebuilt from it.
    std::copy(s.digits.begin(), s.digits.end(), image.digits.begin());
    step_in_place(base, image);
    std::uint8_t& h = hits[state_index(base, image)];
    if (h) return false;
    h = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (++s.digits[i] < base.alpha[i]) break;
      s.digits[i] = 0;
    }
  }
  return true;
}

std::string to_string(const OdometerState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.digits[i]);
  }
  return out + ")";
}

namespace {

[[noreturn]] void violation(int condition, std::size_t index, const std::string& what) {
  throw Error(ErrorKind::hypothesis_violation,
              "condition (" + std::string(condition == 2 ? "ii" : condition == 3 ? "iii" : "iv") +
                  ") fails at orbit index " + std::to_string(index) + ": " + what);
}

// First t >= 1 with sample point i + t in T, or -1 past the sample.
long next_return(const OrbitSample& sample, std::size_t i, std::size_t probe_T) {
  for (std::size_t j = i + 1; j < sample.size(); ++j)
    if (sample.in(j, probe_T)) return static_cast<long>(j - i);
  return -1;
}

}  // namespace

CyclicCover build_cyclic_cover(const CoverIntervals& iv, const OrbitSample& sample, const CoverProbes& probes) {
  const Precision prec = iv.T.left.precision();
  CertifiedPoint c(kCritical, prec);
  if (!iv.T_prime.contains(c)) violation(2, 0, "T' does not contain c");
  if (!iv.T.contains(iv.T_prime) || !iv.T.contains(iv.Q) || !iv.T.contains(iv.Q_hat))
    violation(2, 0, "a domain is not inside T");
  if (!iv.T_prime.disjoint(iv.Q) || !iv.T_prime.disjoint(iv.Q_hat) || !iv.Q.disjoint(iv.Q_hat))
    violation(2, 0, "T', Q and Q^ are not three distinct domains");
  // Q^ is the mirror of Q; for this symmetric family f(x^) = f(x).
  CertifiedPoint ml = one_minus(iv.Q.right), mr = one_minus(iv.Q.left);
  if (!overlaps(ml, iv.Q_hat.left) || !overlaps(mr, iv.Q_hat.right)) violation(2, 0, "Q^ is not the mirror of Q");

  auto in_Q = [&](std::size_t i) { return sample.in(i, probes.Q) || sample.in(i, probes.Q_hat); };
  CyclicCover cover;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    bool from_T = sample.in(i, probes.T_prime), from_Q = in_Q(i);
    if (!from_T && !from_Q) continue;
    long t = next_return(sample, i, probes.T);
    if (t < 0) continue;
    if (from_T) {
      if (cover.k == 0) cover.k = t;
      if (t != cover.k) violation(3, i, "return time " + std::to_string(t) + " differs from " + std::to_string(cover.k));
      if (!in_Q(i + static_cast<std::size_t>(t))) violation(3, i, "returns outside Q u Q^");
    } else {
      if (cover.l == 0) cover.l = t;
      if (t != cover.l) violation(4, i, "return time " + std::to_string(t) + " differs from " + std::to_string(cover.l));
      if (!sample.in(i + static_cast<std::size_t>(t), probes.T_prime)) violation(4, i, "returns outside T'");
    }
  }
  if (cover.k == 0 || cover.l == 0) throw Error(ErrorKind::insufficient_data, "sample never returns from T' and Q");

  cover.label.assign(sample.size(), -1);
  cover.sets.resize(static_cast<std::size_t>(cover.period()));
  std::vector<double> lo(cover.sets.size(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(cover.sets.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    int label = -1;
    for (long j = 0; j < cover.k && j <= static_cast<long>(i); ++j)
      if (sample.in(i - static_cast<std::size_t>(j), probes.T_prime)) {
        label = static_cast<int>(j);
        break;
      }
    for (long j = 0; j < cover.l && j <= static_cast<long>(i); ++j)
      if (in_Q(i - static_cast<std::size_t>(j))) {
        if (label >= 0)
          throw Error(ErrorKind::hypothesis_violation, "U_j sets overlap at orbit index " + std::to_string(i));
        label = static_cast<int>(cover.k + j);
        break;
      }
    if (label < 0) continue;
    cover.label[i] = label;
    auto u = static_cast<std::size_t>(label);
    cover.sets[u].push_back(i);
    lo[u] = std::min(lo[u], sample.approx[i]);
    hi[u] = std::max(hi[u], sample.approx[i]);
  }
  for (std::size_t u = 0; u < cover.sets.size(); ++u)
    cover.diameter.push_back(cover.sets[u].empty() ? 0.0 : hi[u] - lo[u]);
  return cover;
}

void check_shrinking(const std::vector<CoverIntervals>& levels) {
  for (std::size_t n = 1; n < levels.size(); ++n)
    if (compare(levels[n].T.length(), levels[n - 1].T.length()) != Order::less)
      throw Error(ErrorKind::hypothesis_violation,
                  "condition (i) fails: |T_" + std::to_string(n + 1) + "| is not below |T_" + std::to_string(n) + "|");
}

bool is_cyclic(const CyclicCover& cover) {
  const long period = cover.period();
  for (std::size_t i = 0; i + 1 < cover.label.size(); ++i) {
    if (cover.label[i] < 0 || cover.label[i + 1] < 0) continue;
    if (cover.label[i + 1] != (cover.label[i] + 1) % period) return false;
  }
  return true;
}

bool refinement_check(const CyclicCover& coarse, const CyclicCover& fine) {
  if (coarse.label.size() != fine.label.size()) return false;
  for (const auto& set : fine.sets) {
    int home = -2;
    for (std::size_t i : set) {
      int c = coarse.label[i];
      if (c < 0) return false;
      if (home == -2) home = c;
      if (c != home) return false;
    }
  }
  return true;
}

std::vector<long> base_data(const std::vector<CyclicCover>& covers) {
  std::vector<long> alpha;
  long prev = 1;
  for (const auto& c : covers) {
    if (c.period() % prev != 0)
      throw Error(ErrorKind::hypothesis_violation,
                  "period " + std::to_string(c.period()) + " is not a multiple of " + std::to_string(prev));
    alpha.push_back(c.period() / prev);
    prev = c.period();
  }
  return alpha;
}

std::string base_data_line(const std::vector<long>& alpha) {
  std::string out = "alpha:";
  for (long p : alpha) out += " " + std::to_string(p);
  return out;
}

std::string CyclicCover::to_text(const OrbitSample& sample) const {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    os << "U " << j << '\t' << sets[j].size();
    if (!sets[j].empty()) {
      auto [lo, hi] = std::minmax_element(sets[j].begin(), sets[j].end(),
                                          [&](std::size_t a, std::size_t b) { return sample.approx[a] < sample.approx[b]; });
      os << '\t' << sample.approx[*lo] << '\t' << sample.approx[*hi];
    }
    os << '\n';
  }
  return os.str();
}

std::vector<CoverIntervals> nest_cover_intervals(Dynamics& dyn, std::size_t levels, long budget) {
  auto nest = principal_nest(dyn, 2 * levels + 1, budget);
  std::vector<CoverIntervals> out;
  for (std::size_t n = 1; n <= levels; ++n) {
    const NestLevel& top = nest[2 * n];
    Interval Q = entry_domain_of_orbit(dyn, static_cast<std::size_t>(top.return_time), top.interval.span, budget);
    Interval Q_hat(one_minus(Q.right), one_minus(Q.left));
    out.push_back({top.interval.span, top.central_domain.span, std::move(Q), std::move(Q_hat)});
  }
  return out;
}

}  // namespace unimodal
