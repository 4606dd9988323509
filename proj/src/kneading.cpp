#include "unimodal/kneading.hpp"

#include <algorithm>
#include <sstream>

namespace unimodal {

namespace {

// Itinerary at a fixed precision; throws Undecided at the first uncertain side.
Word itinerary_at(const MapSpec& m, std::size_t n, Precision prec) {
  MapEvaluator f(m, prec);
  CertifiedPoint x = critical_point(prec);
  Word w;
  w.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    f.apply(x, x);
    Side s = MapEvaluator::side(x);
    if (s == Side::C)
      throw Error(ErrorKind::superattracting,
                  "f^" + std::to_string(j) + "(c) = c: superattracting parameter");
    w.push_back(to_char(s));
  }
  return w;
}

}  // namespace

Word itinerary(const MapSpec& m, std::size_t n, const PrecisionPolicy& policy) {
  return with_precision(policy, [&](Precision prec) { return itinerary_at(m, n, prec); });
}

std::vector<long> cutting_times_from_symbols(const Word& symbols) {
  // symbols[j-1] is position j. Once S_k is known the image of (z_k, c)
  // under f^n spans f^{n-S_k}(c) .. f^n(c), so the next cutting time is the
  // first n where those two sides differ.
  std::vector<long> S{1};
  const long len = static_cast<long>(symbols.size());
  for (;;) {
    long sk = S.back();
    long n = sk + 1;
    while (n <= len && symbols[n - 1] == symbols[n - sk - 1]) ++n;
    if (n > len) break;
    S.push_back(n);
  }
  return S;
}

Word symbols_from_cutting_times(const std::vector<long>& S) {
  if (S.empty() || S[0] != 1) throw Error(ErrorKind::not_a_cutting_sequence, "S must start with 1");
  Word w(static_cast<std::size_t>(S.back()), '?');
  w[0] = 'R';
  for (std::size_t k = 0; k + 1 < S.size(); ++k) {
    if (S[k + 1] <= S[k]) throw Error(ErrorKind::not_a_cutting_sequence, "S must increase");
    for (long n = S[k] + 1; n < S[k + 1]; ++n) w[n - 1] = w[n - S[k] - 1];
    char prev = w[S[k + 1] - S[k] - 1];
    w[S[k + 1] - 1] = prev == 'L' ? 'R' : 'L';
  }
  return w;
}

std::vector<long> kneading_map_from_S(const std::vector<long>& S) {
  if (S.empty() || S[0] != 1) throw Error(ErrorKind::not_a_cutting_sequence, "S[0] must be 1");
  std::vector<long> Q{0};
  for (std::size_t k = 0; k + 1 < S.size(); ++k) {
    if (S[k + 1] <= S[k]) throw Error(ErrorKind::not_a_cutting_sequence, "S must be strictly increasing");
    long d = S[k + 1] - S[k];
    auto it = std::lower_bound(S.begin(), S.begin() + static_cast<long>(k) + 1, d);
    if (it == S.begin() + static_cast<long>(k) + 1 || *it != d)
      throw Error(ErrorKind::not_a_cutting_sequence,
                  "difference " + std::to_string(d) + " at k=" + std::to_string(k + 1) +
                      " is not an earlier cutting time");
    Q.push_back(static_cast<long>(it - S.begin()));
  }
  return Q;
}

std::vector<long> S_from_Q(const std::vector<long>& Q, std::size_t K) {
  if (Q.size() < K + 1)
    throw Error(ErrorKind::index_out_of_range, "kneading map shorter than the requested count");
  std::vector<long> S{1};
  for (std::size_t k = 0; k < K; ++k) {
    long q = Q[k + 1];
    if (q < 0 || q > static_cast<long>(k))
      throw Error(ErrorKind::index_out_of_range,
                  "Q(" + std::to_string(k + 1) + ") = " + std::to_string(q) + " exceeds " + std::to_string(k));
    S.push_back(S[k] + S[static_cast<std::size_t>(q)]);
  }
  return S;
}

KneadingData cutting_times_partial(const MapSpec& m, std::size_t K, const CuttingTimeOptions& opts) {
  m.validate();
  KneadingData out;
  std::size_t len = 64;
  for (;;) {
    len = std::min<std::size_t>(len, static_cast<std::size_t>(opts.iterate_budget));
    out.symbols = itinerary(m, len, opts.precision);
    out.S = cutting_times_from_symbols(out.symbols);
    if (out.S.size() > K) {
      out.S.resize(K + 1);
      out.symbols.resize(static_cast<std::size_t>(out.S.back()));
      break;
    }
    if (len >= static_cast<std::size_t>(opts.iterate_budget)) {
      out.complete = false;
      break;
    }
    len *= 2;
  }
  out.Q = kneading_map_from_S(out.S);

  // z_k: pull c back along the laps of c_{S_k - 1}, ..., c_1, then take the
  // left preimage. Every f^j(z_k), 0 < j < S_k, shares its lap with f^j(c).
  // Below a = 1/2 the critical value sits left of c and no z_k exists.
  if (m.approx_parameter() < kCritical) return out;
  for (long sk : out.S) {
    if (sk > opts.z_limit) break;
    out.z.push_back(with_precision(opts.precision, [&](Precision prec) {
      MapEvaluator f(m, prec);
      CertifiedPoint x = critical_point(prec);
      for (long j = sk - 1; j >= 1; --j)
        x = f.preimage(x, out.symbols[static_cast<std::size_t>(j - 1)] == 'L' ? Side::L : Side::R);
      x = f.preimage(x, Side::L);
      if (compare(x, kCritical) != Order::less) throw Undecided{};
      return x;
    }));
  }
  return out;
}

KneadingData cutting_times(const MapSpec& m, std::size_t K, const CuttingTimeOptions& opts) {
  KneadingData d = cutting_times_partial(m, K, opts);
  if (!d.complete)
    throw Error(ErrorKind::horizon_exceeded,
                "only " + std::to_string(d.S.size()) + " cutting times within " +
                    std::to_string(opts.iterate_budget) + " iterates");
  return d;
}

std::string KneadingData::to_text() const {
  std::ostringstream os;
  os << "S:";
  for (long s : S) os << ' ' << s;
  os << "\nQ:";
  for (long q : Q) os << ' ' << q;
  os << "\nsym: " << symbols << '\n';
  for (std::size_t k = 0; k < z.size(); ++k) os << "z: " << k << ' ' << z[k].to_string(20) << '\n';
  if (!complete) os << "# notice: iterate budget reached before the requested cutting times\n";
  return os.str();
}

KneadingData KneadingData::from_text(const std::string& text) {
  KneadingData d;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "S:") {
      for (long v; ls >> v;) d.S.push_back(v);
    } else if (key == "Q:") {
      for (long v; ls >> v;) d.Q.push_back(v);
    } else if (key == "sym:") {
      ls >> d.symbols;
    } else if (key == "#") {
      if (line.find("notice") != std::string::npos) d.complete = false;
    }
  }
  return d;
}

WildCombinatorics wild_combinatorics(std::size_t K, long r0, long t0) {
  if (K < 1) throw Error(ErrorKind::invalid_argument, "wild_combinatorics needs K >= 1");
  WildCombinatorics w;
  w.r.push_back(r0);
  w.t.push_back(t0);
  for (std::size_t k = 0; k < K; ++k) {
    w.r.push_back(w.r[k] + w.t[k]);
    w.t.push_back(k % 2 == 1 ? w.r[k] : w.r[k + 1]);
  }
  auto& out = w.merged_cutting_times;
  out = {w.r[1], w.r[1] + w.r[0]};
  if (K >= 2) out.push_back(w.r[2]);
  for (std::size_t m = 1; 2 * m + 1 <= K; ++m) {
    out.push_back(w.r[2 * m + 1]);
    out.push_back(w.r[2 * m + 1] + w.r[2 * m]);
    if (2 * m + 2 <= K) out.push_back(w.r[2 * m + 2]);
  }
  w.k0_offset = detect_wild_offset(wild_cutting_times(w), w);
  return w;
}

std::vector<long> wild_cutting_times(const WildCombinatorics& w) {
  std::vector<long> S{1, 2, 3};
  S.insert(S.end(), w.merged_cutting_times.begin(), w.merged_cutting_times.end());
  return S;
}

std::optional<long> detect_wild_offset(const std::vector<long>& S, const WildCombinatorics& w) {
  const long n = static_cast<long>(S.size());
  for (long k0 = 0; k0 + 1 < n; ++k0) {
    bool ok = true;
    long checked = 0;
    for (std::size_t m = 0; ok; ++m) {
      long base = k0 + 3 * static_cast<long>(m);
      const long want[3] = {
          2 * m + 1 < w.r.size() ? w.r[2 * m + 1] : -1,
          2 * m + 1 < w.r.size() ? w.r[2 * m + 1] + w.r[2 * m] : -1,
          2 * m + 2 < w.r.size() ? w.r[2 * m + 2] : -1,
      };
      bool any = false;
      for (int i = 0; i < 3; ++i) {
        long idx = base + 1 + i;
        if (idx >= n || want[i] < 0) continue;
        any = true;
        ++checked;
        if (S[idx] != want[i]) ok = false;
      }
      if (!any) break;
    }
    if (ok && checked >= 3) return k0;
  }
  return std::nullopt;
}

std::optional<long> detect_closed_form_start(const std::vector<long>& Q, long k0) {
  auto closed = [&](long k) {
    long r = ((k - k0) % 3 + 3) % 3;
    return r == 0 ? k - 5 : r == 1 ? k - 3 : k - 2;
  };
  const long n = static_cast<long>(Q.size());
  long start = n;
  for (long k = n - 1; k >= 1; --k) {
    if (Q[k] != closed(k)) break;
    start = k;
  }
  if (start >= n) return std::nullopt;
  return start;
}

std::vector<BruinFailure> bruin_criterion(const std::vector<long>& Q, long k1, long N) {
  std::vector<BruinFailure> out;
  const long n = static_cast<long>(Q.size());
  for (long k = std::max(k1, 0L); k < n; ++k) {
    if (k + 1 < n) {
      long qk = Q[k];
      if (qk < 0 || qk >= n) throw Error(ErrorKind::index_out_of_range, "Q value outside its domain");
      if (Q[k + 1] < Q[qk] + 1) out.push_back({k, 1});
    }
    if (k - Q[k] > N) out.push_back({k, 2});
  }
  return out;
}

BisectionTarget BisectionTarget::from_S(std::vector<long> S) {
  kneading_map_from_S(S);  // validates
  return BisectionTarget{std::move(S)};
}

BisectionTarget BisectionTarget::from_Q(const std::vector<long>& Q) {
  if (Q.empty()) throw Error(ErrorKind::invalid_argument, "empty kneading map");
  return BisectionTarget{S_from_Q(Q, Q.size() - 1)};
}

namespace {

int compare_at(const MapSpec& m, const Word& target, Precision prec) {
  MapEvaluator f(m, prec);
  CertifiedPoint x = critical_point(prec);
  bool odd = false;
  for (std::size_t j = 0; j < target.size(); ++j) {
    f.apply(x, x);
    Side s = MapEvaluator::side(x);
    char sym = to_char(s);
    if (sym != target[j]) {
      auto rank = [](char ch) { return ch == 'L' ? 0 : ch == 'C' ? 1 : 2; };
      int r = rank(sym) < rank(target[j]) ? -1 : 1;
      return odd ? -r : r;
    }
    if (s == Side::R) odd = !odd;
  }
  return 0;
}

}  // namespace

int compare_to_target(const MapSpec& m, const Word& target, const PrecisionPolicy& policy) {
  return with_precision(policy, [&](Precision prec) { return compare_at(m, target, prec); });
}

ParameterEnclosure parameter_bisection(double ell, const BisectionTarget& target, double tol,
                                       const BisectionOptions& opts) {
  const Word word = symbols_from_cutting_times(target.S);
  const Precision bits = opts.max_steps + 128;
  mpfr_t lo, hi, mid, width;
  for (mpfr_ptr v : {lo, hi, mid, width}) mpfr_init2(v, bits);
  auto release = [&] { for (mpfr_ptr v : {lo, hi, mid, width}) mpfr_clear(v); };
  if (mpfr_set_str(lo, opts.lower.c_str(), 0, MPFR_RNDN) != 0 ||
      mpfr_set_str(hi, opts.upper.c_str(), 0, MPFR_RNDN) != 0) {
    release();
    throw Error(ErrorKind::invalid_argument, "bisection bounds must be exact dyadic literals");
  }
  auto hex = [](mpfr_srcptr v) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  };

  ParameterEnclosure out;
  bool matched = false;
  PrecisionPolicy policy = opts.precision;
  try {
    for (int step = 0; step < opts.max_steps; ++step) {
      mpfr_sub(width, hi, lo, MPFR_RNDU);
      if (matched && mpfr_cmp_d(width, tol) <= 0) break;
      mpfr_add(mid, lo, hi, MPFR_RNDN);
      mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
      MapSpec candidate{hex(mid), ell};
      Precision used = policy.start;
      int r = with_precision(policy, [&](Precision prec) {
        used = prec;
        return compare_at(candidate, word, prec);
      });
      // Later candidates sit closer to the boundary; never restart below the
      // last precision that worked.
      policy.start = used;
      out.precision = std::max(out.precision, used);
      if (r < 0) {
        mpfr_set(lo, mid, MPFR_RNDN);
      } else {
        mpfr_set(hi, mid, MPFR_RNDN);
        if (r == 0) matched = true;
      }
      out.steps = step + 1;
    }
  } catch (...) {
    release();
    throw;
  }
  mpfr_sub(width, hi, lo, MPFR_RNDU);
  bool narrow = mpfr_cmp_d(width, tol) <= 0;
  out.lower = hex(lo);
  out.upper = hex(hi);
  out.witness = MapSpec{out.upper, ell};
  release();
  if (!matched || !narrow)
    throw Error(ErrorKind::not_found, "bisection budget exhausted without certifying the target prefix");
  return out;
}

}  // namespace unimodal
