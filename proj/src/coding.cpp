#include "unimodal/coding.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace unimodal {

OrbitCoding code_orbit(const std::vector<Side>& side, const std::vector<std::uint8_t>& in_Y) {
  if (side.size() != in_Y.size() || side.empty())
    throw Error(ErrorKind::invalid_argument, "side and membership vectors must match");
  OrbitCoding out;
  out.side = side;
  std::size_t last = 0;
  for (std::size_t i = 0; i < in_Y.size(); ++i)
    if (in_Y[i]) last = i;
  out.coded = last + 1;

  // An entry domain outside Y is the component of f^{-1}(E) on one lap, E
  // the element one step later; (lap, E) therefore names it uniquely.
  std::vector<int> raw(out.coded);
  std::map<std::pair<int, int>, int> names;
  for (std::size_t i = out.coded; i-- > 0;) {
    if (i == 0 || in_Y[i]) {
      raw[i] = 0;
      continue;
    }
    auto key = std::make_pair(static_cast<int>(side[i]), raw[i + 1]);
    auto [it, fresh] = names.try_emplace(key, static_cast<int>(names.size()) + 1);
    raw[i] = it->second;
  }
  std::vector<int> renumber(names.size() + 1, -1);
  std::vector<std::pair<int, int>> key_of(names.size() + 1);
  for (const auto& [key, id] : names) key_of[id] = key;
  out.code.resize(out.coded);
  for (std::size_t i = 0; i < out.coded; ++i) {
    int r = raw[i];
    if (renumber[r] < 0) {
      renumber[r] = static_cast<int>(out.elements.size());
      out.elements.push_back({0, i, -1, r == 0 ? Side::C : static_cast<Side>(key_of[r].first)});
    }
    out.code[i] = renumber[r];
  }
  // Successors and entry times; every successor appears at the next index, so
  // all raw names are renumbered by now.
  for (auto& e : out.elements) {
    if (e.first_index == 0 || in_Y[e.first_index]) continue;
    e.successor = out.code[e.first_index + 1];
  }
  for (auto& e : out.elements) {
    long t = 0;
    for (int cur = static_cast<int>(&e - out.elements.data()); cur != 0; cur = out.elements[cur].successor) ++t;
    e.entry_time = t;
  }
  return out;
}

ComponentLevels::ComponentLevels(const OrbitCoding& coding) : coding_(coding), cls_(coding.code) {
  class_count_ = static_cast<int>(coding.element_count());
}

std::size_t ComponentLevels::count() const {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(class_count_), 0);
  std::size_t n = 0;
  for (std::size_t i = 1; i < cls_.size(); ++i)
    if (!seen[cls_[i]]) {
      seen[cls_[i]] = 1;
      ++n;
    }
  return n;
}

void ComponentLevels::advance() {
  if (cls_.size() < 3) throw Error(ErrorKind::insufficient_horizon, "sample too short for this level");
  const std::size_t m = cls_.size() - 1;
  const int central = cls_[1];
  std::vector<int> table(static_cast<std::size_t>(class_count_) * 4, -1);
  std::vector<int> next(m);
  int fresh = 0;
  for (std::size_t i = 0; i < m; ++i) {
    int image = cls_[i + 1];
    int tag = image == central ? 3 : static_cast<int>(coding_.side[i]);
    int& slot = table[static_cast<std::size_t>(image) * 4 + static_cast<std::size_t>(tag)];
    if (slot < 0) slot = fresh++;
    next[i] = slot;
  }
  cls_ = std::move(next);
  class_count_ = fresh;
  ++level_;
}

WordLevels::WordLevels(const OrbitCoding& coding) : coding_(coding), ids_(coding.code) {}

std::size_t WordLevels::count() const {
  int top = 0;
  for (int v : ids_) top = std::max(top, v);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(top) + 1, 0);
  std::size_t n = 0;
  for (std::size_t i = 1; i < ids_.size(); ++i)
    if (!seen[ids_[i]]) {
      seen[ids_[i]] = 1;
      ++n;
    }
  return n;
}

void WordLevels::advance() {
  if (ids_.size() < 3) throw Error(ErrorKind::insufficient_horizon, "sample too short for this word length");
  const std::size_t m = ids_.size() - 1;
  const std::uint64_t letters = coding_.element_count();
  std::unordered_map<std::uint64_t, int> names;
  names.reserve(m);
  std::vector<int> next(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t key = static_cast<std::uint64_t>(ids_[i + 1]) * letters +
                        static_cast<std::uint64_t>(coding_.code[i]);
    auto [it, fresh] = names.try_emplace(key, static_cast<int>(names.size()));
    next[i] = it->second;
  }
  ids_ = std::move(next);
  ++length_;
}

AgreementDepths::AgreementDepths(const OrbitCoding& coding, std::size_t index_limit, long walk_cap)
    : coding_(coding), limit_(std::min(index_limit, coding.coded)), cap_(walk_cap) {
  d1_.assign(limit_, kUnbounded);
  exact1_.assign(limit_, 1);
  for (std::size_t x = limit_; x-- > 2;) {
    bool exact = true;
    d1_[x] = pair(x, 1, exact);
    exact1_[x] = exact ? 1 : 0;
  }
}

long AgreementDepths::pair(std::size_t a0, std::size_t b0, bool& exact) const {
  // D(a, b) is the minimum over t of: t - 1 at the first element mismatch,
  // and t + 1 + D(a + t + 1, 1) at every lap mismatch before it.
  long best_exact = kUnbounded, best_bound = kUnbounded;
  const auto& code = coding_.code;
  const auto& side = coding_.side;
  for (long t = 0;; ++t) {
    if (t - 1 >= std::min(best_exact, best_bound)) break;
    std::size_t a = a0 + static_cast<std::size_t>(t), b = b0 + static_cast<std::size_t>(t);
    if (a >= limit_ || b >= limit_ || t >= cap_) {
      best_bound = std::min(best_bound, t - 1);
      break;
    }
    if (code[a] != code[b]) {
      best_exact = std::min(best_exact, t - 1);
      break;
    }
    if (side[a] != side[b]) {
      std::size_t next = a + 1;
      if (next >= limit_) {
        best_bound = std::min(best_bound, t);
        break;
      }
      long d = d1_[next];
      long cand = d >= kUnbounded ? kUnbounded : t + 1 + d;
      if (exact1_[next]) best_exact = std::min(best_exact, cand);
      else best_bound = std::min(best_bound, cand);
    }
  }
  exact = best_exact <= best_bound;
  return std::min(best_exact, best_bound);
}

long AgreementDepths::depth(std::size_t j) const {
  if (j == 0) return kUnbounded;
  if (j >= coding_.coded || coding_.code[j] != 0) return j < coding_.coded ? -1 : 0;
  if (j + 1 >= limit_) return 0;
  long d = d1_[j + 1];
  return d >= kUnbounded ? kUnbounded : 1 + d;
}

bool AgreementDepths::depth_exact(std::size_t j) const {
  if (j == 0) return true;
  if (j >= coding_.coded) return false;
  if (coding_.code[j] != 0) return true;
  if (j + 1 >= limit_) return false;
  return exact1_[j + 1] != 0;
}

}  // namespace unimodal
