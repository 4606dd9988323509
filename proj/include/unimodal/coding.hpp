#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimodal/map.hpp"

namespace unimodal {

// Coding of a critical-orbit sample by the components of W = Y u D(Y) for a
// symmetric nice interval Y. Element 0 is Y; every other element is an entry
// domain, identified by the lap of its points and the element one step later.
struct OrbitCoding {
  struct Element {
    long entry_time;            // 0 for Y itself
    std::size_t first_index;    // first sample index coded by it
    int successor;              // element of the image, -1 for Y
    Side lap;
  };

  std::vector<Side> side;      // side[0] = C
  std::vector<int> code;       // element per index in [0, coded)
  std::size_t coded = 0;       // indices past the last visit to Y have no code
  std::vector<Element> elements;

  std::size_t element_count() const noexcept { return elements.size(); }
  // Indices dropped because they do not enter Y within the sample.
  std::size_t dropped() const noexcept { return side.size() - coded; }
};

OrbitCoding code_orbit(const std::vector<Side>& side, const std::vector<std::uint8_t>& in_Y);

// Component classes of f^{-n}(W) along the sample. cls[i] is defined for
// i in [0, coded - n); two indices share a class iff their points share a
// component. The class of index 1 marks the component holding c_1, whose
// pull-back is the single central component.
class ComponentLevels {
 public:
  explicit ComponentLevels(const OrbitCoding& coding);
  std::size_t level() const noexcept { return level_; }
  const std::vector<int>& classes() const noexcept { return cls_; }
  // Number of distinct classes over i in [1, coded - level).
  std::size_t count() const;
  void advance();

 private:
  const OrbitCoding& coding_;
  std::size_t level_ = 0;
  std::vector<int> cls_;
  int class_count_ = 0;
};

// Length-n words of the element coding; ids[i] for i in [0, coded - n + 1).
class WordLevels {
 public:
  explicit WordLevels(const OrbitCoding& coding);
  std::size_t length() const noexcept { return length_; }
  const std::vector<int>& ids() const noexcept { return ids_; }
  // Distinct words starting at i in [1, coded - length].
  std::size_t count() const;
  void advance();

 private:
  const OrbitCoding& coding_;
  std::size_t length_ = 1;
  std::vector<int> ids_;
};

// Agreement depth: the largest m such that c_x and c_1 share a component of
// f^{-m}(W) (-1 when they lie in different elements). Values reached through
// the end of the sample or the walk cap are lower bounds and flagged.
class AgreementDepths {
 public:
  static constexpr long kUnbounded = 1L << 40;

  AgreementDepths(const OrbitCoding& coding, std::size_t index_limit, long walk_cap);

  // D(x, 1) for 1 <= x < limit().
  long with_one(std::size_t x) const { return d1_[x]; }
  bool with_one_exact(std::size_t x) const { return exact1_[x] != 0; }

  // depth(j) = D(j, 0): c_j lies in Y_{-m} (the critical component of
  // f^{-m}(W)) iff depth(j) >= m. depth(0) is unbounded.
  long depth(std::size_t j) const;
  bool depth_exact(std::size_t j) const;
  long reach(std::size_t j) const { return j == 0 ? kUnbounded : static_cast<long>(j) + depth(j); }

  // General D(a, b) for a != b, both >= 1; `exact` reports whether it is exact.
  long pair(std::size_t a, std::size_t b, bool& exact) const;

  std::size_t limit() const noexcept { return limit_; }

 private:
  const OrbitCoding& coding_;
  std::size_t limit_;
  long cap_;
  std::vector<long> d1_;
  std::vector<std::uint8_t> exact1_;
};

}  // namespace unimodal
