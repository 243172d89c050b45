#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bv {

using Element = std::uint32_t;

/// Dense bit-vector over indices 0..universe-1.
///
/// Used for subsets of a group's elements (Sigma carriers, subgroups) and,
/// inside the dimension search, for subsets of conjugacy classes.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(std::size_t e) const noexcept {
    return e < universe_ && ((words_[e >> 6] >> (e & 63)) & 1U) != 0;
  }
  void insert(std::size_t e) noexcept { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(std::size_t e) noexcept { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  ElementSet& operator-=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  ElementSet complement() const {
    ElementSet c = *this;
    for (auto& w : c.words_) w = ~w;
    c.trim();
    return c;
  }

  bool is_subset_of(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  /// Smallest member, or universe() when empty.
  std::size_t first() const noexcept { return next(0); }
  /// Smallest member >= from, or universe() when none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= universe_) return universe_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return universe_;
      w = words_[wi];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        f(static_cast<Element>((wi << 6) + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  void trim() noexcept {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
inline ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
inline ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

/// Canonical order used for reproducible output: by size, then by the sorted
/// member list compared lexicographically.
inline bool canonical_less(const ElementSet& a, const ElementSet& b) {
  auto sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  std::size_t i = a.first(), j = b.first();
  while (i < a.universe() && j < b.universe()) {
    if (i != j) return i < j;
    i = a.next(i + 1);
    j = b.next(j + 1);
  }
  return false;
}

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.universe();
    for (auto w : s.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace bv
