#pragma once

// Shared helpers for the test binaries: spec shortcuts, a small group corpus
// and naive reference implementations that avoid the library's fast paths.

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bv/beauville.hpp"
#include "bv/catalog.hpp"
#include "bv/spec.hpp"
#include "bv/verifiers.hpp"

namespace bvtest {

using bv::Element;
using bv::ElementSet;
using bv::GroupTable;

inline GroupTable make(std::string_view spec, std::size_t max_order = bv::kDefaultMaxOrder) {
  bv::BuildOptions o;
  o.max_order = max_order;
  return bv::build(bv::parse_spec(bv::expand_presets(spec)), o);
}

/// Closure of {x, y} by right multiplication, straight from the table.
inline std::size_t naive_generated_size(const GroupTable& g, Element x, Element y) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Element c = stack.back();
    stack.pop_back();
    for (Element s : {x, y}) {
      const Element d = g.mul(c, s);
      if (!seen[d]) {
        seen[d] = 1;
        ++count;
        stack.push_back(d);
      }
    }
  }
  return count;
}

inline bool naive_generates(const GroupTable& g, Element x, Element y) {
  return naive_generated_size(g, x, y) == g.order();
}

/// Every conjugate of every power of x, y and xy.
inline ElementSet naive_sigma(const GroupTable& g, Element x, Element y) {
  ElementSet s(g.order());
  const Element z = g.inv(g.mul(x, y));
  for (Element base : {x, y, z}) {
    Element p = 0;
    do {
      for (Element k = 0; k < g.order(); ++k) s.insert(g.mul(g.inv(k), g.mul(p, k)));
      p = g.mul(p, base);
    } while (p != 0);
  }
  return s;
}

/// Distinct carriers over all generating pairs, found without class tricks.
inline std::vector<ElementSet> naive_carriers(const GroupTable& g) {
  std::vector<ElementSet> out;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      if (!naive_generates(g, x, y)) continue;
      ElementSet s = naive_sigma(g, x, y);
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
  return out;
}

inline bool combo_trivial(const std::vector<ElementSet>& sets, std::vector<std::size_t>& idx,
                          std::size_t start, std::size_t left, const ElementSet& acc) {
  if (left == 0) return acc.size() == 1;
  for (std::size_t i = start; i + left <= sets.size(); ++i) {
    idx.push_back(i);
    if (combo_trivial(sets, idx, i + 1, left - 1, acc & sets[i])) return true;
    idx.pop_back();
  }
  return false;
}

/// Smallest number of carriers with trivial intersection by plain
/// combination enumeration; 1 when even all of them meet non-trivially.
inline int naive_dimension(const GroupTable& g) {
  const auto carriers = naive_carriers(g);
  ElementSet all = ElementSet::full(g.order());
  for (const auto& c : carriers) all &= c;
  if (all.size() > 1) return 1;
  for (std::size_t k = 2; k <= carriers.size(); ++k) {
    std::vector<std::size_t> idx;
    if (combo_trivial(carriers, idx, 0, k, ElementSet::full(g.order()))) return static_cast<int>(k);
  }
  return 0;
}

/// Specs of 2-generated groups of order <= max_order: abelian groups with at
/// most two invariant factors, every split metacyclic sd(C(n), C(m), [r]),
/// small presets and a handful of products and named extensions.
inline std::vector<std::string> small_corpus(std::uint64_t max_order) {
  std::vector<std::string> out;
  for (const auto& sig : bv::two_factor_signatures(max_order)) out.push_back(sig.spec());
  for (std::uint64_t n = 3; n * 2 <= max_order; ++n)
    for (std::uint64_t m = 2; n * m <= max_order; ++m)
      for (std::uint64_t r = 2; r < n; ++r) {
        if (std::gcd(r, n) != 1) continue;
        std::uint64_t p = 1;
        for (std::uint64_t i = 0; i < m; ++i) p = p * r % n;
        if (p == 1)
          out.push_back("sd(C(" + std::to_string(n) + "), C(" + std::to_string(m) + "), [" +
                        std::to_string(r) + "])");
      }
  for (auto name : {"@S3", "@D8", "@Q8", "@A4", "@S4", "@SL2(3)"})
    if (make(name).order() <= max_order) out.push_back(name);
  for (auto s : {"sd(C(2) x C(2), C(3), [a -> b, b -> a*b])",
                 "sd(C(3) x C(3), C(3), [a -> a*b])",
                 "sd(C(5) x C(5), C(3), [a -> b, b -> a^-1*b^-1])",
                 "sd(C(3) x C(3), C(4), [a -> b, b -> a^-1])",
                 "C(3) x sd(C(7), C(3), [2])",
                 "@Q8 x C(3)",
                 "@S3 x C(5)",
                 "@A4 x C(5)",
                 "@S3 x C(3)",
                 "@A4 x C(3)",
                 "@S4 x C(3)",
                 "@SL2(3) x C(3)",
                 "@S3 x @S3"})
    if (make(s).order() <= max_order) out.push_back(s);
  return out;
}

}  // namespace bvtest
