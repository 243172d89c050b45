#include "bv/fp.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "bv/error.hpp"

namespace bv {

namespace {

constexpr std::int32_t kUndefined = -1;

class Enumerator {
 public:
  Enumerator(std::size_t gens, std::vector<std::vector<std::size_t>> relators,
             std::size_t max_cosets)
      : cols_(2 * gens), relators_(std::move(relators)), max_cosets_(max_cosets) {
    for (const auto& r : relators_) slack_ += r.size();
    slack_ += cols_;
    new_coset();
  }

  CosetTable run() {
    for (std::size_t alpha = 0; alpha < parent_.size(); ++alpha) {
      if (parent_.size() + slack_ > max_cosets_) alpha = relieve_pressure(alpha);
      if (!live(alpha)) continue;
      for (const auto& r : relators_) {
        if (!live(alpha)) break;
        scan(alpha, r, true);
      }
      if (!live(alpha)) continue;
      for (std::size_t x = 0; x < cols_; ++x)
        if (at(alpha, x) == kUndefined) define(alpha, x);
    }
    compact();
    return CosetTable(cols_ / 2, parent_.size(), std::move(table_), total_defined_);
  }

 private:
  static std::size_t inverse_column(std::size_t x) { return x ^ 1U; }

  std::int32_t& at(std::size_t c, std::size_t x) { return table_[c * cols_ + x]; }
  bool live(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::size_t new_coset() {
    const std::size_t c = parent_.size();
    parent_.push_back(static_cast<std::int32_t>(c));
    table_.resize(table_.size() + cols_, kUndefined);
    ++total_defined_;
    return c;
  }

  void define(std::size_t alpha, std::size_t x) {
    const std::size_t beta = new_coset();
    at(alpha, x) = static_cast<std::int32_t>(beta);
    at(beta, inverse_column(x)) = static_cast<std::int32_t>(alpha);
  }

  std::size_t rep(std::size_t c) {
    std::size_t root = c;
    while (parent_[root] != static_cast<std::int32_t>(root)) root = static_cast<std::size_t>(parent_[root]);
    while (parent_[c] != static_cast<std::int32_t>(c)) {
      const auto next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int32_t>(root);
      c = next;
    }
    return root;
  }

  void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
    const std::size_t ra = rep(a), rb = rep(b);
    if (ra == rb) return;
    const std::size_t lo = std::min(ra, rb), hi = std::max(ra, rb);
    parent_[hi] = static_cast<std::int32_t>(lo);
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const std::size_t gamma = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        const std::int32_t delta = at(gamma, x);
        if (delta == kUndefined) continue;
        at(static_cast<std::size_t>(delta), inverse_column(x)) = kUndefined;
        const std::size_t mu = rep(gamma);
        const std::size_t nu = rep(static_cast<std::size_t>(delta));
        if (at(mu, x) != kUndefined) {
          merge(nu, static_cast<std::size_t>(at(mu, x)), queue);
        } else if (at(nu, inverse_column(x)) != kUndefined) {
          merge(mu, static_cast<std::size_t>(at(nu, inverse_column(x))), queue);
        } else {
          at(mu, x) = static_cast<std::int32_t>(nu);
          at(nu, inverse_column(x)) = static_cast<std::int32_t>(mu);
        }
      }
    }
  }

  // Traces relator r from alpha in both directions; defines new cosets when
  // `fill` is set, otherwise only records deductions and coincidences.
  void scan(std::size_t alpha, const std::vector<std::size_t>& r, bool fill) {
    if (r.empty()) return;
    std::size_t f = alpha, b = alpha;
    std::size_t i = 0;
    std::size_t j = r.size();  // one past the last unscanned letter
    while (true) {
      while (i < j && at(f, r[i]) != kUndefined) f = static_cast<std::size_t>(at(f, r[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && at(b, inverse_column(r[j - 1])) != kUndefined)
        b = static_cast<std::size_t>(at(b, inverse_column(r[--j])));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, r[i]) = static_cast<std::int32_t>(b);
        at(b, inverse_column(r[i])) = static_cast<std::int32_t>(f);
        return;
      }
      if (!fill) return;
      define(f, r[i]);
    }
  }

  // Lookahead then compaction; returns the new index of the scan position.
  std::size_t relieve_pressure(std::size_t alpha) {
    for (std::size_t c = 0; c < parent_.size(); ++c)
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r, false);
      }
    std::size_t live_before = 0;
    for (std::size_t c = 0; c < alpha && c < parent_.size(); ++c)
      if (live(c)) ++live_before;
    compact();
    if (parent_.size() + slack_ > max_cosets_)
      throw Error(ErrorCode::CosetLimitExceeded,
                  std::to_string(parent_.size()) + " live cosets with limit " +
                      std::to_string(max_cosets_));
    return live_before;
  }

  // Renumbers live cosets consecutively in creation order.
  void compact() {
    std::vector<std::int32_t> remap(parent_.size(), kUndefined);
    std::size_t next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (live(c)) remap[c] = static_cast<std::int32_t>(next++);
    std::vector<std::int32_t> table(next * cols_, kUndefined);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < cols_; ++x) {
        const std::int32_t e = at(c, x);
        if (e != kUndefined)
          table[static_cast<std::size_t>(remap[c]) * cols_ + x] = remap[rep(static_cast<std::size_t>(e))];
      }
    }
    table_ = std::move(table);
    parent_.resize(next);
    for (std::size_t c = 0; c < next; ++c) parent_[c] = static_cast<std::int32_t>(c);
  }

  std::size_t cols_;
  std::vector<std::vector<std::size_t>> relators_;
  std::size_t max_cosets_;
  std::size_t slack_ = 0;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::size_t total_defined_ = 0;
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  if (p.generators.empty()) throw Error(ErrorCode::InvalidArgument, "presentation has no generators");
  std::vector<std::vector<std::size_t>> relators;
  for (const auto& w : p.relators) {
    std::vector<std::size_t> cols;
    for (const auto& l : w.letters()) {
      auto it = std::find(p.generators.begin(), p.generators.end(), l.generator);
      if (it == p.generators.end())
        throw Error(ErrorCode::UnknownGenerator, "relator uses undeclared generator '" + l.generator + "'");
      const auto g = static_cast<std::size_t>(it - p.generators.begin());
      const std::size_t col = 2 * g + (l.exponent < 0 ? 1 : 0);
      for (std::int64_t e = 0; e < std::llabs(l.exponent); ++e) cols.push_back(col);
    }
    relators.push_back(std::move(cols));
  }
  return Enumerator(p.generators.size(), std::move(relators), max_cosets).run();
}

GroupTable realize(const Presentation& p, const CosetTable& table, std::string label) {
  const std::size_t k = table.generator_count();
  const std::size_t n = table.size();
  std::vector<Element> right(n * k);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < k; ++i) right[c * k + i] = static_cast<Element>(table.entry(c, 2 * i));
  return group_from_right_action(n, right, 0, k, p.generators, std::move(label));
}

}  // namespace bv
