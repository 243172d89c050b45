#include "bv/beauville.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "bv/error.hpp"

namespace bv {

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::NotAStructure: return "not-a-structure";
    case Classification::Derived: return "derived";
    case Classification::NonDerived: return "non-derived";
    case Classification::Minimal: return "minimal";
  }
  return "unknown";
}

GeneratingPair make_pair(const GroupTable& g, Element x, Element y) {
  return GeneratingPair{x, y, g.inv(g.mul(x, y))};
}

namespace {

bool pair_less(const GeneratingPair& a, const GeneratingPair& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

template <typename F>
void run_workers(unsigned threads, F&& body) {
  threads = std::max(1U, threads);
  if (threads == 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&body] { body(); });
  for (auto& th : pool) th.join();
}

// Generation test by closure, stopping as soon as more than half the group
// is reached (a subgroup of index < 2 is the whole group).
class GenerationTester {
 public:
  explicit GenerationTester(const GroupTable& g) : g_(g), stamp_(g.order(), 0) {
    queue_.reserve(g.order());
  }

  bool generates(Element x, Element y, ElementSet* subgroup = nullptr) {
    const std::size_t n = g_.order();
    ++cur_;
    queue_.clear();
    queue_.push_back(GroupTable::identity);
    stamp_[GroupTable::identity] = cur_;
    const Element gens[2] = {x, y};
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Element c = queue_[head];
      for (Element t : gens) {
        const Element d = g_.mul(c, t);
        if (stamp_[d] != cur_) {
          stamp_[d] = cur_;
          queue_.push_back(d);
          if (2 * queue_.size() > n) return true;
        }
      }
    }
    if (queue_.size() == n) return true;
    if (subgroup != nullptr) {
      *subgroup = ElementSet(n);
      for (Element e : queue_) subgroup->insert(e);
    }
    return false;
  }

 private:
  const GroupTable& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t cur_ = 0;
  std::vector<Element> queue_;
};

struct PartialRecord {
  std::uint64_t count = 0;
  std::vector<GeneratingPair> pairs;
};

using PartialMap = std::unordered_map<ElementSet, PartialRecord, ElementSetHash>;

// Exact cover-style search: choose at most k candidate sets whose
// intersection is empty. Works on class-level sets without the identity.
class TrivialIntersectionSearch {
 public:
  TrivialIntersectionSearch(std::vector<ElementSet> sets, std::size_t universe)
      : sets_(std::move(sets)), universe_(universe), excluders_(universe, ElementSet(sets_.size())) {
    for (std::size_t j = 0; j < sets_.size(); ++j)
      for (std::size_t c = 0; c < universe_; ++c)
        if (!sets_[j].contains(c)) excluders_[c].insert(j);
  }

  std::optional<std::vector<std::size_t>> run(std::size_t k, unsigned threads) const {
    ElementSet start(universe_);
    for (const auto& s : sets_) start |= s;
    if (start.empty()) return std::vector<std::size_t>{};
    const ElementSet none(sets_.size());
    const std::size_t c = branch_class(start, none);
    if (c == universe_) return std::nullopt;
    const std::vector<Element> branches = excluders_[c].elements();

    // Branch i bans branches 0..i-1, so branches are independent and the
    // lowest successful one is the sequential answer.
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{branches.size()};
    std::mutex mu;
    std::vector<std::size_t> best_solution;
    run_workers(std::min<unsigned>(threads, static_cast<unsigned>(branches.size())), [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= branches.size() || i > best.load()) return;
        ElementSet banned(sets_.size());
        for (std::size_t b = 0; b < i; ++b) banned.insert(branches[b]);
        std::vector<std::size_t> chosen{branches[i]};
        if (search(start & sets_[branches[i]], banned, 1, k, chosen, best, i)) {
          std::lock_guard lock(mu);
          if (i < best.load()) {
            best.store(i);
            best_solution = chosen;
          }
        }
      }
    });
    if (best.load() == branches.size()) return std::nullopt;
    return best_solution;
  }

 private:
  // Class in `live` with the fewest non-banned excluding sets; universe_ if
  // some class cannot be excluded at all.
  std::size_t branch_class(const ElementSet& live, const ElementSet& banned) const {
    std::size_t best = universe_, best_count = static_cast<std::size_t>(-1);
    for (std::size_t c = live.first(); c < universe_; c = live.next(c + 1)) {
      const std::size_t count = (excluders_[c] - banned).size();
      if (count == 0) return universe_;
      if (count < best_count) {
        best = c;
        best_count = count;
      }
    }
    return best;
  }

  bool search(const ElementSet& live, ElementSet banned, std::size_t depth, std::size_t k,
              std::vector<std::size_t>& chosen, const std::atomic<std::size_t>& best,
              std::size_t branch) const {
    if (live.empty()) return true;
    if (depth == k || best.load(std::memory_order_relaxed) < branch) return false;
    const std::size_t c = branch_class(live, banned);
    if (c == universe_) return false;
    const ElementSet options = excluders_[c] - banned;
    for (std::size_t j = options.first(); j < options.universe(); j = options.next(j + 1)) {
      chosen.push_back(j);
      if (search(live & sets_[j], banned, depth + 1, k, chosen, best, branch)) return true;
      chosen.pop_back();
      banned.insert(j);
    }
    return false;
  }

  std::vector<ElementSet> sets_;
  std::size_t universe_;
  std::vector<ElementSet> excluders_;
};

ElementSet without_identity_class(ElementSet s) {
  s.erase(0);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

SigmaEngine::SigmaEngine(const GroupTable& g)
    : group_(&g), classes_(conjugacy_classes(g)), orders_(element_orders(g)) {
  power_classes_.reserve(classes_.count());
  for (std::size_t c = 0; c < classes_.count(); ++c) {
    ElementSet s(classes_.count());
    const Element r = classes_.representative(c);
    Element p = GroupTable::identity;
    do {
      s.insert(classes_.class_of[p]);
      p = g.mul(p, r);
    } while (p != GroupTable::identity);
    power_classes_.push_back(std::move(s));
  }
}

ElementSet SigmaEngine::sigma_classes(Element x, Element y) const {
  ElementSet s = power_classes(x);
  s |= power_classes(y);
  s |= power_classes(group_->mul(x, y));
  return s;
}

ElementSet SigmaEngine::expand(const ElementSet& class_set) const {
  ElementSet out(group_->order());
  class_set.for_each([&](Element c) {
    for (Element e : classes_.classes[c]) out.insert(e);
  });
  return out;
}

ElementSet SigmaEngine::compress(const ElementSet& elements) const {
  ElementSet out(classes_.count());
  elements.for_each([&](Element e) { out.insert(classes_.class_of[e]); });
  return out;
}

ElementSet sigma(const GroupTable& g, Element x, Element y) { return SigmaEngine(g).sigma(x, y); }

bool is_generating_pair(const GroupTable& g, Element x, Element y) {
  return GenerationTester(g).generates(x, y);
}

SigmaCatalog build_sigma_catalog(const SigmaEngine& engine, const SearchOptions& options) {
  const GroupTable& g = engine.group();
  const ConjugacyClasses& cc = engine.classes();
  const std::size_t n = g.order();
  constexpr std::size_t kMaxCachedSubgroups = 256;

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  PartialMap merged;

  run_workers(options.threads, [&] {
    GenerationTester tester(g);
    PartialMap local;
    std::vector<ElementSet> cache;
    ElementSet sub;
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cc.count()) break;
      const Element x = cc.representative(c);
      const std::uint64_t weight = cc.classes[c].size();
      cache.clear();
      for (Element y = 0; y < n; ++y) {
        bool inside = false;
        for (const auto& h : cache)
          if (h.contains(y)) {
            inside = true;
            break;
          }
        if (inside) continue;
        if (!tester.generates(x, y, &sub)) {
          if (cache.size() < kMaxCachedSubgroups) cache.push_back(sub);
          continue;
        }
        auto& rec = local[engine.sigma_classes(x, y)];
        rec.count += weight;
        if (rec.pairs.size() < SigmaRecord::kStoredPairs) rec.pairs.push_back(make_pair(g, x, y));
      }
    }
    std::lock_guard lock(mu);
    for (auto& [key, rec] : local) {
      auto& m = merged[key];
      m.count += rec.count;
      m.pairs.insert(m.pairs.end(), rec.pairs.begin(), rec.pairs.end());
    }
  });

  if (merged.empty())
    throw Error(ErrorCode::NotTwoGenerated, g.label() + " has no generating pair");

  SigmaCatalog cat;
  cat.engine = &engine;
  std::vector<std::pair<SigmaRecord, ElementSet>> rows;
  rows.reserve(merged.size());
  for (auto& [key, rec] : merged) {
    std::sort(rec.pairs.begin(), rec.pairs.end(), pair_less);
    if (rec.pairs.size() > SigmaRecord::kStoredPairs) rec.pairs.resize(SigmaRecord::kStoredPairs);
    SigmaRecord r;
    r.carrier = engine.expand(key);
    r.canonical_pair = rec.pairs.front();
    r.producing_pairs = std::move(rec.pairs);
    r.pair_count = rec.count;
    rows.emplace_back(std::move(r), key);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first.carrier, b.first.carrier); });
  for (auto& [r, key] : rows) {
    cat.records.push_back(std::move(r));
    cat.class_carriers.push_back(std::move(key));
  }
  return cat;
}

std::vector<SigmaRecord> enumerate_sigma_records(const GroupTable& g, const SearchOptions& options) {
  const SigmaEngine engine(g);
  return build_sigma_catalog(engine, options).records;
}

std::optional<std::vector<std::size_t>> smallest_trivial_family(const SigmaCatalog& catalog,
                                                                std::size_t max_size,
                                                                const SearchOptions& options) {
  const std::size_t m = catalog.class_carriers.size();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    bool keep = true;
    if (options.prune_supersets)
      for (std::size_t j = 0; j < m && keep; ++j)
        if (j != i && catalog.class_carriers[j].is_subset_of(catalog.class_carriers[i])) keep = false;
    if (keep) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return catalog.class_carriers[a].size() < catalog.class_carriers[b].size();
  });

  std::vector<ElementSet> sets;
  for (std::size_t i : candidates) sets.push_back(without_identity_class(catalog.class_carriers[i]));
  const std::size_t universe = catalog.engine->classes().count();
  const TrivialIntersectionSearch search(std::move(sets), universe);

  for (std::size_t k = 2; k <= std::min(max_size, candidates.size()); ++k) {
    if (auto found = search.run(k, options.threads)) {
      std::vector<std::size_t> records;
      for (std::size_t j : *found) records.push_back(candidates[j]);
      std::sort(records.begin(), records.end());
      return records;
    }
  }
  return std::nullopt;
}

DimensionResult beauville_dimension(const SigmaCatalog& catalog, const SearchOptions& options) {
  const GroupTable& g = catalog.engine->group();
  if (g.order() == 1)
    throw Error(ErrorCode::DegenerateTrivialGroup, "the trivial group has no Beauville dimension");
  DimensionResult result;

  ElementSet common = without_identity_class(catalog.class_carriers.front());
  for (const auto& s : catalog.class_carriers) common &= s;
  if (!common.empty()) {
    result.d = 1;
    result.blocking_element = catalog.engine->classes().representative(common.first());
    return result;
  }

  auto family = smallest_trivial_family(catalog, catalog.records.size(), options);
  if (!family) throw std::logic_error("carrier intersection is trivial but no family found");
  result.d = static_cast<int>(family->size());
  result.witness_records = *family;

  StructureFamily w;
  for (std::size_t i : *family) {
    w.pairs.push_back(catalog.records[i].canonical_pair);
    w.sigma_carriers.push_back(catalog.records[i].carrier);
  }
  w.classification = Classification::Minimal;

  ElementSet all(g.order());
  for (const auto& s : w.sigma_carriers) all |= s;
  all.erase(GroupTable::identity);
  all.for_each([&](Element e) {
    for (std::size_t i = 0; i < w.sigma_carriers.size(); ++i)
      if (!w.sigma_carriers[i].contains(e)) {
        result.certificate.push_back({e, i});
        break;
      }
  });
  result.witness = std::move(w);
  return result;
}

DimensionResult beauville_dimension(const GroupTable& g, const SearchOptions& options) {
  if (g.order() == 1)
    throw Error(ErrorCode::DegenerateTrivialGroup, "the trivial group has no Beauville dimension");
  const SigmaEngine engine(g);
  return beauville_dimension(build_sigma_catalog(engine, options), options);
}

bool verify_certificate(const GroupTable& g, const DimensionResult& result) {
  if (result.d == 1) return result.blocking_element.has_value() && !result.witness;
  if (!result.witness) return false;
  const auto& carriers = result.witness->sigma_carriers;
  if (carriers.size() != static_cast<std::size_t>(result.d)) return false;
  ElementSet all(g.order());
  for (const auto& s : carriers) all |= s;
  all.erase(GroupTable::identity);
  ElementSet listed(g.order());
  for (const auto& entry : result.certificate) {
    if (entry.excluded_by >= carriers.size()) return false;
    if (carriers[entry.excluded_by].contains(entry.element)) return false;
    listed.insert(entry.element);
  }
  return all.is_subset_of(listed);
}

namespace {

bool trivial_intersection(std::span<const ElementSet> sets, std::size_t skip) {
  ElementSet common;
  bool first = true;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i == skip) continue;
    if (first) {
      common = sets[i];
      first = false;
    } else {
      common &= sets[i];
    }
  }
  if (first) return false;
  common.erase(GroupTable::identity);
  return common.empty();
}

StructureFamily classify(const SigmaEngine& engine, std::span<const GeneratingPair> pairs,
                         const SigmaCatalog* catalog, const SearchOptions& options) {
  const GroupTable& g = engine.group();
  if (pairs.empty()) throw Error(ErrorCode::EmptyFamily, "no pairs given");
  GenerationTester tester(g);
  StructureFamily f;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (!tester.generates(p.x, p.y))
      throw Error(ErrorCode::NotGenerating, "pair " + std::to_string(i) + " does not generate");
    f.pairs.push_back(make_pair(g, p.x, p.y));
    f.sigma_carriers.push_back(engine.sigma(p.x, p.y));
  }
  const std::size_t n = pairs.size();
  const auto none = static_cast<std::size_t>(-1);
  if (n < 2 || !trivial_intersection(f.sigma_carriers, none)) {
    f.classification = Classification::NotAStructure;
    return f;
  }
  if (n == 2) {
    f.classification = Classification::Minimal;
    return f;
  }
  // A trivial proper subfamily exists iff one of size n-1 does.
  for (std::size_t skip = 0; skip < n; ++skip)
    if (trivial_intersection(f.sigma_carriers, skip)) {
      f.classification = Classification::Derived;
      return f;
    }
  std::optional<SigmaCatalog> own;
  if (catalog == nullptr) {
    own = build_sigma_catalog(engine, options);
    catalog = &*own;
  }
  f.classification = smallest_trivial_family(*catalog, n - 1, options)
                         ? Classification::NonDerived
                         : Classification::Minimal;
  return f;
}

}  // namespace

StructureFamily check_structure(const GroupTable& g, std::span<const GeneratingPair> pairs,
                                const SearchOptions& options) {
  const SigmaEngine engine(g);
  return classify(engine, pairs, nullptr, options);
}

StructureFamily check_structure(const SigmaCatalog& catalog, std::span<const GeneratingPair> pairs,
                                const SearchOptions& options) {
  return classify(*catalog.engine, pairs, &catalog, options);
}

std::vector<std::vector<std::size_t>> enumerate_trivial_families(const SigmaCatalog& catalog,
                                                                 std::size_t size,
                                                                 std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = catalog.class_carriers.size();
  if (size == 0 || size > m || limit == 0) return out;
  std::vector<ElementSet> sets;
  for (const auto& s : catalog.class_carriers) sets.push_back(without_identity_class(s));
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from, const ElementSet& live) -> void {
    if (out.size() >= limit) return;
    if (chosen.size() == size) {
      if (live.empty()) out.push_back(chosen);
      return;
    }
    for (std::size_t j = from; j + (size - chosen.size()) <= m && out.size() < limit; ++j) {
      chosen.push_back(j);
      self(self, j + 1, chosen.size() == 1 ? sets[j] : live & sets[j]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, ElementSet(catalog.engine->classes().count()));
  return out;
}

bool is_faithfully_represented(const QuotientMap& q, Element g) {
  const ElementSet cyc = cyclic_subgroup(q.source, g);
  ElementSet meet = cyc & q.kernel;
  const bool by_kernel = meet.size() == 1;
  const bool by_order = element_order(q.source, g) == element_order(q.target, q.image[g]);
  if (by_kernel != by_order)
    throw std::logic_error("faithfulness criteria disagree; quotient map is inconsistent");
  return by_kernel;
}

StructureFamily lift_structure(const QuotientMap& q, std::span<const GeneratingPair> source_pairs,
                               const SearchOptions& options) {
  if (source_pairs.empty()) throw Error(ErrorCode::EmptyFamily, "no pairs given");
  const SigmaEngine target_engine(q.target);
  GenerationTester tester(q.target);
  std::vector<ElementSet> image_carriers;
  bool some_faithful = false;
  for (std::size_t i = 0; i < source_pairs.size(); ++i) {
    const auto p = make_pair(q.source, source_pairs[i].x, source_pairs[i].y);
    const Element ix = q.image[p.x], iy = q.image[p.y];
    if (!tester.generates(ix, iy))
      throw Error(ErrorCode::PremiseFailed,
                  "image of pair " + std::to_string(i) + " does not generate the quotient");
    if (is_faithfully_represented(q, p.x) && is_faithfully_represented(q, p.y) &&
        is_faithfully_represented(q, p.z))
      some_faithful = true;
    image_carriers.push_back(target_engine.sigma(ix, iy));
  }
  if (!some_faithful)
    throw Error(ErrorCode::PremiseFailed, "no triple is faithfully represented in the quotient");
  if (!trivial_intersection(image_carriers, static_cast<std::size_t>(-1)))
    throw Error(ErrorCode::ImagesNotStructure, "image carriers intersect non-trivially");
  return check_structure(q.source, source_pairs, options);
}

}  // namespace bv
