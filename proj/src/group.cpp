#include "bv/group.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "bv/error.hpp"

namespace bv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::ActionNotHomomorphic: return "ActionNotHomomorphic";
    case ErrorCode::SemidirectNonexistent: return "SemidirectNonexistent";
    case ErrorCode::CosetLimitExceeded: return "CosetLimitExceeded";
    case ErrorCode::UnboundGenerator: return "UnboundGenerator";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::NotTwoGenerated: return "NotTwoGenerated";
    case ErrorCode::DegenerateTrivialGroup: return "DegenerateTrivialGroup";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::PremiseFailed: return "PremiseFailed";
    case ErrorCode::ImagesNotStructure: return "ImagesNotStructure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

GroupTable::GroupTable(std::size_t order, std::vector<Element> mult,
                       std::vector<Element> generators, std::vector<std::string> generator_names,
                       std::string label)
    : order_(order),
      mult_(std::move(mult)),
      inv_(order, 0),
      generators_(std::move(generators)),
      generator_names_(std::move(generator_names)),
      label_(std::move(label)) {
  if (mult_.size() != order_ * order_) throw std::invalid_argument("GroupTable: table size");
  if (generator_names_.size() != generators_.size())
    throw std::invalid_argument("GroupTable: generator names");
  for (std::size_t a = 0; a < order_; ++a) {
    auto r = row(static_cast<Element>(a));
    auto it = std::find(r.begin(), r.end(), identity);
    inv_[a] = static_cast<Element>(it - r.begin());
  }
}

Element GroupTable::pow(Element x, long long k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Element result = identity;
  Element base = x;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

bool GroupTable::is_abelian() const noexcept {
  for (auto a : generators_)
    for (auto b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string positional_generator_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i);
}

std::vector<std::string> positional_generator_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(positional_generator_name(i));
  return names;
}

namespace {

constexpr Element kUnseen = static_cast<Element>(-1);

struct BfsOrder {
  std::vector<Element> new_to_raw;
  std::vector<Element> raw_to_new;
};

// Breadth-first numbering of the elements reachable from `start`.
BfsOrder bfs_order(std::size_t raw_count, std::span<const Element> right, Element start,
                   std::size_t k) {
  BfsOrder o;
  o.raw_to_new.assign(raw_count, kUnseen);
  o.new_to_raw.reserve(raw_count);
  o.raw_to_new[start] = 0;
  o.new_to_raw.push_back(start);
  for (std::size_t head = 0; head < o.new_to_raw.size(); ++head) {
    Element c = o.new_to_raw[head];
    for (std::size_t i = 0; i < k; ++i) {
      Element d = right[c * k + i];
      if (o.raw_to_new[d] == kUnseen) {
        o.raw_to_new[d] = static_cast<Element>(o.new_to_raw.size());
        o.new_to_raw.push_back(d);
      }
    }
  }
  return o;
}

}  // namespace

GroupTable group_from_right_action(std::size_t raw_count, std::span<const Element> right,
                                   Element start, std::size_t k,
                                   std::vector<std::string> generator_names, std::string label,
                                   std::vector<Element>* raw_to_new) {
  BfsOrder o = bfs_order(raw_count, right, start, k);
  const std::size_t n = o.new_to_raw.size();

  // right action in new numbering, plus the BFS tree (parent, generator).
  std::vector<Element> rnew(n * k);
  std::vector<Element> parent(n, 0);
  std::vector<std::size_t> via(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      Element d = o.raw_to_new[right[o.new_to_raw[c] * k + i]];
      rnew[c * k + i] = d;
      if (!seen[d]) {
        seen[d] = true;
        parent[d] = static_cast<Element>(c);
        via[d] = i;
      }
    }
  }

  // mult[a][b] = mult[a][parent(b)] * g_via(b); parents precede children.
  std::vector<Element> mult(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    Element* row = mult.data() + a * n;
    row[0] = static_cast<Element>(a);
    for (std::size_t b = 1; b < n; ++b) row[b] = rnew[row[parent[b]] * k + via[b]];
  }

  std::vector<Element> gens(k);
  for (std::size_t i = 0; i < k; ++i) gens[i] = rnew[i];
  if (raw_to_new != nullptr) *raw_to_new = std::move(o.raw_to_new);
  return GroupTable(n, std::move(mult), std::move(gens), std::move(generator_names),
                    std::move(label));
}

GroupTable group_from_table(std::size_t order, std::span<const Element> raw_mult,
                            Element raw_identity, std::span<const Element> raw_generators,
                            std::vector<std::string> generator_names, std::string label,
                            std::vector<Element>* raw_to_new) {
  const std::size_t k = raw_generators.size();
  std::vector<Element> right(order * k);
  for (std::size_t c = 0; c < order; ++c)
    for (std::size_t i = 0; i < k; ++i) right[c * k + i] = raw_mult[c * order + raw_generators[i]];
  BfsOrder o = bfs_order(order, right, raw_identity, k);
  const std::size_t n = o.new_to_raw.size();
  std::vector<Element> mult(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const Element ra = o.new_to_raw[a];
    for (std::size_t b = 0; b < n; ++b)
      mult[a * n + b] = o.raw_to_new[raw_mult[ra * order + o.new_to_raw[b]]];
  }
  std::vector<Element> gens(k);
  for (std::size_t i = 0; i < k; ++i) gens[i] = o.raw_to_new[raw_generators[i]];
  if (raw_to_new != nullptr) *raw_to_new = std::move(o.raw_to_new);
  return GroupTable(n, std::move(mult), std::move(gens), std::move(generator_names),
                    std::move(label));
}

std::size_t element_order(const GroupTable& g, Element x) {
  std::size_t k = 1;
  for (Element p = x; p != GroupTable::identity; p = g.mul(p, x)) ++k;
  return k;
}

std::vector<std::size_t> element_orders(const GroupTable& g) {
  std::vector<std::size_t> orders(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    if (orders[x] != 0) continue;
    orders[x] = element_order(g, x);
  }
  return orders;
}

ElementSet cyclic_subgroup(const GroupTable& g, Element x) {
  ElementSet s(g.order());
  Element p = GroupTable::identity;
  do {
    s.insert(p);
    p = g.mul(p, x);
  } while (p != GroupTable::identity);
  return s;
}

ElementSet subgroup_generated(const GroupTable& g, std::span<const Element> seeds) {
  ElementSet s(g.order());
  std::vector<Element> queue{GroupTable::identity};
  s.insert(GroupTable::identity);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Element c = queue[head];
    for (Element t : seeds) {
      Element d = g.mul(c, t);
      if (!s.contains(d)) {
        s.insert(d);
        queue.push_back(d);
      }
    }
  }
  return s;
}

ElementSet center(const GroupTable& g) {
  ElementSet z(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element t : g.generators()) {
      if (g.mul(x, t) != g.mul(t, x)) {
        central = false;
        break;
      }
    }
    if (central) z.insert(x);
  }
  return z;
}

ElementSet normal_closure(const GroupTable& g, std::span<const Element> seeds) {
  std::vector<Element> gens(seeds.begin(), seeds.end());
  ElementSet s = subgroup_generated(g, gens);
  // Conjugates of the subgroup generators by the group generators suffice.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Element t : g.generators()) {
      Element c = g.conjugate(gens[i], t);
      if (!s.contains(c)) {
        gens.push_back(c);
        s = subgroup_generated(g, gens);
      }
    }
  }
  return s;
}

ConjugacyClasses conjugacy_classes(const GroupTable& g) {
  const std::size_t n = g.order();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  ConjugacyClasses cc;
  cc.class_of.assign(n, kNone);
  for (Element x = 0; x < n; ++x) {
    if (cc.class_of[x] != kNone) continue;
    const std::size_t id = cc.classes.size();
    std::vector<Element> members{x};
    cc.class_of[x] = id;
    // Orbit under conjugation by generators.
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (Element t : g.generators()) {
        Element c = g.conjugate(members[head], t);
        if (cc.class_of[c] == kNone) {
          cc.class_of[c] = id;
          members.push_back(c);
        }
      }
    }
    std::sort(members.begin(), members.end());
    cc.classes.push_back(std::move(members));
  }
  return cc;
}

std::optional<std::string> validate_group_laws(const GroupTable& g, std::size_t samples) {
  const std::size_t n = g.order();
  if (n == 0) return "empty group";
  std::vector<char> seen(n);
  for (Element a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return "identity law fails at " + std::to_string(a);
    if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0)
      return "inverse law fails at " + std::to_string(a);
    std::fill(seen.begin(), seen.end(), 0);
    for (Element b = 0; b < n; ++b) {
      Element c = g.mul(a, b);
      if (c >= n || seen[c]) return "row " + std::to_string(a) + " is not a permutation";
      seen[c] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Element b = 0; b < n; ++b) {
      Element c = g.mul(b, a);
      if (seen[c]) return "column " + std::to_string(a) + " is not a permutation";
      seen[c] = 1;
    }
  }
  auto assoc = [&](Element a, Element b, Element c) {
    return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
  };
  if (n <= 200) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (!assoc(a, b, c)) return "associativity fails";
  } else {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t i = 0; i < samples; ++i)
      if (!assoc(pick(rng), pick(rng), pick(rng))) return "associativity fails (sampled)";
  }
  if (subgroup_generated(g, g.generators()).size() != n) return "generators do not generate";
  return std::nullopt;
}

}  // namespace bv
