#include "bv/construct.hpp"

#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "bv/error.hpp"

namespace bv {

namespace {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

void check_order_cap(std::size_t order, std::size_t max_order, const char* what) {
  if (order > max_order)
    throw Error(ErrorCode::OrderCapExceeded, std::string(what) + " of order " +
                                                 std::to_string(order) + " exceeds cap " +
                                                 std::to_string(max_order));
}

}  // namespace

Permutation permutation_from_cycles(std::size_t degree,
                                    const std::vector<std::vector<std::size_t>>& cycles) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0U);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      std::size_t pt = cycle[i];
      if (pt < 1 || pt > degree)
        throw Error(ErrorCode::InvalidPermutation,
                    "point " + std::to_string(pt) + " outside 1.." + std::to_string(degree));
      if (used[pt - 1])
        throw Error(ErrorCode::InvalidPermutation,
                    "point " + std::to_string(pt) + " repeated in cycle notation");
      used[pt - 1] = true;
      p[pt - 1] = static_cast<std::uint32_t>(cycle[(i + 1) % cycle.size()] - 1);
    }
  }
  return p;
}

GroupTable closure_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                     std::size_t max_order) {
  if (degree == 0) throw Error(ErrorCode::InvalidPermutation, "degree must be positive");
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(ErrorCode::InvalidPermutation, "wrong degree");
    std::vector<bool> hit(degree, false);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw Error(ErrorCode::InvalidPermutation, "not a bijection");
      hit[v] = true;
    }
  }
  const std::size_t k = generators.size();
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0U);

  std::vector<Permutation> elements{id};
  std::unordered_map<Permutation, Element, PermutationHash> index{{id, 0}};
  std::vector<Element> right;
  Permutation prod(degree);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t i = 0; i < k; ++i) {
      // apply elements[head] first, then generator i
      for (std::size_t pt = 0; pt < degree; ++pt) prod[pt] = generators[i][elements[head][pt]];
      auto [it, inserted] = index.try_emplace(prod, static_cast<Element>(elements.size()));
      if (inserted) {
        elements.push_back(prod);
        check_order_cap(elements.size(), max_order, "permutation group");
      }
      right.push_back(it->second);
    }
  }
  return group_from_right_action(elements.size(), right, 0, k, positional_generator_names(k),
                                 "perm group of degree " + std::to_string(degree));
}

ProductGroup direct_product_with_components(const GroupTable& left, const GroupTable& right,
                                            std::size_t max_order) {
  const std::size_t nl = left.order(), nr = right.order();
  check_order_cap(nl * nr, max_order, "direct product");
  const std::size_t n = nl * nr;
  std::vector<Element> raw(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const Element la = static_cast<Element>(a / nr), ra = static_cast<Element>(a % nr);
    for (std::size_t b = 0; b < n; ++b) {
      const Element lb = static_cast<Element>(b / nr), rb = static_cast<Element>(b % nr);
      raw[a * n + b] = static_cast<Element>(left.mul(la, lb) * nr + right.mul(ra, rb));
    }
  }

  std::vector<Element> gens;
  const bool zipped = std::gcd(nl, nr) == 1 && left.generators().size() == 2 &&
                      right.generators().size() == 2;
  if (zipped) {
    for (std::size_t i = 0; i < 2; ++i)
      gens.push_back(static_cast<Element>(left.generators()[i] * nr + right.generators()[i]));
  } else {
    for (Element g : left.generators()) gens.push_back(static_cast<Element>(g * nr));
    for (Element h : right.generators()) gens.push_back(h);
  }

  std::vector<Element> raw_to_new;
  ProductGroup out;
  out.table = group_from_table(n, raw, 0, gens, positional_generator_names(gens.size()),
                               "(" + left.label() + ") x (" + right.label() + ")", &raw_to_new);
  out.right_order = nr;
  out.components.resize(n);
  out.index_of.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.components[raw_to_new[r]] = {static_cast<Element>(r / nr), static_cast<Element>(r % nr)};
    out.index_of[r] = raw_to_new[r];
  }
  return out;
}

GroupTable direct_product(const GroupTable& left, const GroupTable& right, std::size_t max_order) {
  return direct_product_with_components(left, right, max_order).table;
}

bool extend_endomorphism(const GroupTable& g, const GeneratorImages& images,
                         std::vector<Element>& out) {
  const auto& gens = g.generators();
  if (images.size() != gens.size()) return false;
  constexpr Element kUnset = static_cast<Element>(-1);
  out.assign(g.order(), kUnset);
  out[0] = 0;
  std::vector<Element> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element c = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Element d = g.mul(c, gens[i]);
      const Element img = g.mul(out[c], images[i]);
      if (out[d] == kUnset) {
        out[d] = img;
        queue.push_back(d);
      } else if (out[d] != img) {
        return false;
      }
    }
  }
  return queue.size() == g.order();
}

GroupTable semidirect_product(const GroupTable& base, const GroupTable& actor,
                              const std::vector<GeneratorImages>& action, std::size_t max_order) {
  const std::size_t nb = base.order(), na = actor.order();
  check_order_cap(nb * na, max_order, "semidirect product");
  const auto& agens = actor.generators();
  if (action.size() != agens.size())
    throw Error(ErrorCode::ActionNotHomomorphic,
                "action lists " + std::to_string(action.size()) + " maps for " +
                    std::to_string(agens.size()) + " actor generators");

  // Automorphism of the base for each actor generator.
  std::vector<std::vector<Element>> gen_aut(agens.size());
  for (std::size_t j = 0; j < agens.size(); ++j) {
    if (!extend_endomorphism(base, action[j], gen_aut[j]))
      throw Error(ErrorCode::NotAnAutomorphism,
                  "images for actor generator " + std::to_string(j) +
                      " do not define an endomorphism of the base");
    std::vector<bool> hit(nb, false);
    for (Element v : gen_aut[j]) {
      if (hit[v])
        throw Error(ErrorCode::NotAnAutomorphism,
                    "map for actor generator " + std::to_string(j) + " is not injective");
      hit[v] = true;
    }
  }

  // phi[a] for every actor element: phi_{c g_j} = phi_c o phi_j.
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> phi(na * nb, kUnset);
  std::vector<bool> have(na, false);
  for (std::size_t x = 0; x < nb; ++x) phi[x] = static_cast<Element>(x);
  have[0] = true;
  std::vector<Element> queue{0};
  std::vector<std::pair<Element, std::size_t>> edges;  // (c, j) with c*g_j already defined
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element c = queue[head];
    for (std::size_t j = 0; j < agens.size(); ++j) {
      const Element d = actor.mul(c, agens[j]);
      if (!have[d]) {
        have[d] = true;
        for (std::size_t x = 0; x < nb; ++x) phi[d * nb + x] = phi[c * nb + gen_aut[j][x]];
        queue.push_back(d);
      } else {
        edges.emplace_back(c, j);
      }
    }
  }
  auto edge_consistent = [&](Element c, std::size_t j) {
    const Element d = actor.mul(c, agens[j]);
    for (std::size_t x = 0; x < nb; ++x)
      if (phi[d * nb + x] != phi[c * nb + gen_aut[j][x]]) return false;
    return true;
  };
  if (na <= 64) {
    for (auto [c, j] : edges)
      if (!edge_consistent(c, j))
        throw Error(ErrorCode::ActionNotHomomorphic, "action does not respect actor relations");
  } else if (!edges.empty()) {
    std::mt19937_64 rng(0xac7105ULL);
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    for (int s = 0; s < 4096; ++s) {
      auto [c, j] = edges[pick(rng)];
      if (!edge_consistent(c, j))
        throw Error(ErrorCode::ActionNotHomomorphic, "action does not respect actor relations");
    }
  }

  const std::size_t n = nb * na;
  std::vector<Element> raw(n * n);
  for (std::size_t a1 = 0; a1 < na; ++a1) {
    const Element* ph = phi.data() + a1 * nb;
    for (std::size_t b1 = 0; b1 < nb; ++b1) {
      Element* row = raw.data() + (a1 * nb + b1) * n;
      for (std::size_t a2 = 0; a2 < na; ++a2) {
        const std::size_t aa = actor.mul(static_cast<Element>(a1), static_cast<Element>(a2)) * nb;
        for (std::size_t b2 = 0; b2 < nb; ++b2)
          row[a2 * nb + b2] = static_cast<Element>(aa + base.mul(static_cast<Element>(b1), ph[b2]));
      }
    }
  }
  std::vector<Element> gens;
  for (Element g : base.generators()) gens.push_back(g);
  for (Element h : agens) gens.push_back(static_cast<Element>(h * nb));
  return group_from_table(n, raw, 0, gens, positional_generator_names(gens.size()),
                          "(" + base.label() + ") : (" + actor.label() + ")");
}

QuotientMap quotient(const GroupTable& g, const ElementSet& normal) {
  const std::size_t n = g.order();
  if (normal.universe() != n || !normal.contains(GroupTable::identity))
    throw Error(ErrorCode::NotSubgroup, "set does not contain the identity");
  const auto members = normal.elements();
  for (Element a : members)
    for (Element b : members)
      if (!normal.contains(g.mul(a, b)))
        throw Error(ErrorCode::NotSubgroup, "set is not closed under multiplication");
  for (Element a : members)
    for (Element t : g.generators())
      if (!normal.contains(g.conjugate(a, t)))
        throw Error(ErrorCode::NotNormal, "set is not closed under conjugation");

  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> coset_of(n, kUnset);
  std::vector<Element> reps;
  for (Element x = 0; x < n; ++x) {
    if (coset_of[x] != kUnset) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element m : members) coset_of[g.mul(m, x)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Element> raw(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) raw[a * m + b] = coset_of[g.mul(reps[a], reps[b])];
  std::vector<Element> gens;
  for (Element t : g.generators()) gens.push_back(coset_of[t]);

  std::vector<Element> raw_to_new;
  QuotientMap q;
  q.target = group_from_table(m, raw, 0, gens, g.generator_names(),
                              "(" + g.label() + ") / N", &raw_to_new);
  q.source = g;
  q.image.resize(n);
  for (Element x = 0; x < n; ++x) q.image[x] = raw_to_new[coset_of[x]];
  q.kernel = normal;
  return q;
}

}  // namespace bv
