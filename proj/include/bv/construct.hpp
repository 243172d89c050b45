#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bv/group.hpp"

namespace bv {

/// Permutation of {0..degree-1} in image form: p[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

/// Parses disjoint-cycle input (1-based points) into image form.
/// Throws InvalidPermutation if a point is out of range or repeated.
Permutation permutation_from_cycles(std::size_t degree,
                                    const std::vector<std::vector<std::size_t>>& cycles);

/// Group generated by the permutations under composition (apply left factor
/// first). Elements are numbered breadth-first from the identity.
GroupTable closure_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                     std::size_t max_order = kDefaultMaxOrder);

/// Direct product together with each element's (left, right) coordinates.
struct ProductGroup {
  GroupTable table;
  std::vector<std::pair<Element, Element>> components;
  /// Index of the element with the given coordinates.
  std::vector<Element> index_of;  // index_of[l * right_order + r]
  std::size_t right_order = 0;

  Element element(Element left, Element right) const { return index_of[left * right_order + right]; }
};

/// Generators: the zipped pairs ((g1,h1),(g2,h2)) when the orders are coprime
/// and both factors are 2-generated; otherwise the embedded generators of the
/// left factor followed by those of the right.
ProductGroup direct_product_with_components(const GroupTable& left, const GroupTable& right,
                                            std::size_t max_order = kDefaultMaxOrder);
GroupTable direct_product(const GroupTable& left, const GroupTable& right,
                          std::size_t max_order = kDefaultMaxOrder);

/// Action of one actor generator on the base: image of each base generator.
using GeneratorImages = std::vector<Element>;

/// (b1, a1)(b2, a2) = (b1 * phi_a1(b2), a1 * a2), where phi is determined by
/// `action[j]`, the images of the base generators under actor generator j.
///
/// Throws NotAnAutomorphism if some generator images do not extend to an
/// automorphism of the base, ActionNotHomomorphic if the induced map from the
/// actor is not a homomorphism into Aut(base), OrderCapExceeded if
/// |base|*|actor| exceeds max_order.
GroupTable semidirect_product(const GroupTable& base, const GroupTable& actor,
                              const std::vector<GeneratorImages>& action,
                              std::size_t max_order = kDefaultMaxOrder);

/// Extends generator images to a map on all of `g`. Returns false if the
/// images do not define a homomorphism g -> g.
bool extend_endomorphism(const GroupTable& g, const GeneratorImages& images,
                         std::vector<Element>& out);

struct QuotientMap {
  GroupTable source;
  GroupTable target;
  std::vector<Element> image;
  ElementSet kernel;
};

/// Quotient by a normal subgroup. Target generators are the images of the
/// source generators and keep their names.
QuotientMap quotient(const GroupTable& g, const ElementSet& normal);

}  // namespace bv
