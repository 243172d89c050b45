#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bv/element_set.hpp"

namespace bv {

inline constexpr std::size_t kDefaultMaxOrder = 5000;

/// A finite group as a dense Cayley table over element indices 0..n-1.
///
/// The identity is always index 0. Tables are immutable once built and may be
/// shared freely between threads.
class GroupTable {
 public:
  static constexpr Element identity = 0;

  GroupTable() = default;

  /// Takes ownership of an n*n row-major multiplication table. The inverse
  /// table is derived; laws are not checked here (see validate_group_laws).
  GroupTable(std::size_t order, std::vector<Element> mult, std::vector<Element> generators,
             std::vector<std::string> generator_names, std::string label);

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const noexcept { return mult_[a * order_ + b]; }
  Element inv(Element a) const noexcept { return inv_[a]; }
  /// k^-1 * x * k
  Element conjugate(Element x, Element k) const noexcept { return mul(inv_[k], mul(x, k)); }
  Element pow(Element x, long long k) const;

  std::span<const Element> row(Element a) const noexcept {
    return {mult_.data() + a * order_, order_};
  }

  const std::vector<Element>& generators() const noexcept { return generators_; }
  const std::vector<std::string>& generator_names() const noexcept { return generator_names_; }
  const std::string& label() const noexcept { return label_; }

  bool is_abelian() const noexcept;

  GroupTable with_label(std::string label) const {
    GroupTable g = *this;
    g.label_ = std::move(label);
    return g;
  }

 private:
  std::size_t order_ = 0;
  std::vector<Element> mult_;
  std::vector<Element> inv_;
  std::vector<Element> generators_;
  std::vector<std::string> generator_names_;
  std::string label_;
};

/// Positional generator names: a, b, ..., z, g26, g27, ...
std::string positional_generator_name(std::size_t i);
std::vector<std::string> positional_generator_names(std::size_t count);

/// Builds a GroupTable from the right action of generators on an abstract
/// element set. `right[c * k + i]` is the element c * g_i for raw element c,
/// raw element `start` is the identity. Elements are renumbered breadth-first
/// from the identity in generator order. Only elements reachable from `start`
/// are kept.
GroupTable group_from_right_action(std::size_t raw_count, std::span<const Element> right,
                                   Element start, std::size_t generator_count,
                                   std::vector<std::string> generator_names, std::string label,
                                   std::vector<Element>* raw_to_new = nullptr);

/// Renumbers an arbitrary raw Cayley table breadth-first from the given
/// generators. The raw identity is `raw_identity`.
GroupTable group_from_table(std::size_t order, std::span<const Element> raw_mult,
                            Element raw_identity, std::span<const Element> raw_generators,
                            std::vector<std::string> generator_names, std::string label,
                            std::vector<Element>* raw_to_new = nullptr);

std::size_t element_order(const GroupTable& g, Element x);
std::vector<std::size_t> element_orders(const GroupTable& g);
ElementSet cyclic_subgroup(const GroupTable& g, Element x);
ElementSet subgroup_generated(const GroupTable& g, std::span<const Element> seeds);
ElementSet center(const GroupTable& g);
ElementSet normal_closure(const GroupTable& g, std::span<const Element> seeds);

struct ConjugacyClasses {
  /// Classes ordered by their minimum element; each class sorted ascending,
  /// so classes[i].front() is the canonical representative.
  std::vector<std::vector<Element>> classes;
  /// class_of[x] = index into classes.
  std::vector<std::size_t> class_of;

  std::size_t count() const noexcept { return classes.size(); }
  Element representative(std::size_t c) const { return classes[c].front(); }
};

ConjugacyClasses conjugacy_classes(const GroupTable& g);

/// Checks identity, inverse, Latin-square and associativity laws plus
/// generation. Associativity is exhaustive for order <= 200 and sampled with
/// `samples` random triples above. Returns a description of the first
/// violation, or nullopt.
std::optional<std::string> validate_group_laws(const GroupTable& g, std::size_t samples = 10000);

}  // namespace bv
