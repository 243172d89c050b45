#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bv/construct.hpp"
#include "bv/group.hpp"

namespace bv {

/// Generating pair with the cached third element z = (xy)^-1.
struct GeneratingPair {
  Element x = 0;
  Element y = 0;
  Element z = 0;

  friend bool operator==(const GeneratingPair&, const GeneratingPair&) = default;
};

GeneratingPair make_pair(const GroupTable& g, Element x, Element y);

struct SearchOptions {
  unsigned threads = 1;
  /// Drop carriers that contain another carrier before the cover search.
  bool prune_supersets = true;
};

/// Per-group tables for Sigma computations: conjugacy classes and, for each
/// class, the classes of all powers of its elements. Holds a reference to
/// the group, which must outlive it.
class SigmaEngine {
 public:
  explicit SigmaEngine(const GroupTable& g);

  const GroupTable& group() const noexcept { return *group_; }
  const ConjugacyClasses& classes() const noexcept { return classes_; }
  const std::vector<std::size_t>& orders() const noexcept { return orders_; }

  /// Classes met by <x>, as a set over class indices.
  const ElementSet& power_classes(Element x) const { return power_classes_[classes_.class_of[x]]; }

  /// Sigma(x, y) over class indices.
  ElementSet sigma_classes(Element x, Element y) const;
  ElementSet sigma(Element x, Element y) const { return expand(sigma_classes(x, y)); }

  /// Union of the given classes, as an element set.
  ElementSet expand(const ElementSet& class_set) const;
  /// Classes of the given (conjugation-closed) element set.
  ElementSet compress(const ElementSet& elements) const;

 private:
  const GroupTable* group_;
  ConjugacyClasses classes_;
  std::vector<std::size_t> orders_;
  std::vector<ElementSet> power_classes_;
};

/// Union of the conjugates of <x>, <y> and <xy>; the identity is included.
ElementSet sigma(const GroupTable& g, Element x, Element y);

bool is_generating_pair(const GroupTable& g, Element x, Element y);

struct SigmaRecord {
  static constexpr std::size_t kStoredPairs = 16;

  ElementSet carrier;
  /// Lexicographically smallest enumerated pair.
  GeneratingPair canonical_pair;
  /// Up to kStoredPairs smallest enumerated pairs, ascending.
  std::vector<GeneratingPair> producing_pairs;
  /// Number of ordered generating pairs of the whole group with this carrier.
  std::uint64_t pair_count = 0;
};

/// Distinct Sigma carriers of a 2-generated group, with the class-level
/// form used by the searches.
struct SigmaCatalog {
  const SigmaEngine* engine = nullptr;
  std::vector<SigmaRecord> records;
  std::vector<ElementSet> class_carriers;
};

/// Enumerates generating pairs (x over class representatives, y over all
/// elements) and collects one record per distinct carrier, in canonical
/// carrier order. Output is independent of the thread count. Throws
/// NotTwoGenerated if no generating pair exists.
SigmaCatalog build_sigma_catalog(const SigmaEngine& engine, const SearchOptions& options = {});
std::vector<SigmaRecord> enumerate_sigma_records(const GroupTable& g,
                                                 const SearchOptions& options = {});

enum class Classification { NotAStructure, Derived, NonDerived, Minimal };
std::string_view to_string(Classification c) noexcept;

struct StructureFamily {
  std::vector<GeneratingPair> pairs;
  std::vector<ElementSet> sigma_carriers;
  Classification classification = Classification::NotAStructure;
};

struct CertificateEntry {
  Element element = 0;
  /// Index into the witness family of a carrier not containing the element.
  std::size_t excluded_by = 0;

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct DimensionResult {
  int d = 0;
  std::optional<StructureFamily> witness;
  std::optional<Element> blocking_element;
  std::vector<CertificateEntry> certificate;
  /// Indices into SigmaCatalog::records of the witness carriers.
  std::vector<std::size_t> witness_records;
};

/// Exact Beauville dimension. Throws DegenerateTrivialGroup for order 1 and
/// NotTwoGenerated when the group has no generating pair.
DimensionResult beauville_dimension(const GroupTable& g, const SearchOptions& options = {});
DimensionResult beauville_dimension(const SigmaCatalog& catalog, const SearchOptions& options = {});

/// Smallest k <= max_size such that some k records have trivial carrier
/// intersection, with the chosen record indices; nullopt if none.
std::optional<std::vector<std::size_t>> smallest_trivial_family(const SigmaCatalog& catalog,
                                                                std::size_t max_size,
                                                                const SearchOptions& options = {});

/// Re-checks a certificate in O(d * n): every non-identity element in the
/// union of witness carriers is listed and excluded by the named carrier.
bool verify_certificate(const GroupTable& g, const DimensionResult& result);

/// Classifies a family of pairs. Throws EmptyFamily or NotGenerating.
StructureFamily check_structure(const GroupTable& g, std::span<const GeneratingPair> pairs,
                                const SearchOptions& options = {});
StructureFamily check_structure(const SigmaCatalog& catalog, std::span<const GeneratingPair> pairs,
                                const SearchOptions& options = {});

/// All families of `size` distinct carriers with trivial intersection, as
/// sorted record-index tuples in lexicographic order, at most `limit`.
std::vector<std::vector<std::size_t>> enumerate_trivial_families(const SigmaCatalog& catalog,
                                                                 std::size_t size,
                                                                 std::size_t limit);

/// <g> meets the kernel trivially. Also checks this agrees with order
/// preservation under the map.
bool is_faithfully_represented(const QuotientMap& q, Element g);

/// Checks the lifting premises (images generate the quotient, at least one
/// triple faithfully represented, images form a structure) and classifies
/// the source family. Throws PremiseFailed or ImagesNotStructure.
StructureFamily lift_structure(const QuotientMap& q, std::span<const GeneratingPair> source_pairs,
                               const SearchOptions& options = {});

}  // namespace bv
