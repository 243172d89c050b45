#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bv/beauville.hpp"
#include "bv/spec.hpp"

namespace bv {

/// Invariant factors n1 | n2 | ... of a finite abelian group, all >= 2.
struct AbelianSignature {
  std::vector<std::uint64_t> factors;

  bool valid() const;
  std::uint64_t order() const;
  /// "C(n1) x C(n2) ..." (the trivial signature is not representable).
  std::string spec() const;

  friend bool operator==(const AbelianSignature&, const AbelianSignature&) = default;
};

/// 2 for Cn x Cn with gcd(n, 6) = 1, 4 for Cn x Cn with n odd and 3 | n,
/// otherwise 1.
int predict_abelian_d(const AbelianSignature& sig);

/// Signatures with at most two invariant factors and order in [2, max_order],
/// ordered by order then factors.
std::vector<AbelianSignature> two_factor_signatures(std::uint64_t max_order);

struct AbelianCase {
  AbelianSignature signature;
  int predicted = 0;
  int computed = 0;
};

struct AbelianReport {
  std::vector<AbelianCase> cases;
  std::size_t mismatches = 0;
  bool pass() const { return mismatches == 0; }
};

AbelianReport verify_abelian_classification(std::uint64_t max_order,
                                            const SearchOptions& options = {});

struct Order3CensusReport {
  unsigned k = 0;
  std::size_t order3_elements = 0;
  /// Number of order-3 elements in each distinct carrier, in catalog order.
  std::vector<std::size_t> order3_per_carrier;
  std::vector<std::size_t> carrier_sizes;
  bool pass = false;
};

/// C(3^k) x C(3^k): 8 elements of order 3, each carrier holding exactly 6.
Order3CensusReport verify_order3_census(unsigned k, const SearchOptions& options = {});

struct DirectProductReport {
  std::size_t order_g = 0;
  std::size_t order_h = 0;
  int d_g = 0;
  int d_h = 0;
  int d_product = 0;
  /// The intersection of the first two constructed product carriers equals
  /// the matching intersection in G, embedded with trivial H-component.
  bool mechanism_holds = false;
  bool pass = false;
};

/// Checks gcd(|G|, |H|) = 1, d(G) > 2 and d(H) = 2 (PremiseFailed otherwise),
/// then computes d(G x H) and tests the carrier-intersection mechanism on
/// product pairs assembled from witnesses of G and H.
DirectProductReport verify_direct_product(const GroupSpec& g, const GroupSpec& h,
                                          const BuildOptions& build_options = {},
                                          const SearchOptions& options = {});

struct Thm8Census {
  std::uint64_t p = 0;
  std::uint64_t t = 0;
  std::size_t order = 0;
  std::size_t class_count = 0;
  std::size_t count_order_p = 0;
  std::size_t count_order_3p = 0;
  std::size_t count_order_3 = 0;
  /// Carrier sizes in catalog order.
  std::vector<std::size_t> sigma_profile;
  bool center_in_large_intersection = false;
  int d = 0;
  bool pass = false;
};

/// Smallest t > 1 with t^3 = 1 (mod p), if any.
std::optional<std::uint64_t> cube_root_of_unity(std::uint64_t p);

/// "C(3) x sd(C(p), C(3), [t])".
std::string thm8_spec(std::uint64_t p);

/// Builds C3 x (Cp:C3) and checks the census and d = 4. PremiseFailed unless
/// p is a prime with p = 1 (mod 3).
Thm8Census verify_thm8(std::uint64_t p, const SearchOptions& options = {});

enum class D4Family {
  A4xCpC3,       // A4 x (Cp:C3)
  CmSquaredC3,   // (Cm x Cm):C3 with m = 3k
  C3xCnSquaredC3,  // C3 x ((Cn x Cn):C3)
  C9xCnSquaredC9,  // C9 x ((Cn x Cn):C9)
  CpC3xCqC3,     // (Cp:C3) x (Cq:C3)
  C3xCp22C3,     // C3 x ((Cp x C2 x C2):C3)
};

std::string_view to_string(D4Family f) noexcept;
std::optional<D4Family> parse_d4_family(std::string_view name);

struct FamilyMember {
  D4Family family;
  std::vector<std::uint64_t> params;
  std::string spec;
};

/// Spec of a family member; PremiseFailed for invalid parameters.
FamilyMember d4_family_member(D4Family family, const std::vector<std::uint64_t>& params);

/// Members with order at most 1023.
std::vector<FamilyMember> d4_family_default_members(D4Family family);

struct FamilyReport {
  FamilyMember member;
  std::size_t order = 0;
  int d = 0;
  bool pass = false;
};

FamilyReport verify_family_d4(const FamilyMember& member, const BuildOptions& build_options = {},
                              const SearchOptions& options = {});

struct Lemma2bReport {
  int d = 0;
  /// Structures examined, by size.
  std::vector<std::pair<std::size_t, std::size_t>> checked;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

/// For every trivial-intersection family of size n <= max_size (at most
/// `limit` per size), checks it classifies as a structure and that
/// 2 <= d <= n.
Lemma2bReport verify_lemma2b(const GroupTable& g, std::size_t max_size, std::size_t limit,
                             const SearchOptions& options = {});

}  // namespace bv
