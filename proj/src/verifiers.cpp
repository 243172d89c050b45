#include "bv/verifiers.hpp"

#include <algorithm>
#include <numeric>

#include "bv/construct.hpp"
#include "bv/error.hpp"

namespace bv {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

[[noreturn]] void premise(const std::string& what) { throw Error(ErrorCode::PremiseFailed, what); }

constexpr std::string_view kRotation = "[a -> b, b -> a^-1*b^-1]";

GroupTable build_text(const std::string& text, const BuildOptions& options = {}) {
  return build(parse_spec(text), options);
}

std::string cyclic_square(std::uint64_t n) {
  return "C(" + std::to_string(n) + ") x C(" + std::to_string(n) + ")";
}

std::string cp_c3(std::uint64_t p) {
  return "sd(C(" + std::to_string(p) + "), C(3), [" + std::to_string(*cube_root_of_unity(p)) + "])";
}

void require_p1mod3(std::uint64_t p) {
  if (!is_prime(p) || p % 3 != 1)
    premise(std::to_string(p) + " is not a prime congruent to 1 mod 3");
}

}  // namespace

bool AbelianSignature::valid() const {
  if (factors.empty()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) return false;
    if (i > 0 && factors[i] % factors[i - 1] != 0) return false;
  }
  return true;
}

std::uint64_t AbelianSignature::order() const {
  std::uint64_t n = 1;
  for (auto f : factors) n *= f;
  return n;
}

std::string AbelianSignature::spec() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) s += " x ";
    s += "C(" + std::to_string(factors[i]) + ")";
  }
  return s;
}

int predict_abelian_d(const AbelianSignature& sig) {
  if (sig.factors.size() != 2 || sig.factors[0] != sig.factors[1]) return 1;
  const std::uint64_t n = sig.factors[0];
  if (std::gcd(n, std::uint64_t{6}) == 1) return 2;
  if (n % 2 == 1 && n % 3 == 0) return 4;
  return 1;
}

std::vector<AbelianSignature> two_factor_signatures(std::uint64_t max_order) {
  std::vector<AbelianSignature> out;
  for (std::uint64_t n = 2; n <= max_order; ++n) out.push_back({{n}});
  for (std::uint64_t m = 2; m * m <= max_order; ++m)
    for (std::uint64_t n = m; m * n <= max_order; n += m) out.push_back({{m, n}});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.factors < b.factors;
  });
  return out;
}

AbelianReport verify_abelian_classification(std::uint64_t max_order, const SearchOptions& options) {
  AbelianReport report;
  for (auto& sig : two_factor_signatures(max_order)) {
    AbelianCase c;
    c.predicted = predict_abelian_d(sig);
    c.computed = beauville_dimension(build_text(sig.spec()), options).d;
    if (c.predicted != c.computed) ++report.mismatches;
    c.signature = std::move(sig);
    report.cases.push_back(std::move(c));
  }
  return report;
}

Order3CensusReport verify_order3_census(unsigned k, const SearchOptions& options) {
  if (k == 0) premise("k must be positive");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < k; ++i) n *= 3;
  const GroupTable g = build_text(cyclic_square(n));
  const SigmaEngine engine(g);
  const SigmaCatalog cat = build_sigma_catalog(engine, options);
  Order3CensusReport r;
  r.k = k;
  const auto& orders = engine.orders();
  r.order3_elements = static_cast<std::size_t>(std::count(orders.begin(), orders.end(), 3));
  r.pass = r.order3_elements == 8;
  for (const auto& rec : cat.records) {
    std::size_t c = 0;
    rec.carrier.for_each([&](Element e) { c += orders[e] == 3 ? 1 : 0; });
    r.order3_per_carrier.push_back(c);
    r.carrier_sizes.push_back(rec.carrier.size());
    if (c != 6) r.pass = false;
  }
  return r;
}

DirectProductReport verify_direct_product(const GroupSpec& gspec, const GroupSpec& hspec,
                                          const BuildOptions& build_options,
                                          const SearchOptions& options) {
  const GroupTable g = build(gspec, build_options);
  const GroupTable h = build(hspec, build_options);
  DirectProductReport r;
  r.order_g = g.order();
  r.order_h = h.order();
  if (std::gcd(r.order_g, r.order_h) != 1) premise("gcd(|G|, |H|) != 1");
  if (r.order_g * r.order_h > build_options.max_order)
    throw Error(ErrorCode::OrderCapExceeded, "|G x H| exceeds the order cap");

  const DimensionResult dg = beauville_dimension(g, options);
  r.d_g = dg.d;
  if (dg.d <= 2) premise("d(G) = " + std::to_string(dg.d) + ", need d(G) > 2");
  const DimensionResult dh = beauville_dimension(h, options);
  r.d_h = dh.d;
  if (dh.d != 2) premise("d(H) = " + std::to_string(dh.d) + ", need d(H) = 2");

  const ProductGroup p = direct_product_with_components(g, h, build_options.max_order);
  const SigmaEngine pe(p.table);
  r.d_product = beauville_dimension(build_sigma_catalog(pe, options), options).d;

  // Product pairs p_i = (x_i, u_i), q_i = (y_i, v_i) for i = 1, 2.
  const auto& gw = dg.witness->pairs;
  const auto& hw = dh.witness->pairs;
  const ElementSet pi =
      pe.sigma(p.element(gw[0].x, hw[0].x), p.element(gw[0].y, hw[0].y)) &
      pe.sigma(p.element(gw[1].x, hw[1].x), p.element(gw[1].y, hw[1].y));
  const ElementSet gi = sigma(g, gw[0].x, gw[0].y) & sigma(g, gw[1].x, gw[1].y);
  ElementSet embedded(p.table.order());
  gi.for_each([&](Element e) { embedded.insert(p.element(e, GroupTable::identity)); });
  r.mechanism_holds = pi == embedded;
  r.pass = r.mechanism_holds && r.d_product == r.d_g;
  return r;
}

std::optional<std::uint64_t> cube_root_of_unity(std::uint64_t p) {
  for (std::uint64_t t = 2; t < p; ++t)
    if (t * t % p * t % p == 1) return t;
  return std::nullopt;
}

std::string thm8_spec(std::uint64_t p) { return "C(3) x " + cp_c3(p); }

Thm8Census verify_thm8(std::uint64_t p, const SearchOptions& options) {
  require_p1mod3(p);
  Thm8Census c;
  c.p = p;
  c.t = *cube_root_of_unity(p);
  const GroupTable g = build_text(thm8_spec(p));
  const SigmaEngine engine(g);
  const SigmaCatalog cat = build_sigma_catalog(engine, options);
  c.order = g.order();
  c.class_count = engine.classes().count();
  for (auto o : engine.orders()) {
    if (o == p) ++c.count_order_p;
    if (o == 3 * p) ++c.count_order_3p;
    if (o == 3) ++c.count_order_3;
  }
  for (const auto& rec : cat.records) c.sigma_profile.push_back(rec.carrier.size());

  const std::size_t small_size = 6 * p + 1;
  ElementSet large_meet = ElementSet(g.order()).complement();
  std::size_t small = 0, large = 0;
  std::optional<std::size_t> large_size;
  bool large_equal = true;
  for (const auto& rec : cat.records) {
    if (rec.carrier.size() == small_size) {
      ++small;
      continue;
    }
    ++large;
    large_meet &= rec.carrier;
    if (large_size && *large_size != rec.carrier.size()) large_equal = false;
    large_size = rec.carrier.size();
  }
  c.center_in_large_intersection = large > 0 && center(g).is_subset_of(large_meet);
  c.d = beauville_dimension(cat, options).d;
  c.pass = c.order == 9 * p && c.class_count == p + 8 && c.count_order_p == p - 1 &&
           c.count_order_3p == 2 * (p - 1) && c.count_order_3 == 2 * (3 * p + 1) &&
           cat.records.size() == 4 && small == 1 && large == 3 && large_equal &&
           c.center_in_large_intersection && c.d == 4;
  return c;
}

std::string_view to_string(D4Family f) noexcept {
  switch (f) {
    case D4Family::A4xCpC3: return "a4-cp3";
    case D4Family::CmSquaredC3: return "c3k-squared-c3";
    case D4Family::C3xCnSquaredC3: return "c3-cn-squared-c3";
    case D4Family::C9xCnSquaredC9: return "c9-cn-squared-c9";
    case D4Family::CpC3xCqC3: return "cp3-cq3";
    case D4Family::C3xCp22C3: return "c3-cp22-c3";
  }
  return "unknown";
}

std::optional<D4Family> parse_d4_family(std::string_view name) {
  for (auto f : {D4Family::A4xCpC3, D4Family::CmSquaredC3, D4Family::C3xCnSquaredC3,
                 D4Family::C9xCnSquaredC9, D4Family::CpC3xCqC3, D4Family::C3xCp22C3})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

FamilyMember d4_family_member(D4Family family, const std::vector<std::uint64_t>& params) {
  const std::size_t arity = family == D4Family::CpC3xCqC3 ? 2 : 1;
  if (params.size() != arity)
    premise(std::string(to_string(family)) + " takes " + std::to_string(arity) + " parameter(s)");
  const std::uint64_t a = params[0];
  const std::string rot(kRotation);
  FamilyMember m{family, params, {}};
  switch (family) {
    case D4Family::A4xCpC3:
      require_p1mod3(a);
      m.spec = "sd(C(2) x C(2), C(3), " + rot + ") x " + cp_c3(a);
      break;
    case D4Family::CmSquaredC3:
      if (a == 0) premise("k must be positive");
      m.spec = "sd(" + cyclic_square(3 * a) + ", C(3), " + rot + ")";
      break;
    case D4Family::C3xCnSquaredC3:
      if (a < 2 || a % 3 == 0) premise("n must be at least 2 and prime to 3");
      m.spec = "C(3) x sd(" + cyclic_square(a) + ", C(3), " + rot + ")";
      break;
    case D4Family::C9xCnSquaredC9:
      if (a < 2 || a % 3 == 0) premise("n must be at least 2 and prime to 3");
      m.spec = "C(9) x sd(" + cyclic_square(a) + ", C(9), " + rot + ")";
      break;
    case D4Family::CpC3xCqC3:
      require_p1mod3(a);
      require_p1mod3(params[1]);
      m.spec = cp_c3(a) + " x " + cp_c3(params[1]);
      break;
    case D4Family::C3xCp22C3:
      require_p1mod3(a);
      m.spec = "C(3) x sd(C(" + std::to_string(a) + ") x C(2) x C(2), C(3), [a -> a^" +
               std::to_string(*cube_root_of_unity(a)) + ", b -> c, c -> b^-1*c^-1])";
      break;
  }
  return m;
}

std::vector<FamilyMember> d4_family_default_members(D4Family family) {
  std::vector<std::vector<std::uint64_t>> params;
  switch (family) {
    case D4Family::A4xCpC3: params = {{7}, {13}, {19}}; break;
    case D4Family::CmSquaredC3: params = {{1}, {2}, {3}, {4}, {5}, {6}}; break;
    case D4Family::C3xCnSquaredC3: params = {{2}, {4}, {5}, {7}, {8}, {10}}; break;
    case D4Family::C9xCnSquaredC9: params = {{2}}; break;
    case D4Family::CpC3xCqC3: params = {{7, 7}, {7, 13}}; break;
    case D4Family::C3xCp22C3: params = {{7}, {13}, {19}}; break;
  }
  std::vector<FamilyMember> out;
  for (const auto& p : params) out.push_back(d4_family_member(family, p));
  return out;
}

FamilyReport verify_family_d4(const FamilyMember& member, const BuildOptions& build_options,
                              const SearchOptions& options) {
  FamilyReport r{member, 0, 0, false};
  const GroupTable g = build_text(member.spec, build_options);
  r.order = g.order();
  r.d = beauville_dimension(g, options).d;
  r.pass = r.d == 4;
  return r;
}

Lemma2bReport verify_lemma2b(const GroupTable& g, std::size_t max_size, std::size_t limit,
                             const SearchOptions& options) {
  const SigmaEngine engine(g);
  const SigmaCatalog cat = build_sigma_catalog(engine, options);
  Lemma2bReport r;
  r.d = beauville_dimension(cat, options).d;
  for (std::size_t n = 2; n <= max_size; ++n) {
    const auto families = enumerate_trivial_families(cat, n, limit);
    for (const auto& fam : families) {
      std::vector<GeneratingPair> pairs;
      for (std::size_t i : fam) pairs.push_back(cat.records[i].canonical_pair);
      const StructureFamily s = check_structure(cat, pairs, options);
      if (s.classification == Classification::NotAStructure || r.d < 2 ||
          r.d > static_cast<int>(n))
        ++r.violations;
    }
    r.checked.emplace_back(n, families.size());
  }
  return r;
}

}  // namespace bv
