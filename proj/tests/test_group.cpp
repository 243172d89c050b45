#include <doctest.h>

#include "bv/construct.hpp"
#include "bv/error.hpp"
#include "support.hpp"

using namespace bv;
using bvtest::make;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("element sets") {
  ElementSet a(130), b(130);
  a.insert(0);
  a.insert(64);
  a.insert(129);
  b.insert(64);
  b.insert(3);
  CHECK(a.size() == 3);
  CHECK((a & b).size() == 1);
  CHECK((a | b).size() == 4);
  CHECK((a - b).elements() == std::vector<Element>{0, 129});
  CHECK(a.intersects(b));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK(ElementSet::full(130).size() == 130);
  CHECK(ElementSet(130).complement().size() == 130);
  CHECK(a.first() == 0);
  CHECK(a.next(1) == 64);
  CHECK(a.next(130) == 130);
  CHECK(canonical_less(b, a));
}

TEST_CASE("permutation closures") {
  CHECK(make("@S5").order() == 120);
  CHECK(make("@A5").order() == 60);
  CHECK(make("@A6").order() == 360);
  CHECK(make("@PSL3(2)").order() == 168);
  CHECK(make("@SL2(3)").order() == 24);
  CHECK(make("@Q8").order() == 8);
  CHECK(make("@D8").order() == 8);
  CHECK_FALSE(make("@Q8").is_abelian());
  for (auto name : {"@S4", "@A5", "@PSL3(2)", "@Q8"}) CHECK_FALSE(validate_group_laws(make(name)));
}

TEST_CASE("invalid permutations") {
  CHECK(code_of([] { permutation_from_cycles(3, {{1, 4}}); }) == ErrorCode::InvalidPermutation);
  CHECK(code_of([] { permutation_from_cycles(3, {{1, 2}, {2, 3}}); }) == ErrorCode::InvalidPermutation);
  CHECK(code_of([] { make("@S5", 100); }) == ErrorCode::OrderCapExceeded);
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(make("@S5")).count() == 7);
  CHECK(conjugacy_classes(make("@A5")).count() == 5);
  CHECK(conjugacy_classes(make("@PSL3(2)")).count() == 6);
  CHECK(conjugacy_classes(make("C(12)")).count() == 12);
  const auto g = make("@S4");
  const auto cc = conjugacy_classes(g);
  std::size_t total = 0;
  for (std::size_t c = 0; c < cc.count(); ++c) {
    total += cc.classes[c].size();
    CHECK(cc.representative(c) == *std::min_element(cc.classes[c].begin(), cc.classes[c].end()));
    for (Element x : cc.classes[c])
      for (Element k = 0; k < g.order(); ++k) CHECK(cc.class_of[g.conjugate(x, k)] == c);
  }
  CHECK(total == 24);
  CHECK(cc.classes[0] == std::vector<Element>{0});
}

TEST_CASE("element orders and subgroups") {
  const auto g = make("C(12)");
  const auto orders = element_orders(g);
  CHECK(std::count(orders.begin(), orders.end(), 12) == 4);
  CHECK(std::count(orders.begin(), orders.end(), 1) == 1);
  const auto s5 = make("@S5");
  CHECK(element_order(s5, s5.generators()[0]) == 5);
  CHECK(element_order(s5, s5.generators()[1]) == 2);
  CHECK(cyclic_subgroup(s5, s5.generators()[0]).size() == 5);
  CHECK(subgroup_generated(s5, s5.generators()).size() == 120);
  CHECK(s5.pow(s5.generators()[0], -1) == s5.inv(s5.generators()[0]));
  CHECK(s5.pow(s5.generators()[0], 5) == 0);
}

TEST_CASE("centres and normal closures") {
  CHECK(center(make("@SL2(3)")).size() == 2);
  CHECK(center(make("@Q8")).size() == 2);
  CHECK(center(make("@S5")).size() == 1);
  CHECK(center(make("C(4) x C(6)")).size() == 24);
  const auto s4 = make("@S4");
  // A transposition generates all of S4 as a normal subgroup.
  const Element t = s4.generators()[1];
  CHECK(normal_closure(s4, std::vector<Element>{t}).size() == 24);
  // A double transposition generates the Klein four group.
  const auto orders = element_orders(s4);
  for (const auto& cls : conjugacy_classes(s4).classes)
    if (cls.size() == 3 && orders[cls.front()] == 2)
      CHECK(normal_closure(s4, std::vector<Element>{cls.front()}).size() == 4);
}

TEST_CASE("direct products") {
  const auto g = make("@A4");
  const auto h = make("C(5) x C(5)");
  const auto p = direct_product_with_components(g, h);
  CHECK(p.table.order() == 300);
  CHECK_FALSE(validate_group_laws(p.table));
  for (Element e = 0; e < p.table.order(); ++e) {
    const auto [l, r] = p.components[e];
    CHECK(p.element(l, r) == e);
  }
  // Coprime, 2-generated factors give a 2-generated product.
  CHECK(p.table.generators().size() == 2);
  CHECK(direct_product(make("@S3"), make("C(5)")).generators().size() == 3);
  CHECK(make("C(4) x C(6) x C(5)").order() == 120);
}

TEST_CASE("semidirect products") {
  const auto d = make("sd(C(7), C(2), [-1])");
  CHECK(d.order() == 14);
  CHECK(conjugacy_classes(d).count() == 5);
  const auto f = make("sd(C(7), C(3), [2])");
  CHECK(f.order() == 21);
  CHECK(center(f).size() == 1);
  CHECK(make("sd(C(2) x C(2), C(3), [a -> b, b -> a*b])").order() == 12);
  CHECK(code_of([] { make("sd(C(5), C(3), [2])"); }) == ErrorCode::SemidirectNonexistent);
  CHECK(code_of([] { make("sd(C(6), C(2), [a -> a^2])"); }) == ErrorCode::NotAnAutomorphism);
  CHECK(code_of([] { make("sd(C(7), C(2), [a -> a^2])"); }) == ErrorCode::ActionNotHomomorphic);
  CHECK(code_of([] { make("sd(C(6), C(2), [2])"); }) == ErrorCode::SemidirectNonexistent);
}

TEST_CASE("quotients") {
  const auto s4 = make("@S4");
  ElementSet v4(s4.order());
  // Klein four subgroup: identity plus the double transpositions.
  const auto orders = element_orders(s4);
  const auto cc = conjugacy_classes(s4);
  for (const auto& cls : cc.classes)
    if (cls.size() == 3 && orders[cls.front()] == 2)
      for (Element e : cls) v4.insert(e);
  v4.insert(0);
  const auto q = quotient(s4, v4);
  CHECK(q.target.order() == 6);
  CHECK(q.kernel == v4);
  for (Element a = 0; a < s4.order(); ++a)
    for (Element b = 0; b < s4.order(); ++b)
      CHECK(q.image[s4.mul(a, b)] == q.target.mul(q.image[a], q.image[b]));

  ElementSet not_normal(s4.order());
  not_normal.insert(0);
  not_normal.insert(s4.generators()[1]);
  CHECK(code_of([&] { quotient(s4, not_normal); }) == ErrorCode::NotNormal);
  ElementSet not_subgroup(s4.order());
  not_subgroup.insert(0);
  not_subgroup.insert(s4.generators()[0]);
  CHECK(code_of([&] { quotient(s4, not_subgroup); }) == ErrorCode::NotSubgroup);
}

TEST_CASE("group law validation catches a broken table") {
  std::vector<Element> mult{0, 1, 2, 1, 2, 0, 2, 0, 1};
  GroupTable ok(3, mult, {1}, {"a"}, "C3");
  CHECK_FALSE(validate_group_laws(ok));
  mult[4] = 1;
  GroupTable bad(3, mult, {1}, {"a"}, "broken");
  CHECK(validate_group_laws(bad));
}
