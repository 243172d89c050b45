#include <doctest.h>

#include "bv/error.hpp"
#include "bv/fp.hpp"
#include "support.hpp"

using namespace bv;
using bvtest::make;

namespace {

constexpr const char* kEx3 =
    "fp(x,y; x^9, y^9, [x,y]^3, [x^3,y], [x,y^3], (x*y^2)^3, (x^2*y)^3, (y*x)^3*x^3*y^3)";
constexpr const char* kEx5G =
    "fp(x,y; x^3, y^3, (y^2*x*y^2*x^2)^3, (y^2*x^2*y*x^2)^3, (y^2*x^2*y*x)^3, "
    "(y^2*x)^2*y*x*(y*x^2)^2*(y*x)^2)";
constexpr const char* kEx5H = "fp(s,t; s^3, t^3, (s*t)^3, s*t^2*(s*t^2*s^2*t)^2*s^2*t)";

Presentation presentation(const char* spec) {
  return presentation_of(std::get<FpSpec>(parse_spec(spec).node));
}

Word parse_word(const char* text) {
  return std::get<FpSpec>(parse_spec(std::string("fp(x,y; ") + text + ")").node).relators.at(0);
}

void check_relators_vanish(const char* spec) {
  const auto p = presentation(spec);
  const auto g = make(spec);
  for (const auto& r : p.relators) CHECK(evaluate_word(g, r) == 0);
}

}  // namespace

TEST_CASE("cyclic and small presentations") {
  CHECK(todd_coxeter(presentation("fp(a; a^5)")).size() == 5);
  CHECK(todd_coxeter(presentation("fp(a, b; a^2, b^2, (a*b)^3)")).size() == 6);
  CHECK(todd_coxeter(presentation("fp(a, b; a^4, b^2, (a*b)^2)")).size() == 8);
  CHECK(todd_coxeter(presentation("fp(a, b; a^2, b^3, (a*b)^5)")).size() == 60);
  CHECK(todd_coxeter(presentation("fp(a, b; a^3, b^3, [a,b])")).size() == 9);
}

TEST_CASE("coset tables are complete and consistent") {
  const auto p = presentation("fp(a, b; a^2, b^3, (a*b)^4)");
  const auto t = todd_coxeter(p);
  REQUIRE(t.size() == 24);
  for (std::size_t c = 0; c < t.size(); ++c)
    for (std::size_t col = 0; col < t.columns(); ++col) {
      const auto d = t.entry(c, col);
      REQUIRE(d >= 0);
      REQUIRE(static_cast<std::size_t>(d) < t.size());
      CHECK(static_cast<std::size_t>(t.entry(static_cast<std::size_t>(d), col ^ 1U)) == c);
    }
  CHECK(t.total_defined() >= t.size());
  const auto g = realize(p, t, "S4");
  CHECK(g.order() == 24);
  CHECK_FALSE(validate_group_laws(g));
}

TEST_CASE("example 3 presentation") {
  const auto g = make(kEx3);
  CHECK(g.order() == 243);
  CHECK(element_order(g, g.generators()[0]) == 9);
  CHECK(element_order(g, g.generators()[1]) == 9);
  CHECK_FALSE(validate_group_laws(g));
  check_relators_vanish(kEx3);
  // Without the last relator the group has order 729.
  CHECK(make("fp(x,y; x^9, y^9, [x,y]^3, [x^3,y], [x,y^3], (x*y^2)^3, (x^2*y)^3)").order() == 729);
}

TEST_CASE("example 5 presentations") {
  const auto g = make(kEx5G);
  CHECK(g.order() == 729);
  CHECK(element_order(g, g.generators()[0]) == 3);
  CHECK(element_order(g, g.generators()[1]) == 3);
  check_relators_vanish(kEx5G);

  const auto h = make(kEx5H);
  CHECK(h.order() == 81);
  check_relators_vanish(kEx5H);

  const Element n1 = evaluate_word(g, parse_word("(y*x)^3"));
  const Element n2 = evaluate_word(g, parse_word("y*x*y^2*x*(y*x^2)^3*y^2*x*y"));
  const auto n = normal_closure(g, std::vector<Element>{n1, n2});
  CHECK(n.size() == 9);
  const auto q = quotient(g, n);
  CHECK(q.target.order() == 81);
  CHECK(make(std::string("quot(") + kEx5G + "; (y*x)^3, y*x*y^2*x*(y*x^2)^3*y^2*x*y)").order() == 81);
}

TEST_CASE("coset counts are stable across limits") {
  for (const char* spec : {kEx3, kEx5H}) {
    const auto p = presentation(spec);
    const auto a = todd_coxeter(p, 50000);
    const auto b = todd_coxeter(p, 400000);
    CHECK(a.size() == b.size());
    for (std::size_t c = 0; c < a.size(); ++c)
      for (std::size_t col = 0; col < a.columns(); ++col) CHECK(a.entry(c, col) == b.entry(c, col));
  }
}

TEST_CASE("infinite and oversized presentations") {
  try {
    todd_coxeter(presentation("fp(a, b; a^2)"), 2000);
    FAIL("expected CosetLimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CosetLimitExceeded);
  }
  try {
    todd_coxeter(presentation("fp(a, b; a^2, b^3)"), 2000);
    FAIL("expected CosetLimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CosetLimitExceeded);
  }
  Presentation bad{{"a"}, {Word::generator("b", 2)}};
  try {
    todd_coxeter(bad);
    FAIL("expected UnknownGenerator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGenerator);
  }
}

TEST_CASE("trivial presentations") {
  CHECK(todd_coxeter(presentation("fp(a; a)")).size() == 1);
  CHECK(todd_coxeter(presentation("fp(a, b; a^2, b^3, a*b)")).size() == 1);
}
