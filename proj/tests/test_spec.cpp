#include <doctest.h>

#include <random>

#include "bv/error.hpp"
#include "support.hpp"

using namespace bv;
using bvtest::make;

namespace {

const ParseError* parse_failure(std::string_view text, ParseError& storage) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    storage = e;
    return &storage;
  }
  return nullptr;
}

// Random specs for the render/parse round trip. Only the syntax matters here,
// so the trees need not describe buildable groups.
class SpecGen {
 public:
  explicit SpecGen(std::uint32_t seed) : rng_(seed) {}

  GroupSpec spec(int depth) {
    const int kind = depth <= 0 ? pick(0, 1) * 3 : pick(0, 5);
    switch (kind) {
      case 0: return GroupSpec{CyclicSpec{static_cast<std::uint64_t>(pick(1, 60))}};
      case 1: return GroupSpec{DirectSpec{spec(depth - 1), spec(depth - 1)}};
      case 2: {
        SemidirectSpec s{spec(depth - 1), spec(depth - 1), {}};
        // Explicit images need base generator names known before building.
        const auto base_names = static_generator_names(*s.base);
        const int n = pick(1, 2);
        for (int i = 0; i < n; ++i) {
          if (!base_names || base_names->empty() || pick(0, 1) == 0) {
            s.action.push_back(ActorAction{static_cast<std::int64_t>(pick(-9, 9))});
          } else {
            ActorAction::Images images;
            const int m = pick(1, 2);
            for (int j = 0; j < m; ++j) images.emplace_back(one_of(*base_names), word(2, *base_names));
            s.action.push_back(ActorAction{std::move(images)});
          }
        }
        return GroupSpec{std::move(s)};
      }
      case 3: {
        PermSpec p;
        p.degree = static_cast<std::size_t>(pick(2, 9));
        const int gens = pick(1, 3);
        for (int i = 0; i < gens; ++i) {
          std::vector<PermSpec::Cycle> cycles;
          const int nc = pick(1, 2);
          for (int c = 0; c < nc; ++c) {
            PermSpec::Cycle cyc;
            const int len = pick(0, 3);
            for (int k = 0; k < len; ++k) cyc.push_back(static_cast<std::size_t>(pick(1, static_cast<int>(p.degree))));
            cycles.push_back(cyc);
          }
          p.generators.push_back(cycles);
        }
        return GroupSpec{std::move(p)};
      }
      case 4: {
        FpSpec f;
        f.generators = {"x", "y"};
        if (pick(0, 1)) f.generators.push_back("g12");
        const int r = pick(0, 3);
        for (int i = 0; i < r; ++i) f.relators.push_back(word(3, f.generators));
        return GroupSpec{std::move(f)};
      }
      default: {
        QuotientSpec q{spec(depth - 1), {}};
        const auto names = static_generator_names(*q.inner);
        if (!names || names->empty()) return GroupSpec{CyclicSpec{static_cast<std::uint64_t>(pick(1, 60))}};
        const int r = pick(1, 2);
        for (int i = 0; i < r; ++i) q.normal_seeds.push_back(word(3, *names));
        return GroupSpec{std::move(q)};
      }
    }
  }

  Word word(int depth, const std::vector<std::string>& names) {
    Word w;
    const int n = pick(0, 3);
    for (int i = 0; i < n; ++i) {
      Word f;
      switch (depth <= 0 ? 0 : pick(0, 2)) {
        case 0: f = Word::generator(one_of(names), pick(1, 4) * (pick(0, 1) ? 1 : -1)); break;
        case 1: f = word(depth - 1, names).power(pick(-3, 3)); break;
        default: f = Word::commutator(word(depth - 1, names), word(depth - 1, names)); break;
      }
      w = w * f;
    }
    return w;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  const std::string& one_of(const std::vector<std::string>& names) {
    return names[static_cast<std::size_t>(pick(0, static_cast<int>(names.size()) - 1))];
  }
  std::mt19937 rng_;
};

}  // namespace

TEST_CASE("parsing the documented forms") {
  CHECK(std::holds_alternative<CyclicSpec>(parse_spec("C(12)").node));
  CHECK(std::holds_alternative<DirectSpec>(parse_spec("C(3) x C(3)").node));
  CHECK(std::holds_alternative<SemidirectSpec>(parse_spec("sd(C(7), C(3), [2])").node));
  CHECK(std::holds_alternative<PermSpec>(parse_spec("perm(5; (1 2 3 4 5), (1 2))").node));
  CHECK(std::holds_alternative<FpSpec>(parse_spec("fp(x, y; x^3, y^3, (x*y)^3)").node));
  CHECK(std::holds_alternative<QuotientSpec>(parse_spec("quot(C(9); a^3)").node));
  CHECK(parse_spec("(C(3) x C(5))") == parse_spec("C(3) x C(5)"));
  CHECK(parse_spec("  C( 3 )x C(3) ") == parse_spec("C(3) x C(3)"));

  const auto d = parse_spec("C(2) x C(3) x C(5)");
  const auto& top = std::get<DirectSpec>(d.node);
  CHECK(std::holds_alternative<DirectSpec>(top.left->node));  // left-associated

  const auto fp = std::get<FpSpec>(parse_spec("fp(x,y; [x,y]^3, x^-2*y)").node);
  CHECK(fp.relators[0] == Word::commutator(Word::generator("x"), Word::generator("y")).power(3));
  CHECK(fp.relators[1] == Word::generator("x", -2) * Word::generator("y"));
  const auto empty = std::get<FpSpec>(parse_spec("fp(x;)").node);
  CHECK(empty.relators.empty());
}

TEST_CASE("parse errors carry position and kind") {
  ParseError e(ErrorCode::SyntaxError, "", 0, 0, "");
  const ParseError* p = parse_failure("C(3) x", e);
  REQUIRE(p);
  CHECK(p->code() == ErrorCode::SyntaxError);
  CHECK(p->line() == 1);
  CHECK(p->column() == 7);

  p = parse_failure("C(3) x\n  Q(4)", e);
  REQUIRE(p);
  CHECK(p->code() == ErrorCode::SyntaxError);
  CHECK(p->line() == 2);
  CHECK(p->column() == 3);
  CHECK(p->token() == "Q");

  p = parse_failure("fp(x, y; x^3, z)", e);
  REQUIRE(p);
  CHECK(p->code() == ErrorCode::UnknownGenerator);
  CHECK(p->token() == "z");

  p = parse_failure("perm(3; (1 5))", e);
  REQUIRE(p);
  CHECK(p->code() == ErrorCode::ArityError);

  for (auto bad : {"", "C()", "C(-3)", "perm(3; (1 2)", "fp(x,y; x^)", "C(3) y C(3)", "sd(C(3), C(2))"})
    CHECK_MESSAGE(parse_failure(bad, e) != nullptr, bad);
}

TEST_CASE("render and parse round trip") {
  for (std::uint32_t seed = 1; seed <= 400; ++seed) {
    SpecGen gen(seed);
    const GroupSpec s = gen.spec(3);
    const std::string text = render_spec(s);
    INFO(text);
    GroupSpec back;
    CHECK_NOTHROW(back = parse_spec(text));
    CHECK(back == s);
    CHECK(render_spec(back) == text);
  }
}

TEST_CASE("word rendering") {
  CHECK(render_word(Word()) == "1");
  CHECK(render_word(Word::generator("x", -2)) == "x^-2");
  const Word st = Word::generator("s") * Word::generator("t");
  CHECK(render_word(st.power(3)) == "(s*t)^3");
  CHECK(Word::generator("x", 2) * Word::generator("x", -2) == Word());
  CHECK(st.inverse() == Word::generator("t", -1) * Word::generator("s", -1));
  CHECK(st.power(3).length() == 6);
}

TEST_CASE("commutator convention matches u^-1 v^-1 u v") {
  for (auto spec : {"@S3", "@S4", "@Q8", "sd(C(7), C(3), [2])"}) {
    const auto g = make(spec);
    const Word u = Word::generator("u"), v = Word::generator("v");
    const Word c = Word::commutator(u, v);
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b) {
        const Element expect = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
        CHECK(evaluate_word(g, {{"u", a}, {"v", b}}, c) == expect);
      }
  }
  const auto g = make("@S3");
  CHECK_THROWS_AS(evaluate_word(g, {{"u", 1}}, Word::generator("v")), Error);
}

TEST_CASE("built orders") {
  CHECK(make("C(7)").order() == 7);
  CHECK(make("C(1)").order() == 1);
  CHECK(make("sd(C(13), C(3), [3])").order() == 39);
  CHECK(make("sd(C(3) x C(3), C(3), [a -> a*b])").order() == 27);
  CHECK(make("fp(s, t; s^3, t^3, (s*t)^3, s*t^2*(s*t^2*s^2*t)^2*s^2*t)").order() == 81);
  CHECK(make("quot(@S4; a^2)").order() == 6);  // closure of a double transposition is V4
  CHECK(make("quot(C(12); a^4)").order() == 4);
  CHECK(make("C(3) x sd(C(7), C(3), [2])").order() == 63);
}

TEST_CASE("direct product order is the product of factor orders") {
  const std::vector<std::string> factors{"C(1)", "C(4)", "@S3", "@Q8", "sd(C(7), C(3), [2])", "C(2) x C(2)"};
  for (const auto& a : factors)
    for (const auto& b : factors) {
      const auto p = make(a + " x " + b);
      CHECK(p.order() == make(a).order() * make(b).order());
      CHECK_FALSE(validate_group_laws(p));
    }
}

TEST_CASE("generator names") {
  CHECK(positional_generator_name(0) == "a");
  CHECK(positional_generator_name(25) == "z");
  CHECK(positional_generator_name(26) == "g26");
  const auto names = static_generator_names(parse_spec("fp(s, t; s^3)"));
  REQUIRE(names);
  CHECK(*names == std::vector<std::string>{"s", "t"});
  CHECK(make("perm(4; (1 2 3 4), (1 2))").generator_names() == std::vector<std::string>{"a", "b"});
}
