#include <doctest.h>

#include "bv/error.hpp"
#include "support.hpp"

using namespace bv;
using nlohmann::json;

TEST_CASE("presets") {
  CHECK(presets().size() == 10);
  for (const auto& p : presets()) {
    INFO(p.name);
    CHECK(preset_spec(p.name) == std::string(p.spec));
    CHECK_NOTHROW(bvtest::make("@" + std::string(p.name)));
  }
  CHECK_FALSE(preset_spec("S7"));
  CHECK(expand_presets("@S3 x C(5)") == "(perm(3; (1 2 3), (1 2))) x C(5)");
  // Longest name wins: SL2(3) is not S followed by garbage.
  CHECK(expand_presets("@SL2(3)") == "(" + *preset_spec("SL2(3)") + ")");
  try {
    expand_presets("@S9");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
}

TEST_CASE("fixture parsing") {
  const auto rows = parse_fixtures("# comment\n\n4\tC(3) x C(3)\t(9, 2) C3 x C3\n2\t@S5\tS5\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].expected_d == 4);
  CHECK(rows[0].spec == "C(3) x C(3)");
  CHECK(rows[0].expected_order == 9);
  CHECK_FALSE(rows[1].expected_order);
  CHECK_THROWS_AS(parse_fixtures("4 C(3) x C(3)\n"), Error);
  CHECK_THROWS_AS(parse_fixtures("x\tC(3)\tnote\n"), Error);

  const auto bundled = parse_fixtures(bundled_fixture_text("paper-tables"));
  CHECK(bundled.size() == 105);
  for (const auto& r : bundled) {
    INFO(r.spec);
    CHECK(r.expected_order);
    CHECK((r.expected_d == 2 || r.expected_d == 3 || r.expected_d == 4));
  }
  CHECK(bundled_suites() == std::vector<std::string_view>{"paper-tables"});
  CHECK_THROWS_AS(bundled_fixture_text("nope"), Error);
}

TEST_CASE("running fixtures") {
  const auto rows = parse_fixtures("4\tC(3) x C(3)\t(9, 2)\n2\tC(3) x C(3)\t(9, 2) wrong d\n4\tC(3) x C(3)\t(10, 1)\n"
                                   "2\tsd(C(5), C(3), [2])\t(15, 1)\n");
  const auto r = run_fixtures("inline", rows);
  REQUIRE(r.results.size() == 4);
  CHECK(r.results[0].pass);
  CHECK_FALSE(r.results[1].pass);
  CHECK_FALSE(r.results[2].pass);
  CHECK_FALSE(r.results[3].pass);
  CHECK_FALSE(r.results[3].error.empty());
  CHECK(r.failures() == 3);
  const auto j = r.to_json();
  CHECK(j["failures"] == 3);
  CHECK(j["rows"].size() == 4);
  CHECK(j["timing_ms"].is_null());
}

TEST_CASE("range parsing") {
  CHECK(parse_range("2..5") == std::vector<std::uint64_t>{2, 3, 4, 5});
  CHECK(parse_range("7,13,19") == std::vector<std::uint64_t>{7, 13, 19});
  CHECK(parse_range("13,7") == std::vector<std::uint64_t>{7, 13});
  CHECK_THROWS_AS(parse_range("5..2"), Error);
  CHECK_THROWS_AS(parse_range("a"), Error);
}

TEST_CASE("analysis report schema") {
  const auto r = analyze("C(3) x C(3)");
  CHECK(r.order == 9);
  CHECK(r.classes == 9);
  CHECK(r.sigma_count == 4);
  CHECK(r.sigma_sizes == std::vector<std::size_t>{7, 7, 7, 7});
  CHECK(r.d == 4);
  const json j = r.to_json();
  CHECK(j["version"] == kReportVersion);
  CHECK(j["spec"] == "C(3) x C(3)");
  for (auto key : {"order", "classes", "sigma_count", "sigma_sizes"}) CHECK(j["group"].contains(key));
  for (auto key : {"d", "witness", "certificate", "blocking_element"}) CHECK(j["dimension"].contains(key));
  CHECK(j["dimension"]["witness"].size() == 4);
  CHECK(j["dimension"]["blocking_element"].is_null());
  CHECK(j["timing_ms"].is_null());
  CHECK(j["dimension"]["witness"][0]["x"].is_string());  // rendered as a word

  const auto b = analyze("C(4) x C(4)").to_json();
  CHECK(b["dimension"]["d"] == 1);
  CHECK(b["dimension"]["witness"].is_null());
  CHECK_FALSE(b["dimension"]["blocking_element"].is_null());

  AnalyzeOptions timed;
  timed.timing = true;
  CHECK(analyze("C(5) x C(5)", timed).to_json()["timing_ms"].is_number());

  CHECK(AnalysisReport::csv_header().find("d") != std::string::npos);
  CHECK(r.to_text().find("d: 4") != std::string::npos);
}

TEST_CASE("element words") {
  const auto g = bvtest::make("@S4");
  const WordRenderer w(g);
  CHECK(w.word(0) == std::optional<std::string>("1"));
  CHECK(w.word(g.generators()[0]) == std::optional<std::string>("a"));
  for (Element e = 0; e < g.order(); ++e) CHECK(w.word(e));
  const WordRenderer none(g, 0);
  CHECK(none.to_json(g.generators()[0]) == json(g.generators()[0]));
}

TEST_CASE("structures listing") {
  const auto s = list_structures("C(3) x C(3)", StructureMode::Minimal, 20);
  CHECK(s.d == 4);
  REQUIRE(s.families.size() == 1);
  CHECK(s.families[0].pairs.size() == 4);
  CHECK(s.families[0].classification == Classification::Minimal);

  const auto none = list_structures("C(4) x C(4)", StructureMode::Minimal, 20);
  CHECK(none.families.empty());
  CHECK(none.blocking_element);

  const auto all = list_structures("C(5) x C(5)", StructureMode::All, 12);
  CHECK(all.families.size() == 12);
  CHECK(all.families.front().pairs.size() == 2);
}

TEST_CASE("scan families") {
  CHECK(scan_families().size() == 12);
  const auto cn = scan_members("cnxcn", std::vector<std::uint64_t>{3, 5, 6}, 1000);
  REQUIRE(cn.size() == 3);
  CHECK(cn[0].expected_d == 4);
  CHECK(cn[1].expected_d == 2);
  CHECK(cn[2].expected_d == 1);
  const auto t8 = scan_members("thm8", std::vector<std::uint64_t>{}, 200);
  CHECK(t8.size() == 3);  // p = 7, 13 and 19 fit under 200
  for (const auto& m : t8) CHECK(m.expected_d == 4);
  for (const auto& m : scan_members("dihedral", std::vector<std::uint64_t>{}, 40)) CHECK(m.order <= 40);
  CHECK_THROWS_AS(scan_members("nope", std::vector<std::uint64_t>{}, 100), Error);
}
