// bv: Beauville dimension calculator.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "bv/catalog.hpp"
#include "bv/error.hpp"
#include "bv/verifiers.hpp"

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

struct Globals {
  std::string format = "text";
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::size_t max_order = bv::kDefaultMaxOrder;
  std::size_t max_cosets = bv::kDefaultMaxCosets;
  bool timing = false;
  CLI::Option* max_order_option = nullptr;

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Text;
  }
  bv::AnalyzeOptions analyze() const {
    bv::AnalyzeOptions o;
    o.build.max_order = max_order;
    o.build.max_cosets = max_cosets;
    o.search.threads = threads;
    o.timing = timing;
    return o;
  }
};

int exit_code(const bv::Error& e) {
  switch (e.code()) {
    case bv::ErrorCode::SyntaxError:
    case bv::ErrorCode::UnknownGenerator:
    case bv::ErrorCode::ArityError:
      return 2;
    case bv::ErrorCode::NotTwoGenerated:
    case bv::ErrorCode::DegenerateTrivialGroup:
      return 4;
    default:
      return 3;
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const Globals& g, const std::string& spec) {
  const auto r = bv::analyze(spec, g.analyze());
  switch (g.fmt()) {
    case Format::Json: print_json(r.to_json()); break;
    case Format::Csv: std::cout << bv::AnalysisReport::csv_header() << "\n" << r.to_csv() << "\n"; break;
    case Format::Text: std::cout << r.to_text(); break;
  }
  return 0;
}

int cmd_structures(const Globals& g, const std::string& spec, bool all, std::size_t limit) {
  const auto r = bv::list_structures(spec, all ? bv::StructureMode::All : bv::StructureMode::Minimal,
                                     limit, g.analyze());
  switch (g.fmt()) {
    case Format::Json: print_json(r.to_json()); break;
    case Format::Csv: std::cout << r.to_csv(); break;
    case Format::Text: std::cout << r.to_text(); break;
  }
  return 0;
}

int cmd_fixtures(const Globals& g, const std::string& suite, const std::string& file) {
  std::string text;
  std::string name = suite;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw bv::Error(bv::ErrorCode::InvalidArgument, "cannot read " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    name = file;
  } else {
    text = std::string(bv::bundled_fixture_text(suite));
  }
  const auto rows = bv::parse_fixtures(text);
  const auto r = bv::run_fixtures(name, rows, g.analyze());
  switch (g.fmt()) {
    case Format::Json: print_json(r.to_json()); break;
    case Format::Csv: std::cout << r.to_csv(); break;
    case Format::Text: std::cout << r.to_text(); break;
  }
  return r.failures() == 0 ? 0 : 1;
}

int cmd_scan(const Globals& g, const std::string& family, const std::string& range, bool no_div_3,
             std::uint64_t bound) {
  std::vector<bv::ScanMember> members;
  if (no_div_3) {
    const auto params = range.empty() ? std::vector<std::uint64_t>{} : bv::parse_range(range);
    const auto families = family.empty() ? bv::scan_families()
                                         : std::vector<std::string_view>{family};
    for (auto f : families)
      for (auto& m : bv::scan_members(f, params, bound))
        if (m.order % 3 != 0) members.push_back(std::move(m));
  } else {
    if (family.empty())
      throw bv::Error(bv::ErrorCode::InvalidArgument, "scan needs --family or --no-div-3");
    const auto params = range.empty() ? std::vector<std::uint64_t>{} : bv::parse_range(range);
    members = bv::scan_members(family, params, bound);
  }

  std::size_t flagged = 0, errors = 0;
  if (g.fmt() == Format::Csv) std::cout << "family,params,order,expected_d,d,flagged,error\n";
  for (const auto& m : members) {
    bv::ScanResult res;
    res.member = m;
    try {
      res.report = bv::analyze(m.spec, g.analyze());
      if (no_div_3)
        res.flagged = res.report->d > 2;
      else
        res.flagged = m.expected_d && *m.expected_d != res.report->d;
    } catch (const std::exception& e) {
      res.error = e.what();
      ++errors;
    }
    if (res.flagged) ++flagged;
    switch (g.fmt()) {
      case Format::Json: std::cout << bv::scan_result_json(res).dump() << "\n"; break;
      case Format::Text: std::cout << bv::scan_result_text(res) << "\n"; break;
      case Format::Csv: {
        std::string params;
        for (auto p : m.params) params += (params.empty() ? "" : ";") + std::to_string(p);
        std::cout << m.family << "," << params << "," << m.order << ","
                  << (m.expected_d ? std::to_string(*m.expected_d) : "") << ","
                  << (res.report ? std::to_string(res.report->d) : "") << ","
                  << (res.flagged ? "true" : "false") << ",\"" << res.error << "\"\n";
        break;
      }
    }
    std::cout.flush();
  }
  if (g.fmt() == Format::Json)
    std::cout << json{{"summary", {{"members", members.size()}, {"flagged", flagged}, {"errors", errors}}}}.dump()
              << "\n";
  else if (g.fmt() == Format::Text)
    std::cout << members.size() << " members, " << flagged << " flagged, " << errors << " errors\n";
  return flagged == 0 ? 0 : 1;
}

struct VerifyArgs {
  std::string thm;
  std::uint64_t p = 7;
  unsigned k = 1;
  std::string gspec, hspec, spec, family, params;
  std::size_t max_size = 6;
  std::size_t limit = 50;
};

void emit_verify(const Globals& g, json j, const std::string& text, bool pass) {
  j["pass"] = pass;
  j["version"] = bv::kReportVersion;
  switch (g.fmt()) {
    case Format::Json: print_json(j); break;
    case Format::Csv: {
      std::cout << "check,pass\n" << j.value("check", std::string()) << "," << (pass ? "true" : "false") << "\n";
      break;
    }
    case Format::Text: std::cout << text << (pass ? "PASS" : "FAIL") << "\n"; break;
  }
}

int verify_abelian(const Globals& g, const std::string& thm) {
  // --max-order doubles as the order bound here; the default bound is 100.
  const std::uint64_t bound = g.max_order_option->count() > 0 ? g.max_order : 100;
  const auto r = bv::verify_abelian_classification(bound, g.analyze().search);
  json cases = json::array();
  std::ostringstream text;
  std::size_t failures = 0;
  for (const auto& c : r.cases) {
    const bool cn_cn = c.signature.factors.size() == 2 && c.signature.factors[0] == c.signature.factors[1];
    bool ok = c.predicted == c.computed;
    if (thm == "2") ok = (c.computed == 2) == (c.predicted == 2);
    if (thm == "3") ok = c.computed <= 2 || (c.computed == 4 && cn_cn && c.predicted == 4);
    if (!ok) ++failures;
    cases.push_back({{"signature", c.signature.factors}, {"predicted", c.predicted}, {"d", c.computed}, {"ok", ok}});
    if (!ok) text << "mismatch " << c.signature.spec() << ": predicted " << c.predicted << ", got " << c.computed << "\n";
  }
  text << r.cases.size() << " abelian groups of order <= " << bound << ", " << failures << " mismatches\n";
  emit_verify(g, {{"check", thm == "cor1" ? thm : "thm" + thm}, {"max_order", bound}, {"cases", cases}, {"mismatches", failures}},
              text.str(), failures == 0);
  return failures == 0 ? 0 : 1;
}

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  const auto opts = g.analyze();
  if (a.thm == "cor1" || a.thm == "2" || a.thm == "3") return verify_abelian(g, a.thm == "cor1" ? "cor1" : a.thm);
  if (a.thm == "8") {
    const auto c = bv::verify_thm8(a.p, opts.search);
    std::ostringstream text;
    text << "C3 x (C" << c.p << ":C3), t = " << c.t << ": order " << c.order << ", " << c.class_count
         << " classes, " << c.count_order_p << " of order p, " << c.count_order_3p << " of order 3p, "
         << c.count_order_3 << " of order 3, sigma sizes";
    for (auto s : c.sigma_profile) text << " " << s;
    text << ", d = " << c.d << "\n";
    emit_verify(g,
                {{"check", "thm8"}, {"p", c.p}, {"t", c.t}, {"order", c.order}, {"classes", c.class_count},
                 {"order_p", c.count_order_p}, {"order_3p", c.count_order_3p}, {"order_3", c.count_order_3},
                 {"sigma_sizes", c.sigma_profile}, {"center_in_large_intersection", c.center_in_large_intersection},
                 {"d", c.d}},
                text.str(), c.pass);
    return c.pass ? 0 : 1;
  }
  if (a.thm == "1") {
    const auto r = bv::verify_direct_product(bv::parse_spec(bv::expand_presets(a.gspec)),
                                             bv::parse_spec(bv::expand_presets(a.hspec)), opts.build, opts.search);
    std::ostringstream text;
    text << "d(G) = " << r.d_g << " (order " << r.order_g << "), d(H) = " << r.d_h << " (order " << r.order_h
         << "), d(G x H) = " << r.d_product << ", mechanism " << (r.mechanism_holds ? "holds" : "fails") << "\n";
    emit_verify(g,
                {{"check", "thm1"}, {"order_g", r.order_g}, {"order_h", r.order_h}, {"d_g", r.d_g}, {"d_h", r.d_h},
                 {"d_product", r.d_product}, {"mechanism_holds", r.mechanism_holds}},
                text.str(), r.pass);
    return r.pass ? 0 : 1;
  }
  if (a.thm == "census") {
    const auto r = bv::verify_order3_census(a.k, opts.search);
    std::ostringstream text;
    text << "C(3^" << r.k << ") x C(3^" << r.k << "): " << r.order3_elements << " elements of order 3; per sigma set:";
    for (auto c : r.order3_per_carrier) text << " " << c;
    text << "\n";
    emit_verify(g,
                {{"check", "census"}, {"k", r.k}, {"order3_elements", r.order3_elements},
                 {"order3_per_sigma", r.order3_per_carrier}, {"sigma_sizes", r.carrier_sizes}},
                text.str(), r.pass);
    return r.pass ? 0 : 1;
  }
  if (a.thm == "family") {
    const auto fam = bv::parse_d4_family(a.family);
    if (!fam) throw bv::Error(bv::ErrorCode::InvalidArgument, "unknown family '" + a.family + "'");
    std::vector<bv::FamilyMember> members;
    if (a.params.empty())
      members = bv::d4_family_default_members(*fam);
    else
      members.push_back(bv::d4_family_member(*fam, bv::parse_range(a.params)));
    json rows = json::array();
    std::ostringstream text;
    bool pass = true;
    for (const auto& m : members) {
      const auto r = bv::verify_family_d4(m, opts.build, opts.search);
      pass = pass && r.pass;
      rows.push_back({{"params", m.params}, {"spec", m.spec}, {"order", r.order}, {"d", r.d}, {"pass", r.pass}});
      text << m.spec << ": order " << r.order << ", d = " << r.d << "\n";
    }
    emit_verify(g, {{"check", "family"}, {"family", a.family}, {"members", rows}}, text.str(), pass);
    return pass ? 0 : 1;
  }
  if (a.thm == "lemma2b") {
    if (a.spec.empty()) throw bv::Error(bv::ErrorCode::InvalidArgument, "lemma2b needs --spec");
    const auto group = bv::build(bv::parse_spec(bv::expand_presets(a.spec)), opts.build);
    const auto r = bv::verify_lemma2b(group, a.max_size, a.limit, opts.search);
    std::ostringstream text;
    text << "d = " << r.d << ";";
    json checked = json::array();
    for (auto [n, c] : r.checked) {
      text << " " << c << " structures of size " << n << ";";
      checked.push_back({{"size", n}, {"structures", c}});
    }
    text << " " << r.violations << " violations\n";
    emit_verify(g, {{"check", "lemma2b"}, {"d", r.d}, {"checked", checked}, {"violations", r.violations}},
                text.str(), r.pass());
    return r.pass() ? 0 : 1;
  }
  throw bv::Error(bv::ErrorCode::InvalidArgument, "unknown check '" + a.thm + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beauville dimension of finite groups"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
  g.max_order_option = app.add_option("--max-order", g.max_order, "Order cap (bound for abelian checks)");
  app.add_option("--max-cosets", g.max_cosets, "Coset table limit");
  app.add_flag("--timing", g.timing, "Include wall-clock timings");

  std::string spec;
  auto* analyze = app.add_subcommand("analyze", "Beauville dimension of one group");
  analyze->add_option("spec", spec, "Group spec; @NAME expands a preset")->required();

  bool all = false, minimal = false;
  std::size_t limit = 20;
  auto* structures = app.add_subcommand("structures", "List structures");
  structures->add_option("spec", spec, "Group spec")->required();
  auto* all_flag = structures->add_flag("--all", all, "Structures of every size");
  structures->add_flag("--minimal", minimal, "Structures realizing d (default)")->excludes(all_flag);
  structures->add_option("--limit", limit, "Maximum number of families");

  std::string suite = "paper-tables", file;
  auto* fixtures = app.add_subcommand("fixtures", "Run fixture rows");
  fixtures->add_option("--suite", suite, "Bundled suite");
  fixtures->add_option("--file", file, "Fixture file instead of a bundled suite");

  std::string family, range;
  bool no_div_3 = false;
  std::uint64_t bound = 1000;
  auto* scan = app.add_subcommand("scan", "Scan a family of groups");
  scan->add_option("--family", family, "Family name");
  scan->add_option("--range", range, "Parameters: a..b or a,b,c");
  scan->add_flag("--no-div-3", no_div_3, "Only orders prime to 3, flag d > 2");
  scan->add_option("--bound", bound, "Largest member order");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a theorem against brute force");
  verify->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  verify->add_option("--thm", va.thm, "1, 2, 3, 8, cor1, lemma2b, census or family")->required();
  verify->add_option("--p", va.p, "Prime for --thm 8");
  verify->add_option("--k", va.k, "Exponent for --thm census");
  verify->add_option("--g", va.gspec, "G for --thm 1");
  verify->add_option("--h", va.hspec, "H for --thm 1");
  verify->add_option("--spec", va.spec, "Group for --thm lemma2b");
  verify->add_option("--max-size", va.max_size, "Largest structure size for --thm lemma2b");
  verify->add_option("--limit", va.limit, "Structures per size for --thm lemma2b");
  verify->add_option("--family", va.family, "Family for --thm family");
  verify->add_option("--params", va.params, "Family parameters");

  for (auto* sub : {analyze, structures, fixtures, scan, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(g, spec);
    if (*structures) return cmd_structures(g, spec, all, limit);
    if (*fixtures) return cmd_fixtures(g, suite, file);
    if (*scan) return cmd_scan(g, family, range, no_div_3, bound);
    if (*verify) return cmd_verify(g, va);
  } catch (const bv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
