#include "bv/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <memory>
#include <sstream>

#include "bv/error.hpp"
#include "bv/fixture_data.hpp"
#include "bv/verifiers.hpp"
#include "bv/word.hpp"

namespace bv {

using nlohmann::json;

namespace {

constexpr Preset kPresets[] = {
    {"A4", "perm(4; (1 2 3), (2 3 4))"},
    {"A5", "perm(5; (1 2 3 4 5), (1 2 3))"},
    {"A6", "perm(6; (1 2 3 4 5), (4 5 6))"},
    {"D8", "perm(4; (1 2 3 4), (1 3))"},
    {"PSL3(2)", "perm(7; (1 2 3 4 5 6 7), (1 2)(3 6))"},
    {"Q8", "perm(8; (1 2 5 6)(3 8 7 4), (1 3 5 7)(2 4 6 8))"},
    {"S3", "perm(3; (1 2 3), (1 2))"},
    {"S4", "perm(4; (1 2 3 4), (1 2))"},
    {"S5", "perm(5; (1 2 3 4 5), (1 2))"},
    {"SL2(3)", "perm(8; (1 4 7)(2 8 5), (3 4 5)(6 8 7))"},
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_text(const json& j) { return j.is_string() ? j.get<std::string>() : "#" + j.dump(); }

json triple_json(const std::array<json, 3>& t) { return json{{"x", t[0]}, {"y", t[1]}, {"z", t[2]}}; }

std::string triple_text(const std::array<json, 3>& t) {
  return "x=" + json_text(t[0]) + " y=" + json_text(t[1]) + " z=" + json_text(t[2]);
}

std::array<json, 3> render_pair(const WordRenderer& w, const GeneratingPair& p) {
  return {w.to_json(p.x), w.to_json(p.y), w.to_json(p.z)};
}

struct Analysis {
  GroupTable group;
  std::unique_ptr<SigmaEngine> engine;
  SigmaCatalog catalog;
  DimensionResult dimension;
};

Analysis run_analysis(GroupTable g, const SearchOptions& options) {
  if (g.order() == 1)
    throw Error(ErrorCode::DegenerateTrivialGroup, "the trivial group has no Beauville dimension");
  Analysis a{std::move(g), nullptr, {}, {}};
  a.engine = std::make_unique<SigmaEngine>(a.group);
  a.catalog = build_sigma_catalog(*a.engine, options);
  a.dimension = beauville_dimension(a.catalog, options);
  return a;
}

GroupTable build_text(std::string_view text, const BuildOptions& options) {
  return build(parse_spec(expand_presets(text)), options);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

// Presets ---------------------------------------------------------------------

std::span<const Preset> presets() { return kPresets; }

std::optional<std::string> preset_spec(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return std::string(p.spec);
  return std::nullopt;
}

std::string expand_presets(std::string_view text) {
  std::string out;
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] != '@') {
      if (text[i] == '\n') {
        ++line;
        column = 0;
      }
      out += text[i++];
      ++column;
      continue;
    }
    const Preset* best = nullptr;
    for (const auto& p : kPresets)
      if (text.substr(i + 1, p.name.size()) == p.name && (!best || p.name.size() > best->name.size()))
        best = &p;
    if (best == nullptr) {
      std::size_t end = i + 1;
      while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) ++end;
      throw ParseError(ErrorCode::SyntaxError, "unknown preset", line, column,
                       std::string(text.substr(i, end - i)));
    }
    out += "(" + std::string(best->spec) + ")";
    i += 1 + best->name.size();
    column += 1 + best->name.size();
  }
  return out;
}

// Element rendering -----------------------------------------------------------

WordRenderer::WordRenderer(const GroupTable& g, std::size_t max_length) : words_(g.order()) {
  struct Step {
    Element parent;
    std::size_t generator;
    std::int64_t exponent;
    std::size_t depth;
  };
  std::vector<std::optional<Step>> via(g.order());
  std::vector<Element> queue{GroupTable::identity};
  via[GroupTable::identity] = Step{0, 0, 0, 0};
  const auto& gens = g.generators();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element c = queue[head];
    if (via[c]->depth == max_length) continue;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::int64_t e : {1, -1}) {
        const Element d = g.mul(c, e == 1 ? gens[i] : g.inv(gens[i]));
        if (via[d]) continue;
        via[d] = Step{c, i, e, via[c]->depth + 1};
        queue.push_back(d);
      }
  }
  for (Element e : queue) {
    std::vector<Letter> letters;
    for (Element c = e; c != GroupTable::identity; c = via[c]->parent)
      letters.push_back({g.generator_names()[via[c]->generator], via[c]->exponent});
    std::reverse(letters.begin(), letters.end());
    words_[e] = render_word(Word(std::move(letters)));
  }
}

json WordRenderer::to_json(Element e) const {
  if (words_[e]) return *words_[e];
  return e;
}

std::string WordRenderer::to_text(Element e) const { return json_text(to_json(e)); }

// Analysis ----------------------------------------------------------------------

json AnalysisReport::to_json() const {
  json witness_json = nullptr;
  if (!witness.empty()) {
    witness_json = json::array();
    for (const auto& t : witness) witness_json.push_back(triple_json(t));
  }
  json cert = json::array();
  for (const auto& [e, i] : certificate) cert.push_back({{"element", e}, {"excluded_by", i}});
  return json{
      {"version", kReportVersion},
      {"spec", spec},
      {"group", {{"order", order}, {"classes", classes}, {"sigma_count", sigma_count},
                 {"sigma_sizes", sigma_sizes}}},
      {"dimension",
       {{"d", d},
        {"witness", witness_json},
        {"certificate", cert},
        {"blocking_element", blocking_element ? *blocking_element : json(nullptr)}}},
      {"timing_ms", timing_ms ? json(*timing_ms) : json(nullptr)},
  };
}

std::string AnalysisReport::to_text() const {
  std::ostringstream out;
  out << "spec: " << spec << "\n"
      << "order: " << order << "\n"
      << "conjugacy classes: " << classes << "\n"
      << "distinct sigma sets: " << sigma_count << " (sizes";
  for (auto s : sigma_sizes) out << " " << s;
  out << ")\n"
      << "d: " << d << "\n";
  if (blocking_element) out << "blocking element: " << json_text(*blocking_element) << "\n";
  for (std::size_t i = 0; i < witness.size(); ++i)
    out << "witness " << i << ": " << triple_text(witness[i]) << "\n";
  if (!witness.empty()) out << "certificate: " << certificate.size() << " elements excluded\n";
  if (timing_ms) out << "time: " << *timing_ms << " ms\n";
  return out.str();
}

std::string AnalysisReport::csv_header() {
  return "spec,order,classes,sigma_count,d,blocking_element,witness";
}

std::string AnalysisReport::to_csv() const {
  std::string w;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) w += "|";
    w += json_text(witness[i][0]) + ";" + json_text(witness[i][1]) + ";" + json_text(witness[i][2]);
  }
  return csv_quote(spec) + "," + std::to_string(order) + "," + std::to_string(classes) + "," +
         std::to_string(sigma_count) + "," + std::to_string(d) + "," +
         csv_quote(blocking_element ? json_text(*blocking_element) : "") + "," + csv_quote(w);
}

AnalysisReport analyze_group(const GroupTable& g, std::string spec, const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Analysis a = run_analysis(g, options.search);
  const WordRenderer words(a.group);
  AnalysisReport r;
  r.spec = std::move(spec);
  r.order = a.group.order();
  r.classes = a.engine->classes().count();
  r.sigma_count = a.catalog.records.size();
  for (const auto& rec : a.catalog.records) r.sigma_sizes.push_back(rec.carrier.size());
  r.d = a.dimension.d;
  if (a.dimension.blocking_element) r.blocking_element = words.to_json(*a.dimension.blocking_element);
  if (a.dimension.witness)
    for (const auto& p : a.dimension.witness->pairs) r.witness.push_back(render_pair(words, p));
  for (const auto& c : a.dimension.certificate)
    r.certificate.emplace_back(words.to_json(c.element), c.excluded_by);
  if (options.timing) r.timing_ms = elapsed_ms(start);
  return r;
}

AnalysisReport analyze(std::string_view spec_text, const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r = analyze_group(build_text(spec_text, options.build), std::string(spec_text), options);
  if (options.timing) r.timing_ms = elapsed_ms(start);
  return r;
}

// Structures ----------------------------------------------------------------------

json StructuresReport::to_json() const {
  json fams = json::array();
  for (const auto& f : families) {
    json pairs = json::array();
    for (const auto& t : f.pairs) pairs.push_back(triple_json(t));
    fams.push_back({{"pairs", pairs},
                    {"sigma_sizes", f.carrier_sizes},
                    {"classification", std::string(to_string(f.classification))}});
  }
  return json{{"version", kReportVersion},
              {"spec", spec},
              {"order", order},
              {"d", d},
              {"families", fams},
              {"blocking_element", blocking_element ? *blocking_element : json(nullptr)}};
}

std::string StructuresReport::to_text() const {
  std::ostringstream out;
  out << "spec: " << spec << "\norder: " << order << "\nd: " << d << "\n";
  if (blocking_element)
    out << "no structures; " << json_text(*blocking_element) << " lies in every sigma set\n";
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    out << "family " << i << " (" << f.pairs.size() << " pairs, " << to_string(f.classification)
        << ")\n";
    for (std::size_t j = 0; j < f.pairs.size(); ++j)
      out << "  " << triple_text(f.pairs[j]) << "  |sigma| = " << f.carrier_sizes[j] << "\n";
  }
  return out.str();
}

std::string StructuresReport::to_csv() const {
  std::string out = "family,size,classification,pairs\n";
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    std::string pairs;
    for (std::size_t j = 0; j < f.pairs.size(); ++j) {
      if (j > 0) pairs += "|";
      pairs += json_text(f.pairs[j][0]) + ";" + json_text(f.pairs[j][1]);
    }
    out += std::to_string(i) + "," + std::to_string(f.pairs.size()) + "," +
           std::string(to_string(f.classification)) + "," + csv_quote(pairs) + "\n";
  }
  return out;
}

StructuresReport list_structures(std::string_view spec_text, StructureMode mode, std::size_t limit,
                                 const AnalyzeOptions& options) {
  const Analysis a = run_analysis(build_text(spec_text, options.build), options.search);
  const WordRenderer words(a.group);
  StructuresReport r;
  r.spec = std::string(spec_text);
  r.order = a.group.order();
  r.d = a.dimension.d;
  if (a.dimension.blocking_element) {
    r.blocking_element = words.to_json(*a.dimension.blocking_element);
    return r;
  }
  const std::size_t m = a.catalog.records.size();
  const std::size_t last = mode == StructureMode::Minimal ? static_cast<std::size_t>(r.d) : m;
  for (std::size_t n = static_cast<std::size_t>(r.d); n <= last && r.families.size() < limit; ++n) {
    for (const auto& fam : enumerate_trivial_families(a.catalog, n, limit - r.families.size())) {
      StructureEntry e;
      std::vector<GeneratingPair> pairs;
      for (std::size_t i : fam) {
        pairs.push_back(a.catalog.records[i].canonical_pair);
        e.pairs.push_back(render_pair(words, pairs.back()));
        e.carrier_sizes.push_back(a.catalog.records[i].carrier.size());
      }
      e.classification = check_structure(a.catalog, pairs, options.search).classification;
      r.families.push_back(std::move(e));
    }
  }
  return r;
}

// Fixtures -----------------------------------------------------------------

std::vector<FixtureRow> parse_fixtures(std::string_view text) {
  std::vector<FixtureRow> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "fixture line " + std::to_string(line_no) + ": expected 3 columns");
    FixtureRow row;
    const std::string d = line.substr(0, t1);
    auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), row.expected_d);
    if (ec != std::errc() || ptr != d.data() + d.size())
      throw Error(ErrorCode::InvalidArgument, "fixture line " + std::to_string(line_no) + ": bad d");
    row.spec = line.substr(t1 + 1, t2 - t1 - 1);
    row.provenance = line.substr(t2 + 1);
    if (!row.provenance.empty() && row.provenance[0] == '(') {
      std::size_t order = 0;
      auto [p2, ec2] = std::from_chars(row.provenance.data() + 1,
                                       row.provenance.data() + row.provenance.size(), order);
      if (ec2 == std::errc() && p2 != row.provenance.data() + 1) row.expected_order = order;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string_view> bundled_suites() { return {"paper-tables"}; }

std::string_view bundled_fixture_text(std::string_view suite) {
  if (suite == "paper-tables") return kPaperTablesTsv;
  throw Error(ErrorCode::InvalidArgument, "unknown fixture suite '" + std::string(suite) + "'");
}

std::size_t FixturesReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; }));
}

json FixturesReport::to_json() const {
  json rows = json::array();
  for (const auto& r : results) {
    json row{{"spec", r.row.spec},
             {"provenance", r.row.provenance},
             {"expected_d", r.row.expected_d},
             {"expected_order", r.row.expected_order ? json(*r.row.expected_order) : json(nullptr)},
             {"order", r.order},
             {"d", r.d},
             {"pass", r.pass}};
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return json{{"version", kReportVersion},
              {"suite", suite},
              {"rows", rows},
              {"failures", failures()},
              {"timing_ms", timing_ms ? json(*timing_ms) : json(nullptr)}};
}

std::string FixturesReport::to_text() const {
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.row.provenance << ": expected d=" << r.row.expected_d;
    if (r.error.empty())
      out << ", got d=" << r.d << " at order " << r.order;
    else
      out << ", error " << r.error;
    out << "\n";
  }
  out << results.size() - failures() << "/" << results.size() << " rows passed\n";
  if (timing_ms) out << "time: " << *timing_ms << " ms\n";
  return out.str();
}

std::string FixturesReport::to_csv() const {
  std::string out = "provenance,spec,expected_order,expected_d,order,d,pass,error\n";
  for (const auto& r : results)
    out += csv_quote(r.row.provenance) + "," + csv_quote(r.row.spec) + "," +
           (r.row.expected_order ? std::to_string(*r.row.expected_order) : "") + "," +
           std::to_string(r.row.expected_d) + "," + std::to_string(r.order) + "," +
           std::to_string(r.d) + "," + (r.pass ? "true" : "false") + "," + csv_quote(r.error) + "\n";
  return out;
}

FixturesReport run_fixtures(std::string suite, std::span<const FixtureRow> rows,
                            const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  FixturesReport report;
  report.suite = std::move(suite);
  for (const auto& row : rows) {
    FixtureResult res;
    res.row = row;
    try {
      const Analysis a = run_analysis(build_text(row.spec, options.build), options.search);
      res.order = a.group.order();
      res.d = a.dimension.d;
      res.pass = res.d == row.expected_d && (!row.expected_order || *row.expected_order == res.order);
    } catch (const std::exception& e) {
      res.error = e.what();
    }
    report.results.push_back(std::move(res));
  }
  if (options.timing) report.timing_ms = elapsed_ms(start);
  return report;
}

// Scans --------------------------------------------------------------------

std::vector<std::string_view> scan_families() {
  return {"cnxcn",          "dihedral",         "heisenberg",       "thm8",
          "cq-cp-cq",       "a4-cp3",           "c3k-squared-c3",   "c3-cn-squared-c3",
          "c9-cn-squared-c9", "cp3-cq3",        "c3-cp22-c3",       "c3-c70-c3"};
}

std::vector<ScanMember> scan_members(std::string_view family, std::span<const std::uint64_t> params,
                                     std::uint64_t max_order) {
  const auto wanted = [&](std::uint64_t v) {
    return params.empty() || std::find(params.begin(), params.end(), v) != params.end();
  };
  const std::string fam(family);
  std::vector<ScanMember> out;
  const auto add = [&](std::vector<std::uint64_t> ps, std::string spec, std::uint64_t order,
                       std::optional<int> expected) {
    if (order <= max_order && wanted(ps.front()))
      out.push_back({fam, std::move(ps), std::move(spec), order, expected});
  };
  // Parameter ranges: enough to reach max_order, never more.
  if (family == "cnxcn") {
    for (std::uint64_t n = 2; n * n <= max_order; ++n)
      add({n}, AbelianSignature{{n, n}}.spec(), n * n, predict_abelian_d({{n, n}}));
  } else if (family == "dihedral") {
    for (std::uint64_t n = 3; 2 * n <= max_order; ++n)
      add({n}, "sd(C(" + std::to_string(n) + "), C(2), [-1])", 2 * n, std::nullopt);
  } else if (family == "heisenberg") {
    for (std::uint64_t p = 2; p * p * p <= max_order; ++p)
      if (is_prime(p)) {
        const std::string c = "C(" + std::to_string(p) + ")";
        add({p}, "sd(" + c + " x " + c + ", " + c + ", [a -> a*b])", p * p * p, std::nullopt);
      }
  } else if (family == "thm8") {
    for (std::uint64_t p = 7; 9 * p <= max_order; ++p)
      if (is_prime(p) && p % 3 == 1) add({p}, thm8_spec(p), 9 * p, 4);
  } else if (family == "cq-cp-cq") {
    // Cq x (Cp:Cq) for odd primes q >= 5 dividing p - 1.
    for (std::uint64_t p = 11; 25 * p <= max_order; ++p) {
      if (!is_prime(p)) continue;
      for (std::uint64_t q = 5; q * q * p <= max_order; ++q) {
        if (!is_prime(q) || (p - 1) % q != 0) continue;
        std::uint64_t t = 2;
        while (true) {
          std::uint64_t x = 1;
          for (std::uint64_t i = 0; i < q; ++i) x = x * t % p;
          if (x == 1 && t != 1) break;
          ++t;
        }
        const std::string cq = "C(" + std::to_string(q) + ")";
        add({p, q},
            cq + " x sd(C(" + std::to_string(p) + "), " + cq + ", [" + std::to_string(t) + "])",
            q * q * p, std::nullopt);
      }
    }
  } else if (family == "c3-c70-c3") {
    for (std::uint64_t t = 2; t < 70; ++t)
      if (t * t % 70 * t % 70 == 1)
        add({t}, "C(3) x sd(C(70), C(3), [" + std::to_string(t) + "])", 630, std::nullopt);
  } else if (auto f = parse_d4_family(family)) {
    // Members beyond the default ranges are requested explicitly.
    std::vector<std::vector<std::uint64_t>> candidates;
    if (params.empty()) {
      for (const auto& m : d4_family_default_members(*f)) candidates.push_back(m.params);
    } else if (*f == D4Family::CpC3xCqC3) {
      for (auto p : params)
        for (auto q : params)
          if (p <= q) candidates.push_back({p, q});
    } else {
      for (auto p : params) candidates.push_back({p});
    }
    for (auto& ps : candidates) {
      FamilyMember m;
      try {
        m = d4_family_member(*f, ps);
      } catch (const Error&) {
        continue;  // parameter outside the family
      }
      std::uint64_t order = 0;
      switch (*f) {
        case D4Family::A4xCpC3: order = 36 * ps[0]; break;
        case D4Family::CmSquaredC3: order = 27 * ps[0] * ps[0]; break;
        case D4Family::C3xCnSquaredC3: order = 9 * ps[0] * ps[0]; break;
        case D4Family::C9xCnSquaredC9: order = 81 * ps[0] * ps[0]; break;
        case D4Family::CpC3xCqC3: order = 9 * ps[0] * ps[1]; break;
        case D4Family::C3xCp22C3: order = 36 * ps[0]; break;
      }
      if (order <= max_order) out.push_back({fam, ps, m.spec, order, 4});
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + fam + "'");
  }
  return out;
}

json scan_result_json(const ScanResult& r) {
  json j{{"family", r.member.family},
         {"params", r.member.params},
         {"spec", r.member.spec},
         {"order", r.member.order},
         {"expected_d", r.member.expected_d ? json(*r.member.expected_d) : json(nullptr)},
         {"flagged", r.flagged}};
  j["report"] = r.report ? r.report->to_json() : json(nullptr);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string scan_result_text(const ScanResult& r) {
  std::string params;
  for (auto p : r.member.params) params += (params.empty() ? "" : ",") + std::to_string(p);
  std::string s = r.member.family + "[" + params + "] order " + std::to_string(r.member.order) + ": ";
  if (r.report)
    s += "d=" + std::to_string(r.report->d);
  else
    s += "error " + r.error;
  if (r.member.expected_d) s += " (expected " + std::to_string(*r.member.expected_d) + ")";
  if (r.flagged) s += " FLAGGED";
  return s;
}

std::vector<std::uint64_t> parse_range(std::string_view text) {
  const auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw Error(ErrorCode::InvalidArgument, "bad range value '" + std::string(s) + "'");
    return v;
  };
  std::vector<std::uint64_t> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (hi < lo || hi - lo > 1000000) throw Error(ErrorCode::InvalidArgument, "bad range");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = std::min(text.find(',', start), text.size());
      out.push_back(number(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bv
