#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bv/beauville.hpp"
#include "bv/spec.hpp"

namespace bv {

/// Version field of every JSON document the CLI emits.
inline constexpr int kReportVersion = 1;

// Presets -------------------------------------------------------------------

struct Preset {
  std::string_view name;
  std::string_view spec;
};

/// Named permutation groups usable as "@NAME" inside specs.
std::span<const Preset> presets();
std::optional<std::string> preset_spec(std::string_view name);

/// Replaces every "@NAME" with "(spec)". Throws ParseError(SyntaxError) for
/// unknown names.
std::string expand_presets(std::string_view text);

// Element rendering -----------------------------------------------------------

/// Shortest words in the designated generators, found breadth-first up to a
/// length bound. Elements without such a word render as their index.
class WordRenderer {
 public:
  explicit WordRenderer(const GroupTable& g, std::size_t max_length = 12);

  /// Word text, or nullopt when no word within the bound was found.
  const std::optional<std::string>& word(Element e) const { return words_[e]; }
  nlohmann::json to_json(Element e) const;
  std::string to_text(Element e) const;

 private:
  std::vector<std::optional<std::string>> words_;
};

// Analysis -----------------------------------------------------------------

struct AnalyzeOptions {
  BuildOptions build;
  SearchOptions search;
  bool timing = false;
};

struct AnalysisReport {
  std::string spec;
  std::size_t order = 0;
  std::size_t classes = 0;
  std::size_t sigma_count = 0;
  std::vector<std::size_t> sigma_sizes;
  int d = 0;
  /// Witness triples (x, y, z); empty when d = 1.
  std::vector<std::array<nlohmann::json, 3>> witness;
  std::vector<std::pair<nlohmann::json, std::size_t>> certificate;
  std::optional<nlohmann::json> blocking_element;
  std::optional<double> timing_ms;

  nlohmann::json to_json() const;
  std::string to_text() const;
  static std::string csv_header();
  std::string to_csv() const;
};

/// Parses (after preset expansion), builds and analyzes a spec.
AnalysisReport analyze(std::string_view spec_text, const AnalyzeOptions& options = {});
AnalysisReport analyze_group(const GroupTable& g, std::string spec, const AnalyzeOptions& options);

// Structures ---------------------------------------------------------------

enum class StructureMode { Minimal, All };

struct StructureEntry {
  std::vector<std::array<nlohmann::json, 3>> pairs;
  std::vector<std::size_t> carrier_sizes;
  Classification classification = Classification::NotAStructure;
};

struct StructuresReport {
  std::string spec;
  std::size_t order = 0;
  int d = 0;
  std::vector<StructureEntry> families;
  std::optional<nlohmann::json> blocking_element;

  nlohmann::json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

/// Families of distinct carriers with trivial intersection. Minimal mode
/// lists families of size d; All mode lists every size from d upwards. At
/// most `limit` families in total, in canonical order.
StructuresReport list_structures(std::string_view spec_text, StructureMode mode, std::size_t limit,
                                 const AnalyzeOptions& options = {});

// Fixtures -----------------------------------------------------------------

struct FixtureRow {
  int expected_d = 0;
  std::string spec;
  std::string provenance;
  /// Parsed from a leading "(order, id)" in the provenance, if present.
  std::optional<std::size_t> expected_order;
};

/// Tab-separated rows "<d>\t<spec>\t<provenance>"; blank lines and lines
/// starting with '#' are skipped. Throws Error(InvalidArgument) on bad rows.
std::vector<FixtureRow> parse_fixtures(std::string_view text);

/// The bundled suite reproducing constructible table rows.
std::string_view bundled_fixture_text(std::string_view suite);
std::vector<std::string_view> bundled_suites();

struct FixtureResult {
  FixtureRow row;
  std::size_t order = 0;
  int d = 0;
  bool pass = false;
  std::string error;
};

struct FixturesReport {
  std::string suite;
  std::vector<FixtureResult> results;
  std::optional<double> timing_ms;

  std::size_t failures() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

FixturesReport run_fixtures(std::string suite, std::span<const FixtureRow> rows,
                            const AnalyzeOptions& options = {});

// Scans --------------------------------------------------------------------

struct ScanMember {
  std::string family;
  std::vector<std::uint64_t> params;
  std::string spec;
  std::uint64_t order = 0;
  /// Expected d when the family has a predictor.
  std::optional<int> expected_d;
};

std::vector<std::string_view> scan_families();

/// Members of a family whose first parameter lies in `params` (all members
/// when empty) and whose order is at most `max_order`. Throws
/// Error(InvalidArgument) for unknown families.
std::vector<ScanMember> scan_members(std::string_view family, std::span<const std::uint64_t> params,
                                     std::uint64_t max_order);

struct ScanResult {
  ScanMember member;
  std::optional<AnalysisReport> report;
  std::string error;
  /// d > 2 in no-div-3 mode, or disagreement with expected_d.
  bool flagged = false;
};

nlohmann::json scan_result_json(const ScanResult& r);
std::string scan_result_text(const ScanResult& r);

/// "a..b" or "a,b,c" into a sorted list of values.
std::vector<std::uint64_t> parse_range(std::string_view text);

}  // namespace bv
