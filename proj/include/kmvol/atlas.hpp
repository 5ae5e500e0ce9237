#pragma once

// Name parsing, per-algebra records, the batch atlas over every hyperbolic
// over-extension, serialization, and comparison against external tables.

#include "kmvol/closed_form.hpp"
#include "kmvol/lie_core.hpp"
#include "kmvol/volume.hpp"
#include "kmvol/weyl_geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmvol {

/// Accepts "A2++", "c3", "B4(2)++", "B4^(2)++" and the aliases "E10" (E8++)
/// and "AE3" (A1++), case-insensitively. Syntax only; ranges are checked
/// when the id is used.
AlgebraId parse_name(std::string_view text);

struct MethodSet {
  bool adaptive = true;
  bool series = false;
  bool montecarlo = false;
};

/// "adaptive", "series", "mc" or "all".
MethodSet parse_method_set(std::string_view text);

struct AtlasConfig {
  MethodSet methods;
  AdaptiveOptions adaptive{1e-12, 1e-6, 200000, 1};
  int series_max_order = 400;
  double series_tol = 1e-8;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 20240601;
  int max_rank = 10;      // over-extended rank filter for the atlas
  bool twisted = true;    // include twisted entries in the atlas
  int threads = 1;        // atlas entries processed concurrently
};

struct MethodResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t work = 0;
  bool converged = false;
  bool rigorous = false;
};

struct AtlasRecord {
  AlgebraId algebra;
  int rank_overextended = 0;
  RationalMatrix S;
  std::string verdict;
  std::vector<int> cusps;        // 0-based
  std::vector<Vertex> vertices;  // empty unless hyperbolic
  std::map<std::string, MethodResult> volumes;  // keyed by to_string(Method)
  std::optional<ClosedForm> closed_form;
  std::optional<double> closed_form_value;
  std::optional<AlgebraId> alias_of;
  std::vector<std::string> notes;
  std::optional<std::string> error;  // set when the entry failed outright
};

AtlasRecord run_single(const AlgebraId& id, const AtlasConfig& cfg);

/// Hyperbolic ids covered by the atlas, in (family, rank, twist) order.
std::vector<AlgebraId> atlas_ids(const AtlasConfig& cfg);

/// One record per atlas id. A failing entry produces a record carrying the
/// error message instead of aborting the batch.
std::vector<AtlasRecord> run_atlas(const AtlasConfig& cfg);

std::string to_json(const AtlasRecord& record);
std::string to_json(const std::vector<AtlasRecord>& records);
AtlasRecord record_from_json(std::string_view text);
std::vector<AtlasRecord> records_from_json(std::string_view text);

/// Columns: name, rank, verdict, volume_adaptive, error_adaptive, volume_mc,
/// sigma_mc, closed_form.
std::string to_csv(const std::vector<AtlasRecord>& records);

struct ReferenceRow {
  std::string name;
  double volume = 0.0;
  std::string source;
};

/// CSV with header "name,volume,source". Volumes must be positive.
struct ReferenceTable {
  std::vector<ReferenceRow> rows;

  static ReferenceTable parse(std::string_view text);
  static ReferenceTable load(const std::filesystem::path& path);
};

struct ComparisonRow {
  std::string name;
  double reference = 0.0;
  double computed = 0.0;
  double rel_deviation = 0.0;
  bool pass = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> unmatched;  // names with no parseable id or record
  int passed = 0;
  int failed = 0;

  bool ok() const { return failed == 0; }
};

/// Relative deviation of the adaptive volume (closed form when present)
/// from each reference row.
ComparisonReport compare_reference(const std::vector<AtlasRecord>& records,
                                   const ReferenceTable& table, double rel_tol);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact table, range, alias and isomorphism checks plus the special-function
/// identities and the low-rank closed forms.
std::vector<IdentityCheck> run_identity_suite();

}  // namespace kmvol
