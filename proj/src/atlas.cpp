#include "kmvol/atlas.hpp"

#include "kmvol/errors.hpp"
#include "kmvol/lobachevsky.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kmvol {

namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Over-extended rank of the largest algebra the atlas ever scans.
constexpr int kAtlasRankCap = 10;

}  // namespace

AlgebraId parse_name(std::string_view text) {
  const std::string s = upper(trim(text));
  const std::size_t offset = static_cast<std::size_t>(
      std::find_if_not(text.begin(), text.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); }) -
      text.begin());
  auto fail = [&](std::size_t pos, const std::string& what) -> Error {
    return Error(ErrorCode::ParseError, what + " in '" + std::string(text) + "'", offset + pos);
  };
  if (s.empty()) throw fail(0, "empty algebra name");

  if (s == "E10") return {Family::E, 8, Twist::untwisted, true};
  if (s == "AE3") return {Family::A, 1, Twist::untwisted, true};

  const char head = s[0];
  if (!std::isalpha(static_cast<unsigned char>(head))) throw fail(0, "expected a family letter");
  if (s.size() > 1 && std::isalpha(static_cast<unsigned char>(s[1])))
    throw Error(ErrorCode::UnknownAlias, "unknown algebra alias '" + std::string(trim(text)) + "'");
  if (head < 'A' || head > 'G') throw fail(0, "no family '" + std::string(1, head) + "'");

  AlgebraId id;
  id.family = static_cast<Family>(head - 'A');
  std::size_t pos = 1;
  const std::size_t digits = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits) throw fail(pos, "expected a rank");
  if (pos - digits > 3) throw fail(digits, "rank out of range");
  id.rank = std::stoi(s.substr(digits, pos - digits));

  std::string_view rest(s);
  rest.remove_prefix(pos);
  for (std::string_view marker : {"^(2)", "(2)"}) {
    if (starts_with(rest, marker)) {
      id.twist = Twist::twisted;
      rest.remove_prefix(marker.size());
      pos += marker.size();
      break;
    }
  }
  id.extended = false;
  if (starts_with(rest, "++")) {
    id.extended = true;
    rest.remove_prefix(2);
    pos += 2;
  }
  if (!rest.empty()) throw fail(pos, "unexpected trailing text");
  return id;
}

MethodSet parse_method_set(std::string_view text) {
  const std::string m = upper(trim(text));
  if (m == "ADAPTIVE") return {true, false, false};
  if (m == "SERIES") return {false, true, false};
  if (m == "MC" || m == "MONTECARLO") return {false, false, true};
  if (m == "ALL") return {true, true, true};
  throw Error(ErrorCode::ParseError, "unknown method '" + std::string(text) + "'");
}

namespace {

MethodResult to_result(const VolumeEstimate& e) {
  return {e.value, e.error_bound, e.work, e.converged, e.rigorous};
}

}  // namespace

AtlasRecord run_single(const AlgebraId& id, const AtlasConfig& cfg) {
  AtlasRecord rec;
  rec.algebra = id;
  rec.algebra.extended = true;
  rec.rank_overextended = id.rank + 2;

  const AlgebraDatum datum = catalog_entry(id);
  rec.alias_of = datum.alias_of;
  const ShapeMatrix s = shape_matrix(symmetrize_and_normalize(datum));
  rec.S = s.S;
  const HyperbolicityReport report = classify_hyperbolicity(s);
  rec.verdict = to_string(report.verdict);
  rec.cusps = report.cusp_indices;
  if (const auto cf = closed_form_volume(id)) {
    rec.closed_form = cf;
    rec.closed_form_value = evaluate_closed_form(*cf);
  }
  if (report.verdict == Verdict::not_hyperbolic) {
    rec.notes.push_back("the integral diverges");
    return rec;
  }
  rec.vertices = embed_domain(s, report).vertices;

  const MethodSet& m = cfg.methods;
  const bool several = (m.adaptive + m.series + m.montecarlo) > 1;
  if (m.adaptive) rec.volumes[to_string(Method::adaptive)] = to_result(volume_adaptive(s, cfg.adaptive));
  if (m.series) {
    try {
      rec.volumes[to_string(Method::series)] =
          to_result(volume_series(s, cfg.series_max_order, cfg.series_tol));
    } catch (const Error& e) {
      // Alongside other methods an unavailable series is a note, not a failure.
      if (!several) throw;
      rec.notes.push_back(std::string("series: ") + e.what());
    }
  }
  if (m.montecarlo)
    rec.volumes[to_string(Method::montecarlo)] =
        to_result(volume_montecarlo(s, cfg.samples, cfg.seed, cfg.adaptive.threads));
  return rec;
}

std::vector<AlgebraId> atlas_ids(const AtlasConfig& cfg) {
  const int top = std::min(cfg.max_rank, kAtlasRankCap) - 2;
  std::vector<AlgebraId> ids;
  for (int f = 0; f <= static_cast<int>(Family::G); ++f)
    for (int r = 1; r <= top; ++r)
      for (Twist t : {Twist::untwisted, Twist::twisted}) {
        if (t == Twist::twisted && !cfg.twisted) continue;
        const AlgebraId id{static_cast<Family>(f), r, t, true};
        try {
          validate(id);
        } catch (const Error&) {
          continue;
        }
        if (classify_hyperbolicity(shape_of(id)).verdict != Verdict::not_hyperbolic)
          ids.push_back(id);
      }
  return ids;
}

std::vector<AtlasRecord> run_atlas(const AtlasConfig& cfg) {
  const auto ids = atlas_ids(cfg);
  std::vector<AtlasRecord> records(ids.size());
  detail::parallel_for(ids.size(), cfg.threads, [&](std::size_t i, std::size_t) {
    try {
      records[i] = run_single(ids[i], cfg);
    } catch (const std::exception& e) {
      AtlasRecord rec;
      rec.algebra = ids[i];
      rec.rank_overextended = ids[i].rank + 2;
      rec.error = e.what();
      records[i] = std::move(rec);
    }
  });
  return records;
}

ReferenceTable ReferenceTable::parse(std::string_view text) {
  ReferenceTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (!header) {
      if (upper(row) != "NAME,VOLUME,SOURCE")
        throw Error(ErrorCode::ParseError, "reference table needs the header name,volume,source");
      header = true;
      continue;
    }
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields");
    ReferenceRow r;
    r.name = std::string(trim(row.substr(0, c1)));
    const std::string vol(trim(row.substr(c1 + 1, c2 - c1 - 1)));
    char* end = nullptr;
    r.volume = std::strtod(vol.c_str(), &end);
    if (vol.empty() || end != vol.c_str() + vol.size() || !(r.volume > 0.0) || !std::isfinite(r.volume))
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": volume must be a positive number");
    r.source = std::string(trim(row.substr(c2 + 1)));
    table.rows.push_back(std::move(r));
  }
  return table;
}

ReferenceTable ReferenceTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

ComparisonReport compare_reference(const std::vector<AtlasRecord>& records,
                                   const ReferenceTable& table, double rel_tol) {
  ComparisonReport report;
  for (const auto& row : table.rows) {
    std::optional<double> computed;
    try {
      const AlgebraId id = parse_name(row.name);
      for (const auto& rec : records) {
        if (!(rec.algebra == id) || rec.error) continue;
        if (rec.closed_form_value) computed = rec.closed_form_value;
        else if (auto it = rec.volumes.find(to_string(Method::adaptive)); it != rec.volumes.end())
          computed = it->second.value;
        break;
      }
    } catch (const Error&) {
    }
    if (!computed) {
      report.unmatched.push_back(row.name);
      continue;
    }
    ComparisonRow out;
    out.name = row.name;
    out.reference = row.volume;
    out.computed = *computed;
    out.rel_deviation = std::abs(*computed - row.volume) / row.volume;
    out.pass = out.rel_deviation <= rel_tol;
    ++(out.pass ? report.passed : report.failed);
    report.rows.push_back(std::move(out));
  }
  return report;
}

}  // namespace kmvol
