#include "kmvol/atlas.hpp"

#include "kmvol/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace kmvol {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinity; an unbounded error estimate is written as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

ClosedFormTag tag_from(const std::string& s) {
  for (auto t : {ClosedFormTag::pi_over_6, ClosedFormTag::quarter_lob_pi3,
                 ClosedFormTag::eighth_lob_pi3, ClosedFormTag::sixth_lob_pi4})
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::ParseError, "unknown closed-form tag '" + s + "'");
}

json record_json(const AtlasRecord& r) {
  json j;
  j["algebra"] = name(r.algebra);
  j["family"] = std::string(1, to_char(r.algebra.family));
  j["rank"] = r.algebra.rank;
  j["twist"] = r.algebra.twist == Twist::twisted ? "twisted" : "untwisted";
  j["rank_overextended"] = r.rank_overextended;
  j["alias_of"] = r.alias_of ? json(name(*r.alias_of)) : json(nullptr);
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.S.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.S.cols(); ++k) row.push_back(to_string(r.S(i, k)));
    rows.push_back(std::move(row));
  }
  j["S"] = std::move(rows);
  j["verdict"] = r.verdict;
  j["cusps"] = r.cusps;
  json verts = json::array();
  for (const auto& v : r.vertices) {
    json u = json::array();
    for (Eigen::Index k = 0; k < v.u.size(); ++k) u.push_back(v.u(k));
    verts.push_back(json{{"v", v.v}, {"u", std::move(u)}});
  }
  j["vertices"] = std::move(verts);
  json vols = json::object();
  for (const auto& [method, m] : r.volumes)
    vols[method] = json{{"value", number(m.value)},
                        {"error_bound", number(m.error_bound)},
                        {"work", m.work},
                        {"converged", m.converged},
                        {"rigorous", m.rigorous}};
  j["volumes"] = std::move(vols);
  if (r.closed_form)
    j["closed_form"] = json{{"tag", to_string(r.closed_form->tag)},
                            {"value", number(r.closed_form_value.value_or(0.0))}};
  else
    j["closed_form"] = nullptr;
  j["notes"] = r.notes;
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

AtlasRecord record_from(const json& j) {
  AtlasRecord r;
  r.algebra = parse_name(j.at("algebra").get<std::string>());
  r.rank_overextended = j.at("rank_overextended").get<int>();
  if (!j.at("alias_of").is_null()) r.alias_of = parse_name(j.at("alias_of").get<std::string>());
  const json& rows = j.at("S");
  const auto n = static_cast<Eigen::Index>(rows.size());
  r.S.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "S is not square");
    for (Eigen::Index k = 0; k < n; ++k)
      r.S(i, k) = parse_rational(row.at(static_cast<std::size_t>(k)).get<std::string>());
  }
  r.verdict = j.at("verdict").get<std::string>();
  r.cusps = j.at("cusps").get<std::vector<int>>();
  for (const json& v : j.at("vertices")) {
    Vertex vx;
    vx.v = v.at("v").get<double>();
    const auto u = v.at("u").get<std::vector<double>>();
    vx.u = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    r.vertices.push_back(std::move(vx));
  }
  for (const auto& [method, m] : j.at("volumes").items())
    r.volumes[method] = MethodResult{number_from(m.at("value")), number_from(m.at("error_bound")),
                                     m.at("work").get<std::int64_t>(),
                                     m.at("converged").get<bool>(), m.at("rigorous").get<bool>()};
  if (const json& cf = j.at("closed_form"); !cf.is_null()) {
    r.closed_form = ClosedForm{tag_from(cf.at("tag").get<std::string>()), r.algebra};
    r.closed_form_value = number_from(cf.at("value"));
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  return r;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string csv_number(std::optional<double> x) {
  if (!x) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  return buf;
}

}  // namespace

std::string to_json(const AtlasRecord& record) { return record_json(record).dump(2) + "\n"; }

std::string to_json(const std::vector<AtlasRecord>& records) {
  json all = json::array();
  for (const auto& r : records) all.push_back(record_json(r));
  return all.dump(2) + "\n";
}

AtlasRecord record_from_json(std::string_view text) {
  try {
    return record_from(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<AtlasRecord> records_from_json(std::string_view text) {
  try {
    std::vector<AtlasRecord> out;
    for (const json& j : parse_json(text)) out.push_back(record_from(j));
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string to_csv(const std::vector<AtlasRecord>& records) {
  std::string out = "name,rank,verdict,volume_adaptive,error_adaptive,volume_mc,sigma_mc,closed_form\n";
  for (const auto& r : records) {
    auto field = [&](const std::string& method, bool error) -> std::optional<double> {
      const auto it = r.volumes.find(method);
      if (it == r.volumes.end()) return std::nullopt;
      return error ? it->second.error_bound : it->second.value;
    };
    const std::string adaptive = to_string(Method::adaptive);
    const std::string mc = to_string(Method::montecarlo);
    out += name(r.algebra) + "," + std::to_string(r.rank_overextended) + "," +
           (r.error ? "error" : r.verdict) + "," + csv_number(field(adaptive, false)) + "," +
           csv_number(field(adaptive, true)) + "," + csv_number(field(mc, false)) + "," +
           csv_number(field(mc, true)) + "," + csv_number(r.closed_form_value) + "\n";
  }
  return out;
}

}  // namespace kmvol
