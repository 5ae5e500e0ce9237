#include "kmvol/atlas.hpp"
#include "kmvol/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kmvol;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::InvalidArgument, "unreachable");
}

AtlasConfig quick_config() {
  AtlasConfig cfg;
  cfg.adaptive.tol = 1e-9;
  cfg.adaptive.rel_tol = 1e-5;
  return cfg;
}

}  // namespace

TEST_SUITE("atlas") {
  TEST_CASE("algebra names") {
    CHECK(parse_name("E8++") == AlgebraId{Family::E, 8});
    CHECK(parse_name("  e10 ") == AlgebraId{Family::E, 8});
    CHECK(parse_name("AE3") == AlgebraId{Family::A, 1});
    CHECK(parse_name("B4(2)++") == AlgebraId{Family::B, 4, Twist::twisted});
    CHECK(parse_name("c3^(2)++") == AlgebraId{Family::C, 3, Twist::twisted});
    CHECK(parse_name("G2") == AlgebraId{Family::G, 2, Twist::untwisted, false});

    const Error digit = error_of([] { parse_name("8E"); });
    CHECK(digit.code() == ErrorCode::ParseError);
    CHECK(digit.position() == 0u);
    const Error letter = error_of([] { parse_name("H9++"); });
    CHECK(letter.code() == ErrorCode::ParseError);
    CHECK(letter.position() == 0u);
    const Error rank = error_of([] { parse_name(" E++"); });
    CHECK(rank.code() == ErrorCode::ParseError);
    CHECK(rank.position() == 2u);
    const Error trailing = error_of([] { parse_name("E8+"); });
    CHECK(trailing.position() == 2u);
    CHECK(error_of([] { parse_name("XY7"); }).code() == ErrorCode::UnknownAlias);
    CHECK(error_of([] { parse_name(""); }).code() == ErrorCode::ParseError);
  }

  TEST_CASE("method sets") {
    CHECK(parse_method_set("adaptive").adaptive);
    CHECK(parse_method_set("MC").montecarlo);
    CHECK_FALSE(parse_method_set("series").adaptive);
    const MethodSet all = parse_method_set("all");
    CHECK((all.adaptive && all.series && all.montecarlo));
    CHECK(error_of([] { parse_method_set("simpson"); }).code() == ErrorCode::ParseError);
  }

  TEST_CASE("single records") {
    const AtlasRecord a1 = run_single({Family::A, 1}, quick_config());
    CHECK(a1.rank_overextended == 3);
    CHECK(a1.verdict == "strictly_hyperbolic");
    REQUIRE(a1.closed_form_value.has_value());
    CHECK(std::abs(*a1.closed_form_value - std::numbers::pi / 6) < 1e-15);
    CHECK(std::abs(a1.volumes.at("adaptive").value - std::numbers::pi / 6) < 1e-8);

    const AtlasRecord a8 = run_single({Family::A, 8}, quick_config());
    CHECK(a8.verdict == "not_hyperbolic");
    CHECK(a8.volumes.empty());
    CHECK(a8.vertices.empty());
    CHECK(a8.notes == std::vector<std::string>{"the integral diverges"});

    const AtlasRecord e8 = run_single({Family::E, 8}, quick_config());
    CHECK(e8.rank_overextended == 10);
    CHECK(e8.vertices.size() == 8);
    CHECK(e8.cusps.empty());
    CHECK(e8.volumes.at("adaptive").converged);

    const AtlasRecord twisted = run_single({Family::C, 4, Twist::twisted}, quick_config());
    REQUIRE(twisted.alias_of.has_value());
    CHECK(*twisted.alias_of == AlgebraId{Family::B, 4});
  }

  TEST_CASE("atlas membership") {
    AtlasConfig cfg;
    CHECK(atlas_ids(cfg).size() == 37);
    cfg.twisted = false;
    CHECK(atlas_ids(cfg).size() == 26);
    cfg.twisted = true;
    cfg.max_rank = 4;
    const auto small = atlas_ids(cfg);
    CHECK(small.size() == 6);
    for (const auto& id : small) CHECK(id.rank <= 2);
    cfg.max_rank = 40;
    CHECK(atlas_ids(cfg).size() == 37);
  }

  TEST_CASE("JSON round trip is exact") {
    AtlasConfig cfg = quick_config();
    cfg.methods = parse_method_set("all");
    cfg.samples = 20000;
    cfg.max_rank = 5;
    const auto records = run_atlas(cfg);
    const std::string text = to_json(records);
    const auto back = records_from_json(text);
    REQUIRE(back.size() == records.size());
    CHECK(to_json(back) == text);
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(back[i].S == records[i].S);
      for (const auto& [method, m] : records[i].volumes) {
        CHECK(back[i].volumes.at(method).value == m.value);
        CHECK(back[i].volumes.at(method).error_bound == m.error_bound);
      }
    }
    CHECK(to_json(record_from_json(to_json(records.front()))) == to_json(records.front()));
    CHECK(error_of([] { records_from_json("[{\"algebra\": 3}]"); }).code() == ErrorCode::ParseError);
    CHECK(error_of([] { record_from_json("{"); }).code() == ErrorCode::ParseError);
  }

  TEST_CASE("CSV rows") {
    const AtlasRecord a1 = run_single({Family::A, 1}, quick_config());
    const AtlasRecord a8 = run_single({Family::A, 8}, quick_config());
    const std::string csv = to_csv({a1, a8});
    const auto first_break = csv.find('\n');
    CHECK(csv.substr(0, first_break) ==
          "name,rank,verdict,volume_adaptive,error_adaptive,volume_mc,sigma_mc,closed_form");
    CHECK(csv.find("\nA1++,3,strictly_hyperbolic,0.523598") != std::string::npos);
    CHECK(csv.find("\nA8++,10,not_hyperbolic,,,,,\n") != std::string::npos);
  }

  TEST_CASE("failures become error records") {
    AtlasConfig cfg;
    cfg.methods = parse_method_set("series");
    cfg.series_max_order = 0;
    cfg.max_rank = 4;
    const auto records = run_atlas(cfg);
    REQUIRE_FALSE(records.empty());
    for (const auto& r : records) CHECK(r.error.has_value());
    CHECK(to_csv(records).find(",error,") != std::string::npos);
  }

  TEST_CASE("reference tables") {
    const auto table = ReferenceTable::parse(
        "# literature values\n"
        "name,volume,source\n"
        "A1++,0.5235987755982988,exact\n"
        "A2++, 0.0846, rounded, second printing\n"
        "Q5++,1.0,typo\n");
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[1].source == "rounded, second printing");
    CHECK(error_of([] { ReferenceTable::parse("name,volume,source\nA1++,-1,x\n"); }).code() ==
          ErrorCode::ParseError);
    CHECK(error_of([] { ReferenceTable::parse("A1++,1,x\n"); }).code() == ErrorCode::ParseError);
    CHECK(error_of([] { ReferenceTable::load("/nonexistent/table.csv"); }).code() == ErrorCode::IoError);

    const std::vector<AtlasRecord> records{run_single({Family::A, 1}, quick_config()),
                                           run_single({Family::A, 2}, quick_config())};
    const auto report = compare_reference(records, table, 1e-3);
    CHECK(report.passed == 2);
    CHECK(report.failed == 0);
    CHECK(report.unmatched == std::vector<std::string>{"Q5++"});
    CHECK(report.ok());
    const auto strict = compare_reference(records, ReferenceTable::parse("name,volume,source\nA2++,0.0846,r\n"), 1e-6);
    CHECK(strict.failed == 1);
    CHECK(strict.rows[0].rel_deviation > 1e-6);
  }

  TEST_CASE("identity suite flags only the E8 table entry") {
    std::vector<std::string> failing;
    for (const auto& c : run_identity_suite())
      if (!c.pass) failing.push_back(c.name);
    CHECK(failing == std::vector<std::string>{"table E8++"});
  }
}
