// kmvol: shape matrices, hyperbolicity, vertices and volumes of the
// fundamental domains of over-extended Kac-Moody Weyl groups.
//
// Exit codes: 0 success, 1 usage or parse error, 2 computation error,
// 3 comparison failure.

#include "kmvol/atlas.hpp"
#include "kmvol/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace kmvol;

enum Exit { kOk = 0, kUsage = 1, kCompute = 2, kCompare = 3 };

struct Options {
  std::string name;
  std::string method = "adaptive";
  double tol = 1e-12;
  double rel_tol = 1e-6;
  std::int64_t budget = 200000;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 20240601;
  int threads = 1;
  int max_rank = 10;
  bool no_twisted = false;
  std::string format;
  std::string out;
  std::string reference;
  double compare_tol = 1e-4;
};

AtlasConfig config_from(const Options& o) {
  AtlasConfig cfg;
  cfg.methods = parse_method_set(o.method);
  cfg.adaptive.tol = o.tol;
  cfg.adaptive.rel_tol = o.rel_tol;
  cfg.adaptive.budget = o.budget;
  cfg.adaptive.threads = o.threads;
  cfg.series_tol = std::max(o.tol, 1e-14);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.max_rank = o.max_rank;
  cfg.twisted = !o.no_twisted;
  cfg.threads = o.threads;
  return cfg;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + o.out);
  f << text;
}

std::string format_or(const Options& o, const std::string& fallback) {
  return o.format.empty() ? fallback : o.format;
}

int cmd_shape(const Options& o) {
  const AlgebraId id = parse_name(o.name);
  const ShapeMatrix s = shape_of(id);
  std::ostringstream os;
  if (format_or(o, "text") == "json") {
    os << "{\"algebra\": \"" << name(id) << "\", \"S\": [";
    for (Eigen::Index i = 0; i < s.n(); ++i) {
      os << (i ? ", [" : "[");
      for (Eigen::Index j = 0; j < s.n(); ++j) os << (j ? ", \"" : "\"") << to_string(s.S(i, j)) << "\"";
      os << "]";
    }
    os << "]}\n";
  } else {
    for (Eigen::Index i = 0; i < s.n(); ++i) {
      for (Eigen::Index j = 0; j < s.n(); ++j) os << (j ? " " : "") << to_string(s.S(i, j));
      os << "\n";
    }
  }
  emit(o, os.str());
  return kOk;
}

int cmd_classify(const Options& o) {
  const AlgebraId id = parse_name(o.name);
  const ShapeMatrix s = shape_of(id);
  const auto rep = classify_hyperbolicity(s);
  std::ostringstream os;
  os << name(id) << " " << to_string(rep.verdict) << "\n";
  for (Eigen::Index i = 0; i < s.n(); ++i) {
    const auto c = rep.per_index[static_cast<std::size_t>(i)];
    os << "  S(" << i + 1 << "," << i + 1 << ") = " << to_string(s.S(i, i)) << "  "
       << (c == IndexClass::interior ? "interior" : c == IndexClass::cusp ? "cusp" : "beyond") << "\n";
  }
  emit(o, os.str());
  return kOk;
}

int cmd_vertices(const Options& o) {
  const AlgebraId id = parse_name(o.name);
  const ShapeMatrix s = shape_of(id);
  const auto geom = embed_domain(s, classify_hyperbolicity(s));
  std::ostringstream os;
  os << "# " << name(id) << ": vertex j at (u_j, v_j); also (0, 1) and the cusp at infinity\n";
  os << "# gram residual " << fmt(geom.gram_residual) << "\n";
  for (std::size_t j = 0; j < geom.vertices.size(); ++j) {
    const auto& v = geom.vertices[j];
    os << j + 1 << " v=" << fmt(v.v) << " u=";
    for (Eigen::Index k = 0; k < v.u.size(); ++k) os << (k ? "," : "") << fmt(v.u(k));
    os << "\n";
  }
  emit(o, os.str());
  return kOk;
}

int cmd_volume(const Options& o) {
  const AlgebraId id = parse_name(o.name);
  const AtlasRecord r = run_single(id, config_from(o));
  const std::string f = format_or(o, "text");
  if (f == "json") {
    emit(o, to_json(r));
  } else if (f == "csv") {
    emit(o, to_csv({r}));
  } else {
    std::ostringstream os;
    os << name(r.algebra) << " " << r.verdict << "\n";
    for (const auto& [method, m] : r.volumes)
      os << "  " << method << " " << fmt(m.value) << " +- " << fmt(m.error_bound) << "  work "
         << m.work << (m.converged ? "" : "  (not converged)") << "\n";
    if (r.closed_form)
      os << "  closed_form " << fmt(*r.closed_form_value) << "  (" << to_string(r.closed_form->tag)
         << ")\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    emit(o, os.str());
  }
  if (r.verdict == to_string(Verdict::not_hyperbolic)) return kCompute;
  return kOk;
}

int cmd_atlas(const Options& o) {
  const auto records = run_atlas(config_from(o));
  emit(o, format_or(o, "json") == "csv" ? to_csv(records) : to_json(records));
  for (const auto& r : records)
    if (r.error) return kCompute;
  return kOk;
}

int cmd_check(const Options& o) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : run_identity_suite()) {
    failed += !c.pass;
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << (failed ? std::to_string(failed) + " check(s) failed\n" : "all checks passed\n");
  emit(o, os.str());
  return failed ? kCompare : kOk;
}

int cmd_compare(const Options& o) {
  const ReferenceTable table = ReferenceTable::load(o.reference);
  AtlasConfig cfg = config_from(o);
  cfg.methods = {true, false, false};
  std::set<AlgebraId> wanted;
  for (const auto& row : table.rows) {
    try {
      wanted.insert(parse_name(row.name));
    } catch (const Error&) {
    }
  }
  std::vector<AtlasRecord> records;
  for (const auto& id : wanted) {
    try {
      records.push_back(run_single(id, cfg));
    } catch (const Error&) {
    }
  }
  const auto report = compare_reference(records, table, o.compare_tol);
  std::ostringstream os;
  for (const auto& r : report.rows)
    os << (r.pass ? "PASS " : "FAIL ") << r.name << " reference " << fmt(r.reference) << " computed "
       << fmt(r.computed) << " rel " << fmt(r.rel_deviation) << "\n";
  for (const auto& n : report.unmatched) os << "UNMATCHED " << n << "\n";
  os << report.passed << " passed, " << report.failed << " failed, " << report.unmatched.size()
     << " unmatched\n";
  emit(o, os.str());
  return report.ok() ? kOk : kCompare;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental domains of over-extended Kac-Moody Weyl groups"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  Options o;
  app.add_option("--method", o.method, "adaptive, series, mc or all")
      ->check(CLI::IsMember({"adaptive", "series", "mc", "all"}, CLI::ignore_case));
  app.add_option("--tol", o.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rel-tol", o.rel_tol, "relative tolerance (adaptive)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", o.budget, "adaptive cell budget")->check(CLI::PositiveNumber);
  app.add_option("--samples", o.samples, "Monte Carlo samples");
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-rank", o.max_rank, "largest over-extended rank in the atlas");
  app.add_flag("--no-twisted", o.no_twisted, "leave twisted entries out of the atlas");
  app.add_option("--format", o.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}, CLI::ignore_case));
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--reference", o.reference, "reference CSV with header name,volume,source");
  app.add_option("--compare-tol", o.compare_tol, "relative pass threshold for compare");

  auto named = [&](const std::string& verb, const std::string& help) {
    auto* sub = app.add_subcommand(verb, help);
    sub->add_option("name", o.name, "algebra, e.g. E8++, B4(2)++, E10")->required();
    sub->fallthrough();
    return sub;
  };
  auto* shape = named("shape", "print the shape matrix S as exact rationals");
  auto* classify = named("classify", "hyperbolicity verdict and cusp indices");
  auto* vertices = named("vertices", "vertex coordinates on the unit hemisphere");
  auto* volume = named("volume", "volume of the fundamental domain");
  auto* atlas = app.add_subcommand("atlas", "all hyperbolic over-extensions")->fallthrough();
  auto* check = app.add_subcommand("check", "run the identity suite")->fallthrough();
  auto* compare = app.add_subcommand("compare", "compare volumes with a reference table")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*shape) return cmd_shape(o);
    if (*classify) return cmd_classify(o);
    if (*vertices) return cmd_vertices(o);
    if (*volume) return cmd_volume(o);
    if (*atlas) return cmd_atlas(o);
    if (*check) return cmd_check(o);
    if (*compare) {
      if (o.reference.empty()) {
        std::cerr << "compare needs --reference FILE\n";
        return kUsage;
      }
      return cmd_compare(o);
    }
  } catch (const Error& e) {
    std::cerr << "kmvol: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownAlias ||
                       e.code() == ErrorCode::UnknownAlgebra ||
                       e.code() == ErrorCode::TwistUnavailable;
    return usage ? kUsage : kCompute;
  } catch (const std::exception& e) {
    std::cerr << "kmvol: " << e.what() << "\n";
    return kCompute;
  }
  return kUsage;
}
