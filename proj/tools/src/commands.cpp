#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include "lieiso_cli/cli.hpp"
#include "lieiso_cli/report.hpp"
#include <lieiso/parallel.hpp>

namespace lieiso::cli {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricOptions {
  std::string family;
  std::optional<double> c;
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<double> lambda;
  std::vector<double> gram;
  std::optional<double> tol_rank;
  std::optional<double> tol_case;
};

void add_family_options(CLI::App& cmd, MetricOptions& o) {
  cmd.add_option("--family", o.family, "Lie algebra family")
      ->required()
      ->check(CLI::IsMember({"I", "c"}));
  cmd.add_option("--c", o.c, "Isomorphism invariant c (family c)");
  cmd.add_option("--tol-rank", o.tol_rank, "Relative pivot threshold for rank decisions");
  cmd.add_option("--tol-case", o.tol_case, "Boundary snapping tolerance");
}

void add_metric_options(CLI::App& cmd, MetricOptions& o) {
  add_family_options(cmd, o);
  cmd.add_option("--mu", o.mu, "Metric parameter mu");
  cmd.add_option("--nu", o.nu, "Metric parameter nu");
  cmd.add_option("--lambda", o.lambda, "Metric parameter lambda");
  cmd.add_option("--gram", o.gram, "Arbitrary Gram matrix, 9 reals row-major")->expected(9);
}

Tolerances resolve_tolerances(const MetricOptions& o) {
  Tolerances tol;
  if (const char* env = std::getenv("LIEISO_TOL_RANK"); env != nullptr && *env != '\0') {
    try {
      tol.rank = std::stod(env);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("LIEISO_TOL_RANK is not a number: {}", env));
    }
  }
  if (o.tol_rank) tol.rank = *o.tol_rank;
  if (o.tol_case) tol.case_snap = *o.tol_case;
  if (!(tol.rank > 0.0) || !(tol.case_snap >= 0.0)) throw UsageError("tolerances must be positive");
  return tol;
}

FamilyTag resolve_family(const MetricOptions& o) {
  if (o.family == "I") {
    if (o.c) throw UsageError("--c is only valid with --family c");
    return FamilyTag::identity();
  }
  if (!o.c) throw UsageError("--family c requires --c");
  return FamilyTag::c(*o.c);
}

struct Resolved {
  LieAlgebra3 alg;
  InnerProduct g;
  Tolerances tol;
};

Resolved resolve_metric(const MetricOptions& o) {
  const Tolerances tol = resolve_tolerances(o);
  LieAlgebra3 alg = make_algebra(resolve_family(o));
  const bool gram = !o.gram.empty();
  const int specs = (gram ? 1 : 0) + (o.mu ? 1 : 0) + (o.lambda ? 1 : 0);
  if (specs > 1 || (gram && o.nu)) {
    throw UsageError("give exactly one metric: --mu --nu, --nu, --lambda --nu, or --gram");
  }
  if (gram) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = o.gram[static_cast<std::size_t>(i)];
    return {alg, InnerProduct::from_gram(m, alg.family()), tol};
  }
  if (!o.nu) throw UsageError("metric requires --nu (with --mu or --lambda, or --gram instead)");
  MetricParams p = o.mu       ? MetricParams::g_mu_nu(*o.mu, *o.nu)
                   : o.lambda ? MetricParams::g_lambda_nu(*o.lambda, *o.nu)
                              : MetricParams::g_nu(*o.nu);
  InnerProduct g = metric_from_table(alg, p, tol);
  return {alg, g, tol};
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << content;
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

std::string fmt_number(double x) { return fmt::format("{:.12g}", x == 0.0 ? 0.0 : x); }

// classify --------------------------------------------------------------------

int cmd_classify(const MetricOptions& o, bool as_json, std::ostream& out) {
  const Resolved r = resolve_metric(o);
  const json j = build_report(r.alg, r.g, r.tol);
  out << (as_json ? j.dump(2) + "\n" : render_text(j));
  return kOk;
}

// table -----------------------------------------------------------------------

int cmd_table(const std::string& which, const std::string& format, const std::string& path,
              int grid, const MetricOptions& o, std::ostream& out) {
  if (grid < 0) throw UsageError("--grid must be non-negative");
  const Tolerances tol = resolve_tolerances(o);
  json rows;
  std::vector<std::string> columns;
  if (which == "metrics") {
    rows = metrics_table();
    columns = {"family", "regime", "metric", "constraint", "form"};
  } else {
    rows = symmetry_table(grid, tol);
    columns = {"family", "c", "metric", "constraint", "index", "generator"};
  }
  write_output(path, format == "json" ? rows.dump(2) + "\n" : to_csv(rows, columns), out);
  return kOk;
}

// scan ------------------------------------------------------------------------

int cmd_scan(const MetricOptions& o, const GridSpec& grid, const std::string& path,
             std::ostream& out) {
  const Tolerances tol = resolve_tolerances(o);
  const FamilyTag family = resolve_family(o);
  const ModuliScanResult scan = scan_moduli(family, grid, tol);
  if (!path.empty()) write_output(path, scan_to_json(scan, grid).dump(2) + "\n", out);

  out << fmt::format("family {}: {} points, maximal index {}\n", family.label(),
                     scan.points.size(), scan.max_index);
  if (scan.singular_locus_empty) {
    out << "containment Z(G) in S(G): PASS (vacuous, Z empty)\n";
  } else {
    out << fmt::format("containment Z(G) in S(G): {}\n", scan.singular_locus_ok ? "PASS" : "FAIL");
  }
  bool ok = scan.singular_locus_ok;
  if (scan.equality_asserted) {
    out << fmt::format("equality S(G) = Z(G): {}\n", scan.equality_ok ? "PASS" : "FAIL");
    ok = ok && scan.equality_ok;
  } else {
    out << fmt::format("equality not asserted; points of maximal index outside Z: {}\n",
                       scan.strict_witnesses);
  }
  if (path.empty()) out << scan_to_json(scan, grid).dump(2) << '\n';
  return ok ? kOk : kVerificationFailure;
}

// verify ----------------------------------------------------------------------

int cmd_verify(const MetricOptions& o, int points, std::uint64_t seed, std::ostream& out) {
  if (points < 1) throw UsageError("--points must be positive");
  const Resolved r = resolve_metric(o);
  const FamilyTag& fam = r.alg.family();
  const OracleTolerances otol;
  const CurvatureData curv = compute_curvature(r.alg, r.g);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double ricci_fd = 0.0;
  double killing = 0.0;
  double frame = 0.0;
  double sectional = 0.0;
  for (int n = 0; n < points; ++n) {
    GroupPoint p;
    for (int i = 0; i < 3; ++i) p(i) = coord(rng);
    ricci_fd = std::max(ricci_fd, (numeric_ricci(fam, r.g, p) - curv.ricci).cwiseAbs().maxCoeff());
    for (int i = 0; i < 3; ++i) {
      killing = std::max(killing,
                         killing_residual(fam, r.g, right_invariant_field(fam, Vec3::Unit(i)), p));
    }
    frame = std::max(frame, frame_bracket_residual(r.alg, p));
    const SectionalRange num = sectional_range(numeric_riemann_frame(fam, r.g, p), r.g);
    sectional = std::max({sectional, std::abs(num.min - curv.sectional.min),
                          std::abs(num.max - curv.sectional.max)});
  }

  struct Check {
    const char* name;
    double value;
    double tol;
  };
  const std::vector<Check> checks{
      {"metric_compatibility", metric_compatibility_defect(curv.conn, r.g), otol.metric_compatibility},
      {"torsion", torsion_defect(curv.conn, r.alg), otol.torsion},
      {"bianchi1", bianchi1_defect(curv.r), otol.bianchi},
      {"bianchi2", bianchi2_defect(curv.dr), otol.bianchi},
      {"ricci_fd", ricci_fd, otol.ricci_fd},
      {"sectional_fd", sectional, otol.sectional_fd},
      {"killing_fd", killing, otol.killing_fd},
      {"frame_bracket_fd", frame, otol.frame_bracket_fd},
  };
  bool ok = true;
  out << fmt::format("verify family {} metric {} points {} seed {}\n", fam.label(),
                     metric_label(r.g.params()), points, seed);
  for (const Check& c : checks) {
    const bool pass = c.value <= c.tol;
    ok = ok && pass;
    out << fmt::format("{:<22} max {:<12.4e} tol {:<8.1e} {}\n", c.name, c.value, c.tol,
                       pass ? "PASS" : "FAIL");
  }
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

std::string metric_label(const MetricParams& p) {
  switch (p.kind) {
    case MetricKind::Nu: return fmt::format("g_nu[nu={}]", fmt_number(p.nu));
    case MetricKind::MuNu:
      return fmt::format("g_mu_nu[mu={};nu={}]", fmt_number(p.mu), fmt_number(p.nu));
    case MetricKind::LambdaNu:
      return fmt::format("g'_lambda_nu[lambda={};nu={}]", fmt_number(p.lambda), fmt_number(p.nu));
    case MetricKind::Gram: return "gram";
  }
  return "?";
}

json metrics_table() {
  struct Row {
    FamilyTag family;
    const char* regime;
    CRegime reg;
    MetricKind kind;
    const char* form;
    MetricParams sample;
  };
  const std::vector<Row> rows{
      {FamilyTag::identity(), "-", CRegime::Above, MetricKind::Nu, "diag(1, 1, nu)",
       MetricParams::g_nu(1.0)},
      {FamilyTag::c(-2.0), "c<0", CRegime::Negative, MetricKind::MuNu, "diag(1, mu, nu)",
       MetricParams::g_mu_nu(1.0, 1.0)},
      {FamilyTag::c(0.0), "c=0", CRegime::Zero, MetricKind::MuNu, "diag(1, mu, nu)",
       MetricParams::g_mu_nu(1.0, 1.0)},
      {FamilyTag::c(0.0), "c=0", CRegime::Zero, MetricKind::Nu,
       "[[1, 1/2, 0], [1/2, 1, 0], [0, 0, nu]]", MetricParams::g_nu(1.0)},
      {FamilyTag::c(0.25), "0<c<1", CRegime::Between, MetricKind::MuNu,
       "P^T [[1, mu, 0], [mu, 1, 0], [0, 0, nu]] P", MetricParams::g_mu_nu(0.25, 1.0)},
      {FamilyTag::c(1.0), "c=1", CRegime::One, MetricKind::MuNu, "diag(1, mu, nu)",
       MetricParams::g_mu_nu(0.5, 1.0)},
      {FamilyTag::c(1.0), "c=1", CRegime::One, MetricKind::LambdaNu,
       "[[1, lambda, 0], [lambda, 1, 0], [0, 0, nu]]", MetricParams::g_lambda_nu(0.5, 1.0)},
      {FamilyTag::c(4.0), "1<c", CRegime::Above, MetricKind::MuNu,
       "[[1, 1, 0], [1, mu, 0], [0, 0, nu]]", MetricParams::g_mu_nu(2.0, 1.0)},
  };
  json out = json::array();
  for (const Row& r : rows) {
    const InnerProduct g = metric_from_table(make_algebra(r.family), r.sample);
    std::vector<std::vector<double>> gram(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gram[i][j] = g.coeffs()(i, j);
    out.push_back({{"family", r.family.kind() == FamilyTag::Kind::I ? "I" : "c"},
                   {"regime", r.regime},
                   {"metric", to_string(r.kind)},
                   {"constraint", table1_constraint(r.family.kind(), r.reg, r.kind)},
                   {"form", r.form},
                   {"sample_family", r.family.label()},
                   {"sample_metric", metric_label(r.sample)},
                   {"sample_gram", gram}});
  }
  return out;
}

json symmetry_table(int grid, const Tolerances& tol) {
  struct Job {
    StratumId id;
    int k;
  };
  std::vector<Job> jobs;
  for (const StratumInfo& s : table2_strata())
    for (int k = 0; k < grid; ++k) jobs.push_back({s.id, k});

  const auto rows = parallel_map(jobs.size(), [&](std::size_t i) {
    const StratumSample smp = sample_stratum(jobs[i].id, jobs[i].k);
    const LieAlgebra3 alg = make_algebra(smp.family);
    const InnerProduct g = metric_from_table(alg, smp.params, tol);
    const Table2Row row = table2_row(alg, g, tol);
    std::string generator = row.report.index == 3 ? "TG" : "-";
    if (row.report.generator) {
      const Vec3& v = *row.report.generator;
      generator = fmt::format("({},{},{})", fmt_number(v(0)), fmt_number(v(1)), fmt_number(v(2)));
    }
    const bool is_i = smp.family.kind() == FamilyTag::Kind::I;
    return json{{"family", is_i ? "I" : "c"},
                {"c", is_i ? json(nullptr) : json(smp.family.c())},
                {"metric", metric_label(smp.params)},
                {"constraint", stratum_info(row.stratum).constraint},
                {"index", row.report.index},
                {"generator", generator},
                {"stratum", stratum_info(row.stratum).name}};
  });
  json out = json::array();
  for (const json& r : rows) out.push_back(r);
  return out;
}

std::string to_csv(const json& rows, const std::vector<std::string>& columns) {
  const auto field = [](const json& v) -> std::string {
    std::string s;
    if (v.is_null()) return "";
    if (v.is_string()) {
      s = v.get<std::string>();
    } else if (v.is_number_float()) {
      s = fmt_number(v.get<double>());
    } else {
      s = v.dump();
    }
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const json& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += (i ? "," : "") + field(row.contains(columns[i]) ? row.at(columns[i]) : json());
    }
    out += '\n';
  }
  return out;
}

json scan_to_json(const ModuliScanResult& scan, const GridSpec& grid) {
  json pts = json::array();
  for (const ScanPoint& p : scan.points) {
    pts.push_back({{"metric", metric_label(p.raw)},
                   {"snapped_metric", metric_label(p.snapped)},
                   {"raw_stratum", stratum_info(p.raw_stratum).name},
                   {"stratum", stratum_info(p.stratum).name},
                   {"index", p.index},
                   {"group_tag", to_string(p.group_tag)},
                   {"in_singular_locus", p.in_singular_locus}});
  }
  const FamilyTag& f = scan.family;
  return json{{"family", f.kind() == FamilyTag::Kind::I ? "I" : "c"},
              {"c", f.kind() == FamilyTag::Kind::I ? json(nullptr) : json(f.c())},
              {"grid", {{"n_mu", grid.n_mu}, {"n_nu", grid.n_nu}, {"nu_min", grid.nu_min},
                        {"nu_max", grid.nu_max}, {"mu_max", grid.mu_max}}},
              {"max_index", scan.max_index},
              {"singular_locus_empty", scan.singular_locus_empty},
              {"singular_locus_ok", scan.singular_locus_ok},
              {"equality_asserted", scan.equality_asserted},
              {"equality_ok", scan.equality_ok},
              {"strict_witnesses", scan.strict_witnesses},
              {"points", pts}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isometry groups and index of symmetry of 3-dimensional non-unimodular metric Lie groups",
               "lieiso"};
  app.require_subcommand(1);

  MetricOptions classify_opts;
  bool as_json = false;
  bool as_text = false;
  auto* classify = app.add_subcommand("classify", "Full report for one metric");
  add_metric_options(*classify, classify_opts);
  auto* json_flag = classify->add_flag("--json", as_json, "Emit JSON");
  classify->add_flag("--text", as_text, "Emit flattened text (default)")->excludes(json_flag);

  MetricOptions table_opts;
  std::string which;
  std::string format = "csv";
  std::string table_out;
  int table_grid = 3;
  auto* table = app.add_subcommand("table", "Regenerate the metric or symmetry table");
  table->add_option("--which", which)->required()->check(CLI::IsMember({"metrics", "symmetry"}));
  table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", table_out, "Output path (stdout if omitted)");
  table->add_option("--grid", table_grid, "Samples per stratum");
  table->add_option("--tol-rank", table_opts.tol_rank);
  table->add_option("--tol-case", table_opts.tol_case);

  MetricOptions scan_opts;
  GridSpec grid;
  std::string scan_out;
  auto* scan = app.add_subcommand("scan", "Scan the moduli space of one family");
  add_family_options(*scan, scan_opts);
  scan->add_option("--grid-mu", grid.n_mu, "mu (or lambda) samples");
  scan->add_option("--grid-nu", grid.n_nu, "nu samples");
  scan->add_option("--nu-min", grid.nu_min);
  scan->add_option("--nu-max", grid.nu_max);
  scan->add_option("--mu-max", grid.mu_max, "Upper mu bound for c = 0");
  scan->add_option("--threads", grid.threads, "Worker threads (0 = all cores)");
  scan->add_option("--out", scan_out, "JSON output path");

  MetricOptions verify_opts;
  int points = 10;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Cross-check against the coordinate model");
  add_metric_options(*verify, verify_opts);
  verify->add_option("--points", points, "Sample points");
  verify->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kRangeError;
  }

  try {
    if (*classify) return cmd_classify(classify_opts, as_json, out);
    if (*table) return cmd_table(which, format, table_out, table_grid, table_opts, out);
    if (*scan) return cmd_scan(scan_opts, grid, scan_out, out);
    if (*verify) return cmd_verify(verify_opts, points, seed, out);
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    if (!e.constraint().empty()) err << "constraint: " << e.constraint() << '\n';
    return kRangeError;
  } catch (const InvalidGramError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidGram;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kRangeError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kRangeError;
  }
  return kOk;
}

}  // namespace lieiso::cli
