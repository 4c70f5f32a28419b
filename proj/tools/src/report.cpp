#include "lieiso_cli/report.hpp"

#include <cmath>
#include <sstream>

namespace lieiso::cli {

using nlohmann::json;

namespace {

// Roundoff-sized entries are reported as exact zeros.
double chop(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

Matrix to_matrix(const Eigen::MatrixXd& m, double tol) {
  Matrix out;
  out.tol = tol;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(chop(m(i, j)));
    out.value.push_back(std::move(row));
  }
  return out;
}

Vector to_vector(const Eigen::VectorXd& v, double tol) {
  Vector out;
  out.tol = tol;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.value.push_back(chop(v(i)));
  return out;
}

double oracle_residual(const LieAlgebra3& alg, const InnerProduct& g, const CurvatureData& curv,
                       double& killing, double& frame) {
  const FamilyTag& fam = alg.family();
  const GroupPoint e = GroupPoint::Zero();
  killing = 0.0;
  for (int i = 0; i < 3; ++i) {
    killing = std::max(killing, killing_residual(fam, g, right_invariant_field(fam, Vec3::Unit(i)), e));
  }
  frame = frame_bracket_residual(alg, e);
  return (numeric_ricci(fam, g, e) - curv.ricci).cwiseAbs().maxCoeff();
}

}  // namespace

ReportDocument build_report(const LieAlgebra3& alg, const InnerProduct& g, const Tolerances& tol) {
  const OracleTolerances otol;
  const CurvatureData curv = compute_curvature(alg, g);
  const IsometryDescriptor iso = classify_isometry_group(alg, g, curv, tol);
  const SymmetryReport sym = index_of_symmetry(alg, g, curv, iso, tol);
  const KillingAlgebra ka = killing_algebra(alg, curv, iso.isotropy_generators, tol);
  const KillingForm kf = killing_form(ka.structure);

  ReportDocument r;
  InputEcho& in = r.input;
  const FamilyTag& fam = alg.family();
  in.family = fam.kind() == FamilyTag::Kind::I ? "I" : "c";
  if (fam.kind() == FamilyTag::Kind::C) in.c = fam.c();
  const MetricParams& p = g.params();
  in.metric = to_string(p.kind);
  switch (p.kind) {
    case MetricKind::Nu: in.nu = p.nu; break;
    case MetricKind::MuNu: in.mu = p.mu; in.nu = p.nu; break;
    case MetricKind::LambdaNu: in.lambda = p.lambda; in.nu = p.nu; break;
    case MetricKind::Gram: break;
  }
  in.gram = to_matrix(g.coeffs(), 0.0);
  in.boundary_snapped = g.boundary_snapped();
  in.tolerances = tol;

  CurvatureSection& c = r.curvature;
  c.ricci = to_matrix(curv.ricci, otol.ricci);
  c.scalar = {chop(curv.scalar), otol.ricci};
  c.sectional_min = {chop(curv.sectional.min), otol.ricci};
  c.sectional_max = {chop(curv.sectional.max), otol.ricci};
  c.nabla_r = {chop(curv.dr.max_abs()), tol.singer};
  c.locally_symmetric = is_locally_symmetric(curv, tol);

  IsometrySection& is = r.isometry;
  is.total_dim = iso.total_dim;
  is.isotropy_dim = iso.isotropy_dim;
  is.group_tag = to_string(iso.group_tag);
  for (const Mat3& a : iso.isotropy_generators) is.generators.push_back(to_matrix(a, tol.singer));
  is.symmetric_space = iso.symmetric_space;
  is.singer_residual = {iso.singer_residual, tol.singer};
  is.splitting_line.tol = tol.case_snap;
  if (iso.splitting) is.splitting_line = to_vector(iso.splitting->line, tol.case_snap);

  KillingSection& k = r.killing;
  k.basis = ka.labels;
  for (int i = 0; i < ka.dim(); ++i) {
    for (int j = i + 1; j < ka.dim(); ++j) {
      Eigen::VectorXd coeff(ka.dim());
      for (int m = 0; m < ka.dim(); ++m) coeff(m) = ka.structure[m](i, j);
      k.brackets.push_back({ka.labels[i], ka.labels[j], to_vector(coeff, tol.closure)});
    }
  }
  k.form = to_matrix(kf.form, tol.closure);
  k.eigenvalues = to_vector(kf.eigenvalues, tol.closure);
  k.closure_residual = {ka.closure_residual, tol.closure};
  k.jacobi_defect = {jacobi_defect(ka.structure), tol.closure};

  SymmetrySection& s = r.symmetry;
  s.index = sym.index;
  s.span = span_label(sym);
  s.generator.tol = s.unit_generator.tol = tol.singer;
  if (sym.generator) s.generator = to_vector(*sym.generator, tol.singer);
  if (sym.unit_generator) s.unit_generator = to_vector(*sym.unit_generator, tol.singer);
  s.certificate = {sym.certificate_residual, tol.singer};
  s.symmetric = sym.symmetric;

  ResidualSection& res = r.residuals;
  res.metric_compatibility = {metric_compatibility_defect(curv.conn, g), otol.metric_compatibility};
  res.torsion = {torsion_defect(curv.conn, alg), otol.torsion};
  res.bianchi1 = {bianchi1_defect(curv.r), otol.bianchi};
  res.bianchi2 = {bianchi2_defect(curv.dr), otol.bianchi};
  double killing = 0.0;
  double frame = 0.0;
  res.ricci_fd = {oracle_residual(alg, g, curv, killing, frame), otol.ricci_fd};
  res.killing_fd = {killing, otol.killing_fd};
  res.frame_bracket_fd = {frame, otol.frame_bracket_fd};
  return r;
}

// JSON encoding --------------------------------------------------------------

void to_json(json& j, const Scalar& s) { j = json{{"value", s.value}, {"tol", s.tol}}; }
void from_json(const json& j, Scalar& s) {
  j.at("value").get_to(s.value);
  j.at("tol").get_to(s.tol);
}
void to_json(json& j, const Vector& v) { j = json{{"value", v.value}, {"tol", v.tol}}; }
void from_json(const json& j, Vector& v) {
  j.at("value").get_to(v.value);
  j.at("tol").get_to(v.tol);
}
void to_json(json& j, const Matrix& m) { j = json{{"value", m.value}, {"tol", m.tol}}; }
void from_json(const json& j, Matrix& m) {
  j.at("value").get_to(m.value);
  j.at("tol").get_to(m.tol);
}

namespace {

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

void to_json(json& j, const InputEcho& in) {
  const Tolerances& t = in.tolerances;
  j = json{{"family", in.family},
           {"c", optional_number(in.c)},
           {"metric", in.metric},
           {"mu", optional_number(in.mu)},
           {"nu", optional_number(in.nu)},
           {"lambda", optional_number(in.lambda)},
           {"gram", in.gram},
           {"boundary_snapped", in.boundary_snapped},
           {"tolerances",
            {{"rank", t.rank},
             {"case_snap", t.case_snap},
             {"jacobi", t.jacobi},
             {"singer", t.singer},
             {"closure", t.closure}}}};
}

void from_json(const json& j, InputEcho& in) {
  j.at("family").get_to(in.family);
  in.c = read_optional(j, "c");
  j.at("metric").get_to(in.metric);
  in.mu = read_optional(j, "mu");
  in.nu = read_optional(j, "nu");
  in.lambda = read_optional(j, "lambda");
  j.at("gram").get_to(in.gram);
  j.at("boundary_snapped").get_to(in.boundary_snapped);
  const json& t = j.at("tolerances");
  t.at("rank").get_to(in.tolerances.rank);
  t.at("case_snap").get_to(in.tolerances.case_snap);
  t.at("jacobi").get_to(in.tolerances.jacobi);
  t.at("singer").get_to(in.tolerances.singer);
  t.at("closure").get_to(in.tolerances.closure);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CurvatureSection, ricci, scalar, sectional_min, sectional_max,
                                   nabla_r, locally_symmetric)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IsometrySection, total_dim, isotropy_dim, group_tag, generators,
                                   symmetric_space, singer_residual, splitting_line)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BracketEntry, left, right, coeffs)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KillingSection, basis, brackets, form, eigenvalues,
                                   closure_residual, jacobi_defect)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SymmetrySection, index, span, generator, unit_generator,
                                   certificate, symmetric)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResidualSection, metric_compatibility, torsion, bianchi1,
                                   bianchi2, ricci_fd, killing_fd, frame_bracket_fd)

void to_json(json& j, const ReportDocument& r) {
  j = json{{"schema_version", r.schema_version},
           {"input", r.input},
           {"curvature", r.curvature},
           {"isometry", r.isometry},
           {"killing", r.killing},
           {"symmetry", r.symmetry},
           {"residuals", r.residuals}};
}

void from_json(const json& j, ReportDocument& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("input").get_to(r.input);
  j.at("curvature").get_to(r.curvature);
  j.at("isometry").get_to(r.isometry);
  j.at("killing").get_to(r.killing);
  j.at("symmetry").get_to(r.symmetry);
  j.at("residuals").get_to(r.residuals);
}

// Text encoding --------------------------------------------------------------

namespace {

bool has_object(const json& arr) {
  for (const json& x : arr) {
    if (x.is_object()) return true;
  }
  return false;
}

void flatten_into(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    }
  } else if (j.is_array() && has_object(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "." + std::to_string(i), os);
  } else {
    os << path << " = " << j.dump() << '\n';
  }
}

bool all_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream os;
  flatten_into(j, "", os);
  return os.str();
}

json parse_text(const std::string& text) {
  json root = json::object();
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw std::invalid_argument("malformed report line: " + line);
    const std::string path = line.substr(0, eq);
    json* node = &root;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
      json* next = nullptr;
      if (all_digits(key)) {
        if (node->is_null()) *node = json::array();
        const std::size_t idx = std::stoul(key);
        while (node->size() <= idx) node->push_back(json());
        next = &(*node)[idx];
      } else {
        if (node->is_null()) *node = json::object();
        next = &(*node)[key];
      }
      node = next;
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    *node = json::parse(line.substr(eq + 3));
  }
  return root;
}

}  // namespace lieiso::cli
