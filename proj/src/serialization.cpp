#include "avar/serialization.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "grid function binary format assumes a little-endian host");

namespace avar {

namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

Json complex_vector_to_json(const Eigen::VectorXcd& v) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < v.size(); ++i) {
    re.push_back(std::real(v(i)));
    im.push_back(std::imag(v(i)));
  }
  return Json{{"re", re}, {"im", im}};
}

}  // namespace

Json operator_to_json(const Operator& op) {
  Json mats = Json::array();
  for (const auto& m : op.matrices) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return Json{{"name", op.name}, {"d", op.d}, {"N", op.N}, {"k", op.k},
              {"matrices", mats}};
}

Operator operator_from_json(const Json& j) {
  const int d = j.at("d").get<int>();
  const int N = j.at("N").get<int>();
  const int k = j.at("k").get<int>();
  const Json& mats = j.at("matrices");
  if (static_cast<int>(mats.size()) != d)
    throw std::invalid_argument("operator json: expected d matrices");
  std::vector<Eigen::MatrixXd> matrices;
  for (const Json& rows : mats) {
    if (static_cast<int>(rows.size()) != k)
      throw std::invalid_argument("operator json: matrix must have k rows");
    Eigen::MatrixXd m(k, N);
    for (int r = 0; r < k; ++r) {
      if (static_cast<int>(rows[r].size()) != N)
        throw std::invalid_argument("operator json: row must have N entries");
      for (int c = 0; c < N; ++c) m(r, c) = rows[r][c].get<double>();
    }
    matrices.push_back(std::move(m));
  }
  return Operator(std::move(matrices), j.value("name", ""));
}

Json polynomial_to_json(const PolynomialVectorField& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json alpha = Json::array();
    for (int a : m.alpha) alpha.push_back(a);
    terms.push_back(Json{{"alpha", alpha}, {"component", m.component + 1}, {"coeff", c}});
  }
  return Json{{"d", p.dim_space()}, {"N", p.dim_values()}, {"terms", terms}};
}

PolynomialVectorField polynomial_from_json(const Json& j) {
  PolynomialVectorField p(j.at("d").get<int>(), j.at("N").get<int>());
  for (const Json& t : j.at("terms")) {
    std::vector<int> alpha;
    for (const Json& a : t.at("alpha")) alpha.push_back(a.get<int>());
    p.add_term(alpha, t.at("component").get<int>() - 1, t.at("coeff").get<double>());
  }
  return p;
}

Json certificate_to_json(const EllipticityCertificate& cert) {
  Json j{{"field", cert.field == Field::Real ? "real" : "complex"},
         {"verdict", cert.elliptic ? "elliptic" : "not_elliptic"},
         {"min_singular", cert.min_singular},
         {"samples", cert.samples},
         {"refine_rounds", cert.refine_rounds},
         {"tolerance", cert.tolerance},
         {"seed", cert.seed},
         {"near_threshold", cert.near_threshold}};
  if (cert.witness) {
    j["witness"] = Json{{"xi", complex_vector_to_json(cert.witness->xi)},
                        {"v", complex_vector_to_json(cert.witness->v)}};
  }
  return j;
}

Json cancelling_to_json(const CancellingCertificate& cert) {
  Json dirs = Json::array();
  for (const auto& xi : cert.witness_directions) dirs.push_back(vector_to_json(xi));
  return Json{{"verdict", cert.cancelling ? "cancelling" : "not_cancelling"},
              {"residual_dim", cert.residual_dim},
              {"samples_used", cert.samples_used},
              {"tolerance", cert.tolerance},
              {"seed", cert.seed},
              {"witness_directions", dirs}};
}

Json kernel_to_json(const KernelBasis& basis) {
  Json elems = Json::array();
  for (const auto& e : basis.elements) elems.push_back(polynomial_to_json(e));
  Json j{{"operator", basis.op.name},
         {"dimension", basis.dimension()},
         {"degree_cap", basis.degree_cap},
         {"degree_reached", basis.degree_reached},
         {"stabilization_degree", basis.stabilization_degree},
         {"stabilized", basis.stabilized},
         {"elements", elems}};
  if (!basis.warning.empty()) j["warning"] = basis.warning;
  return j;
}

Json projection_to_json(const ProjectionOperator& pi) {
  Json onb = Json::array();
  for (int j = 0; j < pi.gram_rank; ++j) onb.push_back(vector_to_json(pi.onb.col(j)));
  return Json{{"measure", pi.measure.description},
              {"kind", pi.measure.kind == DiscreteMeasure::Kind::Volume ? "volume"
                                                                        : "surface"},
              {"total_mass", pi.measure.total_mass},
              {"basis_size", static_cast<int>(pi.kernel_elements.size())},
              {"gram_rank", pi.gram_rank},
              {"linf_l1_constant", pi.linf_l1_constant},
              {"linf_l1_samples", pi.linf_l1_samples},
              {"linf_l1_seed", pi.linf_l1_seed},
              {"onb_coefficients", onb}};
}

Json estimate_to_json(const ConstantEstimate& est) {
  Json j{{"inequality", est.inequality},
         {"p", est.p},
         {"value", est.value},
         {"method", est.method},
         {"operator", est.operator_name},
         {"domain", est.domain_spec},
         {"domain_hash", est.domain_hash},
         {"constraint", est.constraint_spec},
         {"h", est.h},
         {"seed", est.seed},
         {"sample_count", est.sample_count},
         {"violations", est.violations}};
  if (est.eigenvalue) {
    j["eigenvalue"] = *est.eigenvalue;
    j["residual"] = *est.residual;
    j["iterations"] = est.iterations;
    j["constraint_residual"] = est.constraint_residual;
    j["solver_tolerance"] = est.solver_tolerance;
  }
  if (est.method == "sample_max") {
    j["skipped"] = est.skipped;
    j["blowup_witnesses"] = est.blowup_witnesses;
  }
  if (!est.warning.empty()) j["warning"] = est.warning;
  return j;
}

Json verification_to_json(const VerificationReport& report) {
  return Json{{"samples", report.samples},     {"violations", report.violations},
              {"worst_ratio", report.worst_ratio}, {"tol_rel", report.tol_rel},
              {"constant", report.constant},   {"skipped", report.skipped}};
}

Json sobolev_to_json(const SobolevReport& report) {
  return Json{{"operator", report.operator_name},
              {"domain", report.domain_spec},
              {"domain_hash", fnv1a_hash(report.domain_spec)},
              {"h", report.h},
              {"seed", report.seed},
              {"exponent", report.exponent},
              {"cancelling", report.cancelling},
              {"samples", report.samples},
              {"max_ratio", report.max_ratio},
              {"unbounded", report.unbounded},
              {"skipped", report.skipped}};
}

Json dilation_to_json(const DilationStudy& study) {
  Json rows = Json::array();
  for (const auto& r : study.rows)
    rows.push_back(Json{{"radius", r.radius}, {"lhs", r.lhs}, {"rhs", r.rhs},
                        {"ratio", r.ratio}});
  return Json{{"operator", study.operator_name},
              {"rows", rows},
              {"max_relative_deviation", study.max_relative_deviation}};
}

Json scaling_to_json(const ScalingStudy& study) {
  Json rows = Json::array();
  for (const auto& r : study.rows)
    rows.push_back(Json{{"radius", r.radius},
                        {"constant", r.constant},
                        {"constant_over_radius", r.constant_over_radius}});
  return Json{{"operator", study.operator_name},
              {"rows", rows},
              {"max_relative_deviation", study.max_relative_deviation}};
}

Json blowup_to_json(const BlowupReport& report) {
  return Json{{"operator", report.operator_name},
              {"domain", report.domain_spec},
              {"domain_hash", fnv1a_hash(report.domain_spec)},
              {"h", report.h},
              {"plane_normal", vector_to_json(report.plane_normal)},
              {"direction", vector_to_json(report.direction)},
              {"interior_variation", report.interior_variation},
              {"l1_distance", report.l1_distance},
              {"projection_norm", report.projection_norm}};
}

Json extension_to_json(const ExtensionReport& report) {
  const double sum = report.interior + report.boundary;
  return Json{{"interior", report.interior},
              {"boundary", report.boundary},
              {"total", report.total},
              {"interior_plus_boundary", sum},
              {"relative_gap",
               report.total > 0 ? std::abs(report.total - sum) / report.total : 0.0}};
}

ShapeSpec shape_from_json(const Json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "box") return ShapeSpec::box(vector_from_json(j.at("lo")),
                                            vector_from_json(j.at("hi")));
  if (shape == "ball")
    return ShapeSpec::ball(vector_from_json(j.at("center")), j.at("radius").get<double>());
  if (shape == "halfspace")
    return ShapeSpec::halfspace(vector_from_json(j.at("normal")),
                                j.at("offset").get<double>());
  if (shape == "domain") return ShapeSpec::whole_domain();
  throw std::invalid_argument("unknown shape kind: " + shape);
}

VoxelDomain domain_from_json(const Json& j, double h_override) {
  const double h = h_override > 0 ? h_override : j.at("h").get<double>();
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "mask") {
    std::vector<std::vector<int>> cells;
    for (const Json& c : j.at("cells")) {
      std::vector<int> idx;
      for (const Json& v : c) idx.push_back(v.get<int>());
      cells.push_back(std::move(idx));
    }
    return build_from_mask(j.at("d").get<int>(), h, vector_from_json(j.at("origin")),
                           std::move(cells), j.value("require_connected", true));
  }
  return build_domain(shape_from_json(j), h);
}

void write_grid_function(std::ostream& out, const GridFunction& u) {
  const char magic[4] = {'A', 'V', 'G', 'F'};
  out.write(magic, 4);
  const std::uint32_t version = 1;
  const std::uint32_t kind = u.kind == GridFunction::Kind::Cell ? 0 : 1;
  const std::uint32_t ncomp = static_cast<std::uint32_t>(u.ncomp);
  const std::uint64_t count = static_cast<std::uint64_t>(u.values.rows());
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&kind), 4);
  out.write(reinterpret_cast<const char*>(&ncomp), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);
  for (int i = 0; i < u.values.rows(); ++i)
    for (int c = 0; c < u.values.cols(); ++c) {
      const double v = u.values(i, c);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!out) throw std::runtime_error("write_grid_function: stream failure");
}

GridFunction read_grid_function(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "AVGF", 4) != 0)
    throw std::invalid_argument("read_grid_function: bad magic");
  std::uint32_t version = 0, kind = 0, ncomp = 0;
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&kind), 4);
  in.read(reinterpret_cast<char*>(&ncomp), 4);
  in.read(reinterpret_cast<char*>(&count), 8);
  if (!in || version != 1) throw std::invalid_argument("read_grid_function: bad header");
  GridFunction u;
  u.kind = kind == 0 ? GridFunction::Kind::Cell : GridFunction::Kind::Facet;
  u.ncomp = static_cast<int>(ncomp);
  u.values.resize(static_cast<int>(count), static_cast<int>(ncomp));
  for (std::uint64_t i = 0; i < count; ++i)
    for (std::uint32_t c = 0; c < ncomp; ++c) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      u.values(static_cast<int>(i), static_cast<int>(c)) = v;
    }
  if (!in) throw std::invalid_argument("read_grid_function: truncated data");
  return u;
}

void write_grid_function_file(const std::string& path, const GridFunction& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_grid_function(out, u);
}

GridFunction read_grid_function_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_grid_function(in);
}

namespace {

std::string format17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string scaling_to_csv(const ScalingStudy& study) {
  std::ostringstream os;
  os << "radius,constant,constant_over_radius\n";
  for (const auto& r : study.rows)
    os << format17(r.radius) << "," << format17(r.constant) << ","
       << format17(r.constant_over_radius) << "\n";
  return os.str();
}

std::string dilation_to_csv(const DilationStudy& study) {
  std::ostringstream os;
  os << "radius,lhs,rhs,ratio\n";
  for (const auto& r : study.rows)
    os << format17(r.radius) << "," << format17(r.lhs) << "," << format17(r.rhs) << ","
       << format17(r.ratio) << "\n";
  return os.str();
}

}  // namespace avar
