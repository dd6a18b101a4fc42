#include "avar/suites.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avar {

namespace {

void add(SuiteReport& report, std::string name, bool passed, Json measured) {
  report.criteria.push_back({std::move(name), passed, std::move(measured)});
}

SuiteReport catalog_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "catalog";
  report.seed = seed;

  for (const CatalogEntry& entry : catalog()) {
    const auto real = check_ellipticity(entry.op, Field::Real, 1e-8, 4096, 3, seed);
    const auto cplx = check_ellipticity(entry.op, Field::Complex, 1e-8, 4096, 3, seed);
    bool ok = real.elliptic == entry.real_elliptic && cplx.elliptic == entry.complex_elliptic;
    Json measured{{"real_verdict", real.elliptic},
                  {"complex_verdict", cplx.elliptic},
                  {"real_min_singular", real.min_singular},
                  {"complex_min_singular", cplx.min_singular}};

    // Witness soundness by re-evaluation.
    for (const auto* cert : {&real, &cplx}) {
      if (cert->witness) {
        const double res =
            (symbol(entry.op, cert->witness->xi) * cert->witness->v).norm();
        ok = ok && res <= cert->tolerance;
        measured[cert->field == Field::Real ? "real_witness_residual"
                                            : "complex_witness_residual"] = res;
      }
    }

    if (entry.name == "cauchy_riemann" && cplx.witness) {
      // Witness direction must align with (1, i) up to a complex scalar.
      Eigen::VectorXcd target(2);
      target << 1.0, std::complex<double>(0.0, 1.0);
      target /= target.norm();
      const std::complex<double> phase = target.dot(cplx.witness->xi);
      const double mismatch = (cplx.witness->xi - phase * target).norm();
      measured["witness_distance_to_(1,i)"] = mismatch;
      ok = ok && mismatch <= 1e-5;
    }

    if (entry.kernel_dimension) {
      const KernelBasis basis = kernel_basis(entry.op, 8);
      double worst = 0.0;
      for (const auto& e : basis.elements)
        worst = std::max(worst,
                         apply_operator_to_polynomial(entry.op, e).coefficient_norm());
      measured["kernel_dimension"] = basis.dimension();
      measured["kernel_stabilized"] = basis.stabilized;
      measured["kernel_degree_reached"] = basis.degree_reached;
      measured["kernel_annihilation"] = worst;
      ok = ok && basis.dimension() == *entry.kernel_dimension && basis.stabilized &&
           basis.degree_reached <= 3 && worst <= 1e-10;
    }

    if (entry.cancelling) {
      const auto cc = check_cancelling(entry.op, 256, 1e-8, seed);
      measured["cancelling"] = cc.cancelling;
      measured["residual_dim"] = cc.residual_dim;
      ok = ok && cc.cancelling == *entry.cancelling;
    } else if (entry.cancelling.has_value()) {
      const auto cc = check_cancelling(entry.op, 256, 1e-8, seed);
      measured["cancelling"] = cc.cancelling;
      measured["residual_dim"] = cc.residual_dim;
      ok = ok && !cc.cancelling;
    }

    add(report, "catalog:" + entry.name, ok, std::move(measured));
  }

  report.passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                              [](const CriterionResult& c) { return c.passed; });
  return report;
}

struct ConvergenceCase {
  std::string name;
  Operator op;
  ShapeSpec domain_shape;
  bool trace = false;  // trace on the left boundary vs E = Omega
  double exact = 0.0;
  double h = 0.0;
};

SuiteReport convergence_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "convergence";
  report.seed = seed;

  Eigen::VectorXd lo1(1), hi1(1), lo2(2), hi2(2);
  lo1 << 0.0;
  hi1 << 1.0;
  lo2 << 0.0, 0.0;
  hi2 << 1.0, 1.0;

  std::vector<ConvergenceCase> cases;
  cases.push_back({"poincare_p2:gradient1d:interval:E=Omega", make_gradient(1),
                   ShapeSpec::box(lo1, hi1), false, 1.0 / M_PI, std::pow(2.0, -7)});
  cases.push_back({"poincare_p2:gradient1d:interval:trace-left", make_gradient(1),
                   ShapeSpec::box(lo1, hi1), true, 2.0 / M_PI, std::pow(2.0, -7)});
  cases.push_back({"poincare_p2:gradient2d:square:E=Omega", make_gradient(2),
                   ShapeSpec::box(lo2, hi2), false, 1.0 / M_PI, std::pow(2.0, -7)});

  for (const auto& c : cases) {
    PoincareOptions opts;
    opts.seed = seed;
    auto constant_at = [&](double h) {
      const VoxelDomain domain = build_domain(c.domain_shape, h);
      const Constraint constraint =
          c.trace ? Constraint::trace(boundary_hypersurface(domain, 0, -1))
                  : Constraint::whole_domain(domain);
      return poincare_constant_p2(c.op, domain, constraint, opts);
    };
    const ConstantEstimate coarse = constant_at(c.h);
    const ConstantEstimate fine = constant_at(c.h / 2.0);
    const double err_coarse = std::abs(coarse.value - c.exact) / c.exact;
    const double err_fine = std::abs(fine.value - c.exact) / c.exact;
    const bool ok = err_coarse <= 0.01 && err_fine < err_coarse &&
                    coarse.residual.value_or(1.0) <= 1e-8 &&
                    fine.residual.value_or(1.0) <= 1e-8;
    add(report, c.name, ok,
        Json{{"h", c.h},
             {"value", coarse.value},
             {"exact", c.exact},
             {"relative_error", err_coarse},
             {"value_half_h", fine.value},
             {"relative_error_half_h", err_fine},
             {"eigenvalue", coarse.eigenvalue.value_or(0.0)},
             {"residual", coarse.residual.value_or(0.0)}});
  }

  report.passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                              [](const CriterionResult& c) { return c.passed; });
  return report;
}

SuiteReport scaling_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "scaling";
  report.seed = seed;

  const std::vector<double> radii{0.5, 1.0, 2.0};
  for (const std::string name : {"gradient2d", "symgrad2d"}) {
    PoincareOptions opts;
    opts.seed = seed;
    const ScalingStudy study =
        scaling_study(catalog_entry(name).op, radii, 1.0 / 48.0, opts);
    const bool ok = study.max_relative_deviation <= 0.02;
    add(report, "scaling:" + name, ok, scaling_to_json(study));
  }

  report.passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                              [](const CriterionResult& c) { return c.passed; });
  return report;
}

SuiteReport sobolev_suite(std::uint64_t seed) {
  SuiteReport report;
  report.suite = "sobolev";
  report.seed = seed;

  Eigen::VectorXd center = Eigen::VectorXd::Zero(2);
  for (const std::string name : {"gradient2d", "symgrad2d"}) {
    const Operator& op = catalog_entry(name).op;
    const VoxelDomain disk = build_ball(center, 1.0, 1.0 / 64.0);
    const SobolevReport sr = sobolev_trace_verify(op, disk, 100, seed);
    add(report, "sobolev_ratios:" + name, sr.unbounded == 0 && sr.max_ratio > 0,
        sobolev_to_json(sr));

    const DilationStudy ds = sobolev_dilation_study(op, {0.5, 1.0, 2.0}, 1.0 / 128.0);
    add(report, "sobolev_dilation:" + name, ds.max_relative_deviation <= 0.02,
        dilation_to_json(ds));
  }

  // Cancelling: holds for the 2d catalog ops, fails for every d = 1 operator.
  for (const std::string name : {"gradient2d", "symgrad2d"}) {
    const auto cc = check_cancelling(catalog_entry(name).op, 256, 1e-8, seed);
    add(report, "cancelling:" + name, cc.cancelling, cancelling_to_json(cc));
  }
  {
    const auto cc = check_cancelling(catalog_entry("gradient1d").op, 256, 1e-8, seed);
    add(report, "cancelling:gradient1d", !cc.cancelling, cancelling_to_json(cc));
  }
  {
    // A second d = 1 operator: injective into R^2.
    Eigen::MatrixXd a(2, 1);
    a << 1.0, 1.0;
    const auto cc = check_cancelling(Operator({a}, "embed1d"), 256, 1e-8, seed);
    add(report, "cancelling:embed1d", !cc.cancelling, cancelling_to_json(cc));
  }
  {
    const auto cc = check_cancelling(catalog_entry("cauchy_riemann").op, 256, 1e-8, seed);
    add(report, "cancelling:cauchy_riemann", !cc.cancelling, cancelling_to_json(cc));
  }

  report.passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                              [](const CriterionResult& c) { return c.passed; });
  return report;
}

}  // namespace

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "catalog") return catalog_suite(seed);
  if (name == "convergence") return convergence_suite(seed);
  if (name == "scaling") return scaling_suite(seed);
  if (name == "sobolev") return sobolev_suite(seed);
  throw std::invalid_argument(
      "unknown suite '" + name + "' (expected catalog, convergence, scaling or sobolev)");
}

Json suite_to_json(const SuiteReport& report) {
  Json rows = Json::array();
  for (const auto& c : report.criteria)
    rows.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}});
  return Json{{"suite", report.suite},
              {"seed", report.seed},
              {"passed", report.passed},
              {"criteria", rows}};
}

}  // namespace avar
