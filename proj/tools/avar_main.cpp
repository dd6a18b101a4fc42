// avar: ellipticity certificates, polynomial nullspaces, projections and
// Poincare/Sobolev constant estimation for first order constant-coefficient
// differential operators on voxelized domains.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "avar/suites.hpp"

namespace {

using avar::Json;

Json parse_json_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open file: " + arg);
    return Json::parse(in);
  }
  return Json::parse(arg);
}

avar::Operator resolve_operator(const std::string& arg) {
  if (std::filesystem::exists(arg)) return avar::operator_from_json(parse_json_arg(arg));
  if (avar::catalog_has(arg)) return avar::catalog_entry(arg).op;
  throw std::invalid_argument("operator '" + arg +
                              "' is neither a file nor a catalog name");
}

struct OutputOptions {
  std::string out_path;
  void emit(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open output file: " + out_path);
      out << text << "\n";
    }
  }
  void emit(const Json& j) const { emit(j.dump(2)); }
};

struct DomainOptions {
  std::string domain_arg;
  double h = 1.0 / 64.0;

  avar::VoxelDomain build() const {
    if (domain_arg.empty())
      throw std::invalid_argument("this command needs --domain");
    return avar::domain_from_json(parse_json_arg(domain_arg), h);
  }
};

struct ConstraintOptions {
  std::string mode = "subset";
  std::string subset_arg = "all";
  std::string omega_arg;
  std::string gamma_arg;
  std::string side = "inside";

  avar::Constraint build(const avar::VoxelDomain& domain) const {
    if (mode == "subset") {
      if (subset_arg == "all") return avar::Constraint::whole_domain(domain);
      const avar::ShapeSpec shape = avar::shape_from_json(parse_json_arg(subset_arg));
      auto cells = avar::cells_in_shape(domain, shape);
      if (cells.empty())
        throw std::invalid_argument("subset constraint: no cells inside " +
                                    shape.describe());
      return avar::Constraint::subset(std::move(cells), "subset(" + shape.describe() + ")");
    }
    if (mode != "trace")
      throw std::invalid_argument("--mode must be subset or trace");
    if (!gamma_arg.empty()) {
      if (gamma_arg == "boundary") return avar::Constraint::trace(boundary_hypersurface(domain));
      const std::map<std::string, std::pair<int, int>> named{
          {"left", {0, -1}}, {"right", {0, +1}}, {"bottom", {1, -1}}, {"top", {1, +1}}};
      auto it = named.find(gamma_arg);
      if (it == named.end())
        throw std::invalid_argument(
            "--gamma must be left, right, bottom, top or boundary");
      return avar::Constraint::trace(
          boundary_hypersurface(domain, it->second.first, it->second.second));
    }
    if (omega_arg.empty())
      throw std::invalid_argument("trace mode needs --gamma or --omega");
    // --omega is a bare shape spec or the wrapper {"omega": shape, "side": s}.
    Json spec = parse_json_arg(omega_arg);
    std::string side_name = side;
    if (spec.contains("omega")) {
      side_name = spec.value("side", side);
      spec = spec.at("omega");
    }
    const avar::ShapeSpec omega = avar::shape_from_json(spec);
    const avar::TraceSide trace_side =
        side_name == "outside" ? avar::TraceSide::Outside : avar::TraceSide::Inside;
    return avar::Constraint::trace(select_hypersurface(domain, omega, trace_side));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A-variation toolbox: ellipticity, nullspaces, Poincare and Sobolev "
               "constants on voxel domains"};
  app.require_subcommand(1);
  // --h is the grid spacing; keep only the long help flag out of its way.
  app.set_help_flag("--help", "print help");

  // Shared option state; each subcommand registers the flags it uses.
  std::string operator_arg, field = "complex", format = "json", suite_name;
  double tol = 1e-8, p = 2.0;
  int samples = 4096, refine = 3, max_degree = 8;
  std::uint64_t seed = 42;
  std::vector<double> radii{0.5, 1.0, 2.0};
  OutputOptions output;
  DomainOptions domain_opts;
  ConstraintOptions constraint_opts;

  auto add_operator = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--operator", operator_arg,
                    "operator JSON file or catalog name (gradient1d, gradient2d, "
                    "symgrad2d, symgrad3d, cauchy_riemann, dx_only, divergence2d)")
        ->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", output.out_path, "write the report to this file");
  };
  auto add_domain = [&](CLI::App* cmd) {
    cmd->add_option("--domain", domain_opts.domain_arg, "domain spec JSON file or string")
        ->required();
    cmd->add_option("--h", domain_opts.h, "grid spacing override");
  };
  auto add_constraint = [&](CLI::App* cmd) {
    cmd->add_option("--mode", constraint_opts.mode, "subset | trace");
    cmd->add_option("--subset", constraint_opts.subset_arg,
                    "subset shape spec or 'all' (subset mode)");
    cmd->add_option("--omega", constraint_opts.omega_arg,
                    "shape spec whose boundary selects Gamma (trace mode)");
    cmd->add_option("--gamma", constraint_opts.gamma_arg,
                    "named boundary piece: left|right|bottom|top|boundary (trace mode)");
    cmd->add_option("--side", constraint_opts.side,
                    "trace side relative to omega: inside | outside");
  };

  auto* cmd_ellip = app.add_subcommand("check-ellipticity",
                                       "certify R- or C-ellipticity of the symbol map");
  add_operator(cmd_ellip);
  add_output(cmd_ellip);
  cmd_ellip->add_option("--field", field, "real | complex");
  cmd_ellip->add_option("--tol", tol, "certification tolerance");
  cmd_ellip->add_option("--samples", samples, "sphere samples");
  cmd_ellip->add_option("--refine", refine, "refinement rounds");
  cmd_ellip->add_option("--seed", seed, "random seed");

  auto* cmd_cancel = app.add_subcommand("cancelling",
                                        "intersect symbol images over directions");
  add_operator(cmd_cancel);
  add_output(cmd_cancel);
  cmd_cancel->add_option("--samples", samples, "direction samples");
  cmd_cancel->add_option("--tol", tol, "subspace cutoff tolerance");
  cmd_cancel->add_option("--seed", seed, "random seed");

  auto* cmd_kernel = app.add_subcommand("kernel", "polynomial nullspace basis");
  add_operator(cmd_kernel);
  add_output(cmd_kernel);
  cmd_kernel->add_option("--max-degree", max_degree, "degree cap");

  auto* cmd_proj = app.add_subcommand(
      "projection", "L^2(mu) projection onto the nullspace over a subset or surface");
  add_operator(cmd_proj);
  add_domain(cmd_proj);
  add_constraint(cmd_proj);
  add_output(cmd_proj);
  cmd_proj->add_option("--max-degree", max_degree, "kernel degree cap");
  cmd_proj->add_option("--samples", samples, "sup/L1 constant sphere samples");
  cmd_proj->add_option("--seed", seed, "random seed");

  auto* cmd_poincare = app.add_subcommand(
      "poincare", "Poincare constant: eigenproblem for p = 2, sample-max bound for p = 1");
  add_operator(cmd_poincare);
  add_domain(cmd_poincare);
  add_constraint(cmd_poincare);
  add_output(cmd_poincare);
  cmd_poincare->add_option("--p", p, "exponent: 2 (eigenproblem) or 1 (lower bound)");
  cmd_poincare->add_option("--samples", samples, "sample count for p = 1");
  cmd_poincare->add_option("--seed", seed, "random seed");

  auto* cmd_verify = app.add_subcommand(
      "verify", "estimate the constant, then re-check it on fresh samples");
  add_operator(cmd_verify);
  add_domain(cmd_verify);
  add_constraint(cmd_verify);
  add_output(cmd_verify);
  cmd_verify->add_option("--p", p, "exponent of the estimate under verification");
  cmd_verify->add_option("--samples", samples, "fresh sample count");
  cmd_verify->add_option("--seed", seed, "random seed");

  auto* cmd_sobolev = app.add_subcommand(
      "sobolev", "trace-style Sobolev inequality ratios on a domain");
  add_operator(cmd_sobolev);
  add_domain(cmd_sobolev);
  add_output(cmd_sobolev);
  cmd_sobolev->add_option("--samples", samples, "sample count");
  cmd_sobolev->add_option("--seed", seed, "random seed");

  auto* cmd_scaling = app.add_subcommand(
      "scaling", "trace constant on balls B_r: C(r)/r table");
  add_operator(cmd_scaling);
  add_output(cmd_scaling);
  cmd_scaling->add_option("--radii", radii, "ball radii");
  cmd_scaling->add_option("--h", domain_opts.h, "spacing per unit radius");
  cmd_scaling->add_option("--seed", seed, "random seed");
  cmd_scaling->add_option("--format", format, "json | csv");

  auto* cmd_counter = app.add_subcommand(
      "counterexample", "hyperplane blow-up pair for a non-R-elliptic operator");
  add_operator(cmd_counter);
  add_domain(cmd_counter);
  add_output(cmd_counter);
  cmd_counter->add_option("--max-degree", max_degree, "kernel degree cap");

  auto* cmd_suite = app.add_subcommand("suite", "run a named acceptance battery");
  cmd_suite->set_help_flag("--help", "print help");
  cmd_suite->add_option("name", suite_name, "catalog | convergence | scaling | sobolev")
      ->required();
  cmd_suite->add_option("--seed", seed, "random seed");
  add_output(cmd_suite);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_ellip->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      if (field != "real" && field != "complex")
        throw std::invalid_argument("--field must be real or complex");
      const auto cert = avar::check_ellipticity(
          op, field == "real" ? avar::Field::Real : avar::Field::Complex, tol, samples,
          refine, seed);
      Json j = avar::certificate_to_json(cert);
      j["operator"] = op.name;
      output.emit(j);
      return 0;
    }
    if (cmd_cancel->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const auto cert = avar::check_cancelling(op, samples, tol, seed);
      Json j = avar::cancelling_to_json(cert);
      j["operator"] = op.name;
      output.emit(j);
      return 0;
    }
    if (cmd_kernel->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      output.emit(avar::kernel_to_json(avar::kernel_basis(op, max_degree)));
      return 0;
    }
    if (cmd_proj->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const avar::VoxelDomain domain = domain_opts.build();
      const avar::Constraint constraint = constraint_opts.build(domain);
      const avar::KernelBasis kernel = avar::kernel_basis(op, max_degree);
      const avar::DiscreteMeasure mu =
          constraint.mode == avar::Constraint::Mode::Subset
              ? avar::volume_measure(domain, constraint.subset_cells)
              : avar::surface_measure(domain, *constraint.gamma);
      avar::ProjectionOperator pi = avar::build_projection(kernel, mu);
      avar::estimate_linf_l1_constant(pi, samples, seed);
      output.emit(avar::projection_to_json(pi));
      return 0;
    }
    if (cmd_poincare->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const avar::VoxelDomain domain = domain_opts.build();
      const avar::Constraint constraint = constraint_opts.build(domain);
      avar::ConstantEstimate est;
      if (p == 2.0) {
        avar::PoincareOptions opts;
        opts.seed = seed;
        est = avar::poincare_constant_p2(op, domain, constraint, opts);
      } else if (p == 1.0) {
        est = avar::poincare_l1_lower_bound(op, domain, constraint, samples, seed);
      } else {
        throw std::invalid_argument("--p must be 1 or 2");
      }
      output.emit(avar::estimate_to_json(est));
      return 0;
    }
    if (cmd_verify->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const avar::VoxelDomain domain = domain_opts.build();
      const avar::Constraint constraint = constraint_opts.build(domain);
      avar::ConstantEstimate est;
      if (p == 2.0) {
        avar::PoincareOptions opts;
        opts.seed = seed;
        est = avar::poincare_constant_p2(op, domain, constraint, opts);
      } else {
        est = avar::poincare_l1_lower_bound(op, domain, constraint, samples, seed);
      }
      const auto report =
          avar::verify_inequality(op, domain, constraint, est, samples, seed + 1);
      Json j{{"estimate", avar::estimate_to_json(est)},
             {"verification", avar::verification_to_json(report)}};
      output.emit(j);
      return report.violations > 0 ? 2 : 0;
    }
    if (cmd_sobolev->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const avar::VoxelDomain domain = domain_opts.build();
      const auto report = avar::sobolev_trace_verify(op, domain, samples, seed);
      output.emit(avar::sobolev_to_json(report));
      return report.unbounded > 0 ? 2 : 0;
    }
    if (cmd_scaling->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      avar::PoincareOptions opts;
      opts.seed = seed;
      const auto study = avar::scaling_study(op, radii, domain_opts.h, opts);
      if (format == "csv")
        output.emit(avar::scaling_to_csv(study));
      else
        output.emit(avar::scaling_to_json(study));
      return study.max_relative_deviation <= 0.02 ? 0 : 2;
    }
    if (cmd_counter->parsed()) {
      const avar::Operator op = resolve_operator(operator_arg);
      const avar::VoxelDomain domain = domain_opts.build();
      const auto report = avar::counterexample_blowup(op, domain, max_degree);
      output.emit(avar::blowup_to_json(report));
      return 0;
    }
    if (cmd_suite->parsed()) {
      const auto report = avar::run_suite(suite_name, seed);
      output.emit(avar::suite_to_json(report));
      return report.passed ? 0 : 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
