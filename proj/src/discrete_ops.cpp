#include "avar/discrete_ops.hpp"

#include <sstream>
#include <stdexcept>

namespace avar {

namespace {

void require_cell_function(const GridFunction& u, const VoxelDomain& domain, int ncomp) {
  if (u.kind != GridFunction::Kind::Cell)
    throw std::invalid_argument("expected a cell-valued grid function");
  if (u.values.rows() != domain.cell_count())
    throw std::invalid_argument("grid function does not match the domain cell count");
  if (u.ncomp != ncomp)
    throw std::invalid_argument("grid function has the wrong component count");
}

}  // namespace

Eigen::MatrixXd axis_difference(const VoxelDomain& domain, const GridFunction& u, int axis) {
  const double h = domain.spacing();
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(u.values.rows(), u.values.cols());
  for (int i = 0; i < domain.cell_count(); ++i) {
    const int p = domain.neighbor(i, axis, +1);
    const int m = domain.neighbor(i, axis, -1);
    if (p >= 0 && m >= 0) {
      diff.row(i) = (u.values.row(p) - u.values.row(m)) / (2.0 * h);
    } else if (p >= 0) {
      diff.row(i) = (u.values.row(p) - u.values.row(i)) / h;
    } else if (m >= 0) {
      diff.row(i) = (u.values.row(i) - u.values.row(m)) / h;
    }
  }
  return diff;
}

GridFunction apply_discrete(const Operator& op, const VoxelDomain& domain,
                            const GridFunction& u) {
  require_cell_function(u, domain, op.N);
  GridFunction out = GridFunction::zeros_on_cells(domain, op.k);
  for (int j = 0; j < op.d; ++j) {
    const Eigen::MatrixXd dj = axis_difference(domain, u, j);
    out.values += dj * op.matrices[j].transpose();
  }
  return out;
}

double total_A_variation(const Operator& op, const VoxelDomain& domain,
                         const GridFunction& u) {
  const GridFunction au = apply_discrete(op, domain, u);
  return domain.cell_volume() * au.values.rowwise().norm().sum();
}

GridFunction trace_restrict(const GridFunction& u, const VoxelDomain& domain,
                            const Hypersurface& gamma) {
  require_cell_function(u, domain, u.ncomp);
  GridFunction tr;
  tr.kind = GridFunction::Kind::Facet;
  tr.ncomp = u.ncomp;
  tr.values.resize(static_cast<int>(gamma.facets.size()), u.ncomp);
  for (int f = 0; f < static_cast<int>(gamma.facets.size()); ++f) {
    const Facet& facet = gamma.facets[f];
    const int cell = gamma.side == TraceSide::Inside ? facet.cell : facet.neighbor;
    if (cell < 0) {
      std::ostringstream msg;
      msg << "trace_restrict: facet " << f << " has no adjacent cell on the "
          << (gamma.side == TraceSide::Inside ? "inside" : "outside") << " side";
      throw std::invalid_argument(msg.str());
    }
    tr.values.row(f) = u.values.row(cell);
  }
  return tr;
}

ExtensionReport extend_by_zero(const Operator& op, const VoxelDomain& domain,
                               const GridFunction& u, int margin) {
  require_cell_function(u, domain, op.N);
  if (margin < 1) throw std::invalid_argument("extend_by_zero: margin >= 1");
  const int d = domain.dim();
  const double h = domain.spacing();

  // Enlarged solid box of lattice cells.
  std::vector<int> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    lo[j] = domain.cell_index(0)[j];
    hi[j] = lo[j];
  }
  for (int i = 0; i < domain.cell_count(); ++i)
    for (int j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], domain.cell_index(i)[j]);
      hi[j] = std::max(hi[j], domain.cell_index(i)[j]);
    }
  std::vector<std::vector<int>> box_cells;
  std::vector<int> idx(d);
  for (int j = 0; j < d; ++j) idx[j] = lo[j] - margin;
  for (;;) {
    box_cells.push_back(idx);
    int j = d - 1;
    while (j >= 0 && ++idx[j] > hi[j] + margin) {
      idx[j] = lo[j] - margin;
      --j;
    }
    if (j < 0) break;
  }
  std::ostringstream spec;
  spec.precision(17);
  spec << "extension(" << domain.spec() << ",margin=" << margin << ")";
  VoxelDomain ext(d, h, domain.origin(), std::move(box_cells), true, spec.str());

  GridFunction tilde = GridFunction::zeros_on_cells(ext, op.N);
  std::vector<char> inside(ext.cell_count(), 0);
  for (int i = 0; i < domain.cell_count(); ++i) {
    const int e = ext.cell_at(domain.cell_index(i));
    inside[e] = 1;
    tilde.values.row(e) = u.values.row(i);
  }

  ExtensionReport report(std::move(ext), std::move(tilde));
  const VoxelDomain& edom = report.extended_domain;
  const Eigen::MatrixXd& val = report.extended.values;

  report.interior = total_A_variation(op, domain, u);
  for (const Facet& f : domain.boundary_facets()) {
    const Eigen::VectorXd trace = u.values.row(f.cell).transpose();
    report.boundary += domain.facet_area() * tensor_apply(op, trace, f.normal).norm();
  }

  // Variation of the extension. Inside cells reuse the domain stencil; at an
  // outside cell adjacent to the domain, the one-sided difference steps
  // across the boundary and sees the jump exactly once per facet.
  const double cellvol = edom.cell_volume();
  for (int c = 0; c < edom.cell_count(); ++c) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(op.k);
    for (int j = 0; j < d; ++j) {
      const int p = edom.neighbor(c, j, +1);
      const int m = edom.neighbor(c, j, -1);
      const bool pin = p >= 0 && inside[p];
      const bool min_ = m >= 0 && inside[m];
      // Differences step only toward cells of the original domain, so inside
      // cells reproduce the domain stencil and each boundary facet's jump is
      // owned by the adjacent outside cell.
      Eigen::VectorXd dj = Eigen::VectorXd::Zero(op.N);
      if (pin && min_)
        dj = (val.row(p) - val.row(m)).transpose() / (2.0 * h);
      else if (pin)
        dj = (val.row(p) - val.row(c)).transpose() / h;
      else if (min_)
        dj = (val.row(c) - val.row(m)).transpose() / h;
      acc += op.matrices[j] * dj;
    }
    report.total += cellvol * acc.norm();
  }
  return report;
}

}  // namespace avar
