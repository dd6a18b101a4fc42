#include "avar/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace avar {

namespace {

std::string vector_to_string(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << "]";
  return os.str();
}

}  // namespace

bool ShapeSpec::contains(const Eigen::VectorXd& x) const {
  switch (kind) {
    case Kind::Box:
      for (int j = 0; j < x.size(); ++j)
        if (x(j) <= lo(j) || x(j) >= hi(j)) return false;
      return true;
    case Kind::Ball:
      return (x - center).norm() < radius;
    case Kind::Halfspace:
      return normal.dot(x) < offset;
    case Kind::Domain:
      throw std::logic_error("ShapeSpec::contains: Domain kind is resolved by cell membership");
  }
  return false;
}

std::string ShapeSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Box:
      os << "box(lo=" << vector_to_string(lo) << ",hi=" << vector_to_string(hi) << ")";
      break;
    case Kind::Ball:
      os << "ball(center=" << vector_to_string(center) << ",radius=" << radius << ")";
      break;
    case Kind::Halfspace:
      os << "halfspace(normal=" << vector_to_string(normal) << ",offset=" << offset << ")";
      break;
    case Kind::Domain:
      os << "domain";
      break;
  }
  return os.str();
}

ShapeSpec ShapeSpec::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  ShapeSpec s;
  s.kind = Kind::Box;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

ShapeSpec ShapeSpec::ball(Eigen::VectorXd center, double radius) {
  ShapeSpec s;
  s.kind = Kind::Ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

ShapeSpec ShapeSpec::halfspace(Eigen::VectorXd normal, double offset) {
  ShapeSpec s;
  s.kind = Kind::Halfspace;
  s.normal = std::move(normal);
  s.offset = offset;
  return s;
}

ShapeSpec ShapeSpec::whole_domain() {
  ShapeSpec s;
  s.kind = Kind::Domain;
  return s;
}

VoxelDomain::VoxelDomain(int dim, double spacing, Eigen::VectorXd origin,
                         std::vector<std::vector<int>> cells, bool require_connected,
                         std::string spec_string)
    : d_(dim), h_(spacing), origin_(std::move(origin)), cells_(std::move(cells)),
      spec_(std::move(spec_string)) {
  if (d_ < 1) throw std::invalid_argument("voxel domain: dimension >= 1");
  if (h_ <= 0) throw std::invalid_argument("voxel domain: spacing > 0");
  if (cells_.empty()) throw std::invalid_argument("voxel domain: empty cell set");
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    if (static_cast<int>(cells_[i].size()) != d_)
      throw std::invalid_argument("voxel domain: cell index dimension mismatch");
    ordinal_of_[cells_[i]] = i;
  }

  // Boundary facets: every inside/outside adjacency, in cell-major order.
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    for (int axis = 0; axis < d_; ++axis) {
      for (int s : {-1, +1}) {
        std::vector<int> nb = cells_[i];
        nb[axis] += s;
        if (ordinal_of_.count(nb)) continue;
        Facet f;
        f.cell = i;
        f.neighbor = -1;
        f.axis = axis;
        f.orientation = s;
        f.center = cell_center(i);
        f.center(axis) += 0.5 * s * h_;
        f.normal = Eigen::VectorXd::Zero(d_);
        f.normal(axis) = s;
        boundary_facets_.push_back(std::move(f));
      }
    }
  }

  // Flood fill over face neighbors.
  std::vector<char> seen(cells_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int axis = 0; axis < d_; ++axis) {
      for (int s : {-1, +1}) {
        const int nb = neighbor(c, axis, s);
        if (nb >= 0 && !seen[nb]) {
          seen[nb] = 1;
          ++visited;
          queue.push_back(nb);
        }
      }
    }
  }
  connected_ = visited == cells_.size();
  if (require_connected && !connected_)
    throw std::invalid_argument("voxel domain: cell set is not face-connected");
}

Eigen::VectorXd VoxelDomain::cell_center(int ordinal) const {
  const auto& idx = cells_.at(ordinal);
  Eigen::VectorXd x(d_);
  for (int j = 0; j < d_; ++j) x(j) = origin_(j) + (idx[j] + 0.5) * h_;
  return x;
}

int VoxelDomain::cell_at(const std::vector<int>& index) const {
  auto it = ordinal_of_.find(index);
  return it == ordinal_of_.end() ? -1 : it->second;
}

int VoxelDomain::neighbor(int ordinal, int axis, int direction) const {
  std::vector<int> nb = cells_.at(ordinal);
  nb[axis] += direction;
  return cell_at(nb);
}

double VoxelDomain::cell_volume() const { return std::pow(h_, d_); }

double VoxelDomain::facet_area() const { return std::pow(h_, d_ - 1); }

std::pair<Eigen::VectorXd, Eigen::VectorXd> VoxelDomain::bounding_box() const {
  Eigen::VectorXd lo(d_), hi(d_);
  for (int j = 0; j < d_; ++j) {
    int mn = cells_.front()[j], mx = cells_.front()[j];
    for (const auto& c : cells_) {
      mn = std::min(mn, c[j]);
      mx = std::max(mx, c[j]);
    }
    lo(j) = origin_(j) + mn * h_;
    hi(j) = origin_(j) + (mx + 1) * h_;
  }
  return {lo, hi};
}

VoxelDomain build_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double h) {
  const int d = static_cast<int>(lo.size());
  if (hi.size() != d) throw std::invalid_argument("build_box: lo/hi dimension mismatch");
  if (h <= 0) throw std::invalid_argument("build_box: h > 0");
  std::vector<int> counts(d);
  for (int j = 0; j < d; ++j) {
    if (hi(j) <= lo(j)) throw std::invalid_argument("build_box: degenerate extent");
    int n = 0;
    while (lo(j) + (n + 0.5) * h < hi(j) - 1e-9 * h) ++n;
    if (n == 0) throw std::invalid_argument("build_box: no cell centers inside the box");
    counts[j] = n;
  }
  std::vector<std::vector<int>> cells;
  std::vector<int> idx(d, 0);
  for (;;) {
    cells.push_back(idx);
    int j = d - 1;
    while (j >= 0 && ++idx[j] == counts[j]) idx[j--] = 0;
    if (j < 0) break;
  }
  std::ostringstream spec;
  spec.precision(17);
  spec << "box(lo=" << vector_to_string(lo) << ",hi=" << vector_to_string(hi)
       << ",h=" << h << ")";
  return VoxelDomain(d, h, lo, std::move(cells), true, spec.str());
}

VoxelDomain build_ball(const Eigen::VectorXd& center, double radius, double h) {
  const int d = static_cast<int>(center.size());
  if (h <= 0 || radius <= 0) throw std::invalid_argument("build_ball: h, radius > 0");
  // The origin is an integer number of cells below the center so that facet
  // planes pass through the center exactly; proportional grids over scaled
  // radii then coincide combinatorially.
  const int m = static_cast<int>(std::ceil(radius / h)) + 1;
  Eigen::VectorXd origin = center.array() - m * h;
  std::vector<std::vector<int>> cells;
  std::vector<int> idx(d, 0);
  const int count = 2 * m;
  for (;;) {
    double r2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double t = (idx[j] + 0.5 - m) * h;
      r2 += t * t;
    }
    if (r2 < radius * radius) cells.push_back(idx);
    int j = d - 1;
    while (j >= 0 && ++idx[j] == count) idx[j--] = 0;
    if (j < 0) break;
  }
  if (cells.empty()) throw std::invalid_argument("build_ball: no cell centers inside");
  std::ostringstream spec;
  spec.precision(17);
  spec << "ball(center=" << vector_to_string(center) << ",radius=" << radius
       << ",h=" << h << ")";
  return VoxelDomain(d, h, std::move(origin), std::move(cells), true, spec.str());
}

VoxelDomain build_from_mask(int dim, double h, const Eigen::VectorXd& origin,
                            std::vector<std::vector<int>> cells, bool require_connected) {
  std::ostringstream spec;
  spec.precision(17);
  spec << "mask(cells=" << cells.size() << ",h=" << h << ")";
  return VoxelDomain(dim, h, origin, std::move(cells), require_connected, spec.str());
}

VoxelDomain build_domain(const ShapeSpec& shape, double h) {
  switch (shape.kind) {
    case ShapeSpec::Kind::Box:
      return build_box(shape.lo, shape.hi, h);
    case ShapeSpec::Kind::Ball:
      return build_ball(shape.center, shape.radius, h);
    default:
      throw std::invalid_argument("build_domain: shape must be a box or a ball");
  }
}

namespace {

bool omega_contains_cell(const VoxelDomain& domain, const ShapeSpec& omega, int ordinal) {
  if (omega.kind == ShapeSpec::Kind::Domain) return true;
  return omega.contains(domain.cell_center(ordinal));
}

bool omega_contains_outside_point(const VoxelDomain& domain, const ShapeSpec& omega,
                                  const Eigen::VectorXd& x) {
  if (omega.kind == ShapeSpec::Kind::Domain) return false;  // omega == Omega
  return omega.contains(x);
}

}  // namespace

Hypersurface select_hypersurface(const VoxelDomain& domain, const ShapeSpec& omega,
                                 TraceSide side) {
  Hypersurface gamma;
  gamma.side = side;
  gamma.source = omega.describe();
  gamma.facet_area = domain.facet_area();
  const int d = domain.dim();
  for (int i = 0; i < domain.cell_count(); ++i) {
    if (!omega_contains_cell(domain, omega, i)) continue;
    for (int axis = 0; axis < d; ++axis) {
      for (int s : {-1, +1}) {
        const int nb = domain.neighbor(i, axis, s);
        bool nb_in_omega;
        if (nb >= 0) {
          nb_in_omega = omega_contains_cell(domain, omega, nb);
        } else {
          Eigen::VectorXd x = domain.cell_center(i);
          x(axis) += s * domain.spacing();
          nb_in_omega = omega_contains_outside_point(domain, omega, x);
        }
        if (nb_in_omega) continue;
        Facet f;
        f.cell = i;
        f.neighbor = nb;
        f.axis = axis;
        f.orientation = s;
        f.center = domain.cell_center(i);
        f.center(axis) += 0.5 * s * domain.spacing();
        f.normal = Eigen::VectorXd::Zero(d);
        f.normal(axis) = s;
        gamma.facets.push_back(std::move(f));
      }
    }
  }
  if (gamma.facets.empty())
    throw std::invalid_argument(
        "select_hypersurface: the boundary of omega does not meet the domain");
  return gamma;
}

Hypersurface boundary_hypersurface(const VoxelDomain& domain, int axis, int orientation) {
  Hypersurface gamma;
  gamma.side = TraceSide::Inside;
  gamma.facet_area = domain.facet_area();
  std::ostringstream src;
  if (axis < 0)
    src << "boundary";
  else
    src << "boundary(axis=" << axis << ",orientation=" << orientation << ")";
  gamma.source = src.str();
  for (const Facet& f : domain.boundary_facets()) {
    if (axis >= 0 && (f.axis != axis || f.orientation != orientation)) continue;
    gamma.facets.push_back(f);
  }
  if (gamma.facets.empty())
    throw std::invalid_argument("boundary_hypersurface: no facets matched");
  return gamma;
}

GridFunction GridFunction::zeros_on_cells(const VoxelDomain& domain, int ncomp) {
  GridFunction u;
  u.kind = Kind::Cell;
  u.ncomp = ncomp;
  u.values = Eigen::MatrixXd::Zero(domain.cell_count(), ncomp);
  return u;
}

GridFunction sample_on_cells(
    const VoxelDomain& domain, int ncomp,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f) {
  GridFunction u = GridFunction::zeros_on_cells(domain, ncomp);
  for (int i = 0; i < domain.cell_count(); ++i) {
    const Eigen::VectorXd v = f(domain.cell_center(i));
    if (v.size() != ncomp)
      throw std::invalid_argument("sample_on_cells: sampler has wrong component count");
    u.values.row(i) = v.transpose();
  }
  return u;
}

std::vector<int> cells_in_shape(const VoxelDomain& domain, const ShapeSpec& shape) {
  std::vector<int> cells;
  for (int i = 0; i < domain.cell_count(); ++i) {
    if (shape.kind == ShapeSpec::Kind::Domain || shape.contains(domain.cell_center(i)))
      cells.push_back(i);
  }
  return cells;
}

}  // namespace avar
