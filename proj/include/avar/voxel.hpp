#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace avar {

// Axis-aligned shape used for domain construction and for the auxiliary set
// omega that selects a hypersurface. Halfspace means { x : <normal, x> < offset }.
struct ShapeSpec {
  enum class Kind { Box, Ball, Halfspace, Domain };
  Kind kind = Kind::Box;
  Eigen::VectorXd lo, hi;      // Box
  Eigen::VectorXd center;      // Ball
  double radius = 0.0;         // Ball
  Eigen::VectorXd normal;      // Halfspace
  double offset = 0.0;         // Halfspace
  bool contains(const Eigen::VectorXd& x) const;  // not defined for Domain
  std::string describe() const;

  static ShapeSpec box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  static ShapeSpec ball(Eigen::VectorXd center, double radius);
  static ShapeSpec halfspace(Eigen::VectorXd normal, double offset);
  static ShapeSpec whole_domain();
};

// One face between a cell and its axis neighbor. The stored normal is
// orientation * e_axis; `cell` is the ordinal of the owning cell and
// `neighbor` the ordinal across the face (-1 when outside the domain).
struct Facet {
  int cell = -1;
  int neighbor = -1;
  int axis = 0;
  int orientation = 1;
  Eigen::VectorXd center;
  Eigen::VectorXd normal;
};

// Cell-center discretization of an open set: the cells are integer lattice
// indices whose centers lie strictly inside the shape, all sharing spacing h
// and a common origin (lattice point zero corner).
class VoxelDomain {
 public:
  VoxelDomain(int dim, double spacing, Eigen::VectorXd origin,
              std::vector<std::vector<int>> cells, bool require_connected,
              std::string spec_string);

  int dim() const { return d_; }
  double spacing() const { return h_; }
  const Eigen::VectorXd& origin() const { return origin_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<int>& cell_index(int ordinal) const { return cells_[ordinal]; }
  Eigen::VectorXd cell_center(int ordinal) const;
  // Ordinal of the cell with the given lattice index, -1 if absent.
  int cell_at(const std::vector<int>& index) const;
  // Ordinal of the axis neighbor, -1 if absent.
  int neighbor(int ordinal, int axis, int direction) const;
  const std::vector<Facet>& boundary_facets() const { return boundary_facets_; }
  bool connected() const { return connected_; }
  double cell_volume() const;
  double facet_area() const;
  double volume() const { return cell_count() * cell_volume(); }
  double boundary_area() const { return boundary_facets_.size() * facet_area(); }
  // Outer hull of the cells (cell boxes, not centers).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box() const;
  const std::string& spec() const { return spec_; }

 private:
  int d_;
  double h_;
  Eigen::VectorXd origin_;
  std::vector<std::vector<int>> cells_;
  std::map<std::vector<int>, int> ordinal_of_;
  std::vector<Facet> boundary_facets_;
  bool connected_ = false;
  std::string spec_;
};

VoxelDomain build_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double h);
VoxelDomain build_ball(const Eigen::VectorXd& center, double radius, double h);
VoxelDomain build_from_mask(int dim, double h, const Eigen::VectorXd& origin,
                            std::vector<std::vector<int>> cells,
                            bool require_connected = true);
VoxelDomain build_domain(const ShapeSpec& shape, double h);

// Which side of the selecting set omega a trace is taken from.
enum class TraceSide { Inside, Outside };

// A selected hypersurface: voxel facets of the boundary of omega lying in
// the closure of the domain. facet.cell is the domain cell on the omega
// side, facet.neighbor the cell across (possibly -1 on the domain boundary).
struct Hypersurface {
  std::vector<Facet> facets;
  TraceSide side = TraceSide::Inside;
  std::string source;
  double facet_area = 0.0;
  double area() const { return facets.size() * facet_area; }
};

Hypersurface select_hypersurface(const VoxelDomain& domain, const ShapeSpec& omega,
                                 TraceSide side = TraceSide::Inside);

// Subset of the domain boundary with the given outward normal
// (axis/orientation), or the whole boundary when axis < 0.
Hypersurface boundary_hypersurface(const VoxelDomain& domain, int axis = -1,
                                   int orientation = 0);

// Values attached to cells or to the facets of one hypersurface.
struct GridFunction {
  enum class Kind { Cell, Facet };
  Kind kind = Kind::Cell;
  int ncomp = 0;
  Eigen::MatrixXd values;  // one row per entity

  static GridFunction zeros_on_cells(const VoxelDomain& domain, int ncomp);
};

GridFunction sample_on_cells(
    const VoxelDomain& domain, int ncomp,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f);

// Cells of the domain whose centers lie inside the shape.
std::vector<int> cells_in_shape(const VoxelDomain& domain, const ShapeSpec& shape);

}  // namespace avar
