#pragma once

#include <vector>

#include "avar/voxel.hpp"

namespace avar {

// Weighted quadrature point set standing in for the d-dimensional volume
// measure on a cell set or the (d-1)-dimensional surface measure on a
// hypersurface (midpoint rule in both cases).
struct DiscreteMeasure {
  enum class Kind { Volume, Surface };
  Kind kind = Kind::Volume;
  Eigen::MatrixXd points;   // one quadrature node per row
  Eigen::VectorXd weights;  // h^d or h^{d-1}
  // Entity behind each node: cell ordinal (volume) or facet position in the
  // originating hypersurface (surface).
  std::vector<int> entities;
  double total_mass = 0.0;
  std::string description;
};

DiscreteMeasure volume_measure(const VoxelDomain& domain);
DiscreteMeasure volume_measure(const VoxelDomain& domain, const std::vector<int>& cells);
DiscreteMeasure surface_measure(const VoxelDomain& domain, const Hypersurface& gamma);

}  // namespace avar
