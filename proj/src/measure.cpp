#include "avar/measure.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace avar {

DiscreteMeasure volume_measure(const VoxelDomain& domain) {
  std::vector<int> all(domain.cell_count());
  std::iota(all.begin(), all.end(), 0);
  return volume_measure(domain, all);
}

DiscreteMeasure volume_measure(const VoxelDomain& domain, const std::vector<int>& cells) {
  if (cells.empty()) throw std::invalid_argument("volume_measure: empty cell set");
  DiscreteMeasure mu;
  mu.kind = DiscreteMeasure::Kind::Volume;
  mu.points.resize(static_cast<int>(cells.size()), domain.dim());
  mu.weights = Eigen::VectorXd::Constant(static_cast<int>(cells.size()),
                                         domain.cell_volume());
  mu.entities = cells;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    mu.points.row(i) = domain.cell_center(cells[i]).transpose();
  mu.total_mass = mu.weights.sum();
  std::ostringstream os;
  os << "volume(" << cells.size() << " cells of " << domain.spec() << ")";
  mu.description = os.str();
  return mu;
}

DiscreteMeasure surface_measure(const VoxelDomain& domain, const Hypersurface& gamma) {
  if (gamma.facets.empty()) throw std::invalid_argument("surface_measure: empty surface");
  DiscreteMeasure mu;
  mu.kind = DiscreteMeasure::Kind::Surface;
  const int n = static_cast<int>(gamma.facets.size());
  mu.points.resize(n, domain.dim());
  mu.weights = Eigen::VectorXd::Constant(n, gamma.facet_area);
  mu.entities.resize(n);
  for (int i = 0; i < n; ++i) {
    mu.points.row(i) = gamma.facets[i].center.transpose();
    mu.entities[i] = i;
  }
  mu.total_mass = mu.weights.sum();
  mu.description = "surface(" + gamma.source + ")";
  return mu;
}

}  // namespace avar
