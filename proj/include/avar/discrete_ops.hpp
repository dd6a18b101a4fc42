#pragma once

#include "avar/operator.hpp"
#include "avar/voxel.hpp"

namespace avar {

// Difference quotients along one axis: central where both neighbors exist,
// one-sided at the discrete boundary, zero for isolated cells. Exact on
// affine data everywhere.
Eigen::MatrixXd axis_difference(const VoxelDomain& domain, const GridFunction& u, int axis);

// Discrete action of the operator on a cell function: sum_j A_j D_j u.
GridFunction apply_discrete(const Operator& op, const VoxelDomain& domain,
                            const GridFunction& u);

// sum over cells of h^d |(A_h u)(x)|_2, a quadrature for the total variation
// of A u when u is discretely smooth.
double total_A_variation(const Operator& op, const VoxelDomain& domain,
                         const GridFunction& u);

// Piecewise-constant trace: the value of the adjacent cell on the declared
// side of the hypersurface.
GridFunction trace_restrict(const GridFunction& u, const VoxelDomain& domain,
                            const Hypersurface& gamma);

// Extension by zero and the decomposition of the variation of the extension
// into an interior part and a boundary part. With the one-sided crossing
// stencil the identity total = interior + boundary is exact on axis-aligned
// boxes and approximate on staircase boundaries.
struct ExtensionReport {
  double interior = 0.0;  // variation of u over the domain
  double boundary = 0.0;  // sum of facet areas times |trace tensored with the normal|
  double total = 0.0;     // variation of the zero-extension over the enlarged box
  VoxelDomain extended_domain;
  GridFunction extended;  // u inside, zero outside

  ExtensionReport(VoxelDomain dom, GridFunction fn)
      : extended_domain(std::move(dom)), extended(std::move(fn)) {}
};

ExtensionReport extend_by_zero(const Operator& op, const VoxelDomain& domain,
                               const GridFunction& u, int margin = 2);

}  // namespace avar
