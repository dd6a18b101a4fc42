#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "avar/catalog.hpp"
#include "avar/discrete_ops.hpp"
#include "avar/ellipticity.hpp"
#include "avar/inequalities.hpp"
#include "avar/kernel.hpp"
#include "avar/projection.hpp"

namespace avar {

// Deterministic field order everywhere; reports must be byte-stable.
using Json = nlohmann::ordered_json;

Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

// Wire format uses 1-based component indices.
Json polynomial_to_json(const PolynomialVectorField& p);
PolynomialVectorField polynomial_from_json(const Json& j);

Json certificate_to_json(const EllipticityCertificate& cert);
Json cancelling_to_json(const CancellingCertificate& cert);
Json kernel_to_json(const KernelBasis& basis);
Json projection_to_json(const ProjectionOperator& pi);
Json estimate_to_json(const ConstantEstimate& est);
Json verification_to_json(const VerificationReport& report);
Json sobolev_to_json(const SobolevReport& report);
Json dilation_to_json(const DilationStudy& study);
Json scaling_to_json(const ScalingStudy& study);
Json blowup_to_json(const BlowupReport& report);
Json extension_to_json(const ExtensionReport& report);

// Domain / shape specs:
//   {"shape":"box","lo":[...],"hi":[...]}
//   {"shape":"ball","center":[...],"radius":r}
//   {"shape":"halfspace","normal":[...],"offset":c}   (the side <n,x> < c)
//   {"shape":"domain"}                                 (omega = the domain)
//   {"shape":"mask","d":n,"origin":[...],"cells":[[...],...]}
// A domain spec additionally carries "h".
ShapeSpec shape_from_json(const Json& j);
VoxelDomain domain_from_json(const Json& j, double h_override = 0.0);

// Flat little-endian binary format for sampled functions:
// magic "AVGF", u32 version, u32 kind (0 cell / 1 facet), u32 ncomp,
// u64 count, then count*ncomp float64 values, row-major.
void write_grid_function(std::ostream& out, const GridFunction& u);
GridFunction read_grid_function(std::istream& in);
void write_grid_function_file(const std::string& path, const GridFunction& u);
GridFunction read_grid_function_file(const std::string& path);

// Scaling/ dilation tables as CSV (17 significant digits).
std::string scaling_to_csv(const ScalingStudy& study);
std::string dilation_to_csv(const DilationStudy& study);

}  // namespace avar
