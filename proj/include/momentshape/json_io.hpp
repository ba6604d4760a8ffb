#pragma once

// JSON serialization of the table types and reports. Complex numbers are
// [re, im] arrays; matrices are row-major arrays of arrays.

#include <string>

#include <json.hpp>

#include "momentshape/domains.hpp"
#include "momentshape/exptransform.hpp"
#include "momentshape/markov1d.hpp"
#include "momentshape/real_poly.hpp"
#include "momentshape/reconstruct.hpp"

namespace momentshape {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);

Json domain_spec_to_json(const DomainSpec& spec);
DomainSpec domain_spec_from_json(const Json& j);

Json moment2d_to_json(const MomentTable2D& t);
MomentTable2D moment2d_from_json(const Json& j);

Json moment1d_to_json(const MomentTable1D& t);
MomentTable1D moment1d_from_json(const Json& j);

Json expcoeff2d_to_json(const ExpCoeffTable2D& t);
ExpCoeffTable2D expcoeff2d_from_json(const Json& j);

Json expcoeff1d_to_json(const ExpCoeffTable1D& t);
ExpCoeffTable1D expcoeff1d_from_json(const Json& j);

Json real_poly_to_json(const RealPoly& p);
RealPoly real_poly_from_json(const Json& j);

Json reconstruction_report_to_json(const ReconstructionReport& r);
Json markov1d_report_to_json(const Markov1DReport& r);

/// Writes content to path atomically (temp file in the same directory,
/// then rename).
void write_atomic(const std::string& path, const std::string& content);

/// Reads a whole file; throws std::runtime_error when missing/unreadable.
std::string read_file(const std::string& path);

}  // namespace momentshape
