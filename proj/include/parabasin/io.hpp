#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "parabasin/kobayashi.hpp"
#include "parabasin/parabolic.hpp"
#include "parabasin/petals.hpp"
#include "parabasin/raster.hpp"
#include "parabasin/verifier.hpp"

namespace parabasin::io {

using Json = nlohmann::ordered_json;

/// "re", "re,im", "a+bi", "bi" forms.
Complex parse_complex(std::string_view text);

/// Comma-separated ascending coefficients, e.g. "0,1,0,1". Each token is a
/// real or an "a+bi" / "bi" literal.
std::vector<Complex> parse_coefficients(std::string_view text);

/// Integral values print without a fractional part.
Json number(double x);
Json complex_json(Complex z);

Json to_json(const ParabolicMap& f);
Json to_json(const PacManConstruction& construction);
Json to_json(const DistanceBound& bound);
Json to_json(const ModelDomain& domain);
Json to_json(const TheoremParams& params);
Json to_json(const TheoremCertificate& cert);
Json to_json(const ClosureReport& report);
Json to_json(const Prop3Report& report);
Json to_json(const InvarianceReport& report);

/// re,im,k,l,residual with 17 significant digits.
void write_csv(std::ostream& out, const QEnumeration& q);
void write_bounds_csv(std::ostream& out, const TheoremCertificate& cert);
void write_table(std::ostream& out, const TheoremCertificate& cert);

}  // namespace parabasin::io
