#ifndef ORBIT_INTEGRA_SERIALIZE_HPP
#define ORBIT_INTEGRA_SERIALIZE_HPP

#include <json.hpp>

#include "orbit_integra/harness.hpp"
#include "orbit_integra/padic_geometry.hpp"

namespace orbit_integra {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

/// {"terms": [[key, "num/den"], ...]} sorted by key.
Json to_json(const LogValue& v);
LogValue log_value_from_json(const Json& j);

/// {"beta": "a/b", "n": n, "j": j}
Json to_json(const RadicalPoint& pt);
RadicalPoint radical_point_from_json(const Json& j);

/// Coefficient array, constant term first.
Json to_json(const IntPolynomial& f);
IntPolynomial polynomial_from_json(const Json& j);
Json to_json(const std::vector<IntPolynomial>& factors);

/// Sorted ["num/den", ...].
Json profile_to_json(const std::vector<Rational>& profile);
std::vector<Rational> profile_from_json(const Json& j);

Json to_json(const NewtonPolygon& poly);
Json to_json(const ProductFormulaRecord& rec);
Json to_json(const GaloisOrbitPartition& part);
Json to_json(const DegreeBoundReport& rep);
Json to_json(const LocalHeightValue& v);
/// {class, size, S, verdict, witnesses: [[p, "num/den"]], checked}
Json to_json(const SIntegralityReport& rep);
SIntegralityReport integrality_report_from_json(const Json& j);
Json to_json(const DepthRecord& rec);
Json to_json(const ClosenessRecord& rec);
Json to_json(const CensusReport& rep);
Json to_json(const SuiteReport& rep);

}  // namespace orbit_integra

#endif
