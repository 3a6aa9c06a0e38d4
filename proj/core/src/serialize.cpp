#include "orbit_integra/serialize.hpp"

#include <algorithm>

#include "orbit_integra/errors.hpp"

namespace orbit_integra {

namespace {

Json group_to_json(const PrimeGroup& g)
{
    return g.prime ? integer_to_json(g.modulus) : Json("composite:" + g.modulus.get_str());
}

PrimeGroup group_from_json(const Json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.rfind("composite:", 0) == 0) return {Integer(s.substr(10)), false};
    }
    return {integer_from_json(j), true};
}

Json places_to_json(const std::vector<Place>& S)
{
    Json out = Json::array();
    for (const auto& v : S) out.push_back(v.to_string());
    return out;
}

std::string real_text(const Real& x) { return x.to_string(30); }

}  // namespace

Json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p()) return Json(x.get_si());
    if (x > 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64) {
        return Json(static_cast<std::uint64_t>(std::stoull(x.get_str())));
    }
    return Json(x.get_str());
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                                             : Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0) raise(ErrorKind::Input, "not an integer: " + j.dump());
        return x;
    }
    raise(ErrorKind::Input, "not an integer: " + j.dump());
}

Json to_json(const LogValue& v)
{
    Json terms = Json::array();
    for (const auto& [key, coeff] : v.terms()) terms.push_back(Json::array({integer_to_json(key), format_rational(coeff)}));
    return Json{{"terms", terms}};
}

LogValue log_value_from_json(const Json& j)
{
    LogValue out;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) raise(ErrorKind::Input, "LogValue term must be [key, \"num/den\"]");
        out += LogValue::log_of(integer_from_json(t[0]), parse_rational(t[1].get<std::string>()));
    }
    return out;
}

Json to_json(const RadicalPoint& pt) { return Json{{"beta", format_rational(pt.beta)}, {"n", pt.n}, {"j", pt.j}}; }

RadicalPoint radical_point_from_json(const Json& j)
{
    RadicalPoint pt{parse_rational(j.at("beta").get<std::string>()), j.at("n").get<std::uint64_t>(),
                    j.at("j").get<std::uint64_t>()};
    if (pt.n == 0 || pt.j >= pt.n) raise(ErrorKind::Input, "radical point index out of range");
    return pt;
}

Json to_json(const IntPolynomial& f)
{
    Json out = Json::array();
    for (const auto& c : f.coeffs()) out.push_back(integer_to_json(c));
    return out;
}

IntPolynomial polynomial_from_json(const Json& j)
{
    std::vector<Integer> c;
    for (const auto& x : j) c.push_back(integer_from_json(x));
    return IntPolynomial(std::move(c));
}

Json to_json(const std::vector<IntPolynomial>& factors)
{
    Json out = Json::array();
    for (const auto& f : factors) out.push_back(to_json(f));
    return out;
}

Json profile_to_json(const std::vector<Rational>& profile)
{
    std::vector<Rational> sorted = profile;
    std::sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return a > b; });
    Json out = Json::array();
    for (const auto& v : sorted) out.push_back(format_rational(v));
    return out;
}

std::vector<Rational> profile_from_json(const Json& j)
{
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(parse_rational(x.get<std::string>()));
    return out;
}

Json to_json(const NewtonPolygon& poly)
{
    Json vertices = Json::array(), segments = Json::array();
    for (const auto& [k, v] : poly.vertices) vertices.push_back(Json::array({k, v}));
    for (const auto& s : poly.segments)
        segments.push_back(Json::array({format_rational(s.root_valuation), s.multiplicity}));
    return Json{{"prime", integer_to_json(poly.prime)}, {"vertices", vertices}, {"segments", segments}};
}

Json to_json(const ProductFormulaRecord& rec)
{
    Json contributions = Json::array();
    for (const auto& c : rec.contributions)
        contributions.push_back(Json{{"place", c.label()}, {"value", to_json(c.value)}});
    return Json{{"x", format_rational(rec.x)},
                {"contributions", contributions},
                {"sum", to_json(rec.sum)},
                {"holds", rec.holds}};
}

Json to_json(const GaloisOrbitPartition& part)
{
    Json classes = Json::array();
    for (const auto& c : part.classes)
        classes.push_back(Json{{"factor", to_json(c.factor)}, {"size", c.size()}, {"indices", c.indices}});
    return Json{{"beta", format_rational(part.beta)},
                {"d", part.d},
                {"depth", part.depth},
                {"n", part.n},
                {"sizes", part.sizes()},
                {"classes", classes}};
}

Json to_json(const DegreeBoundReport& rep)
{
    return Json{{"beta", format_rational(rep.beta)},
                {"n", rep.n},
                {"min_orbit_size", rep.min_orbit_size},
                {"sqrt_threshold", rep.sqrt_threshold},
                {"satisfied", rep.satisfied},
                {"half_totient", rep.half_totient},
                {"primitive_phase_violations", rep.primitive_phase_violations}};
}

Json to_json(const LocalHeightValue& v)
{
    Json out{{"place", v.place.to_string()}, {"exact", v.exact}, {"precision", v.precision},
             {"derivation", v.derivation}};
    out["value"] = v.exact ? to_json(v.value) : Json(real_text(v.numeric));
    out["numeric"] = v.numeric.to_double();
    return out;
}

Json to_json(const SIntegralityReport& rep)
{
    Json witnesses = Json::array(), checked = Json::array();
    for (const auto& w : rep.witnesses) witnesses.push_back(Json::array({group_to_json(w.group), format_rational(w.valuation)}));
    for (const auto& g : rep.checked) checked.push_back(group_to_json(g));
    return Json{{"class", rep.class_index}, {"size", rep.class_size}, {"S", places_to_json(rep.S)},
                {"verdict", rep.verdict},   {"witnesses", witnesses},  {"checked", checked}};
}

SIntegralityReport integrality_report_from_json(const Json& j)
{
    SIntegralityReport rep;
    rep.class_index = j.at("class").get<std::size_t>();
    rep.class_size = j.value("size", std::size_t(0));
    for (const auto& v : j.at("S")) rep.S.push_back(Place::parse(v.get<std::string>()));
    rep.verdict = j.at("verdict").get<bool>();
    for (const auto& w : j.at("witnesses"))
        rep.witnesses.push_back({group_from_json(w.at(0)), parse_rational(w.at(1).get<std::string>())});
    if (j.contains("checked"))
        for (const auto& g : j.at("checked")) rep.checked.push_back(group_from_json(g));
    return rep;
}

Json to_json(const DepthRecord& rec)
{
    Json places = Json::array();
    for (const auto& t : rec.places)
        places.push_back(Json{{"place", t.place.label()},
                              {"lambda_sum", to_json(t.lambda_sum)},
                              {"log_resultant", to_json(t.log_resultant)}});
    Json out{{"depth", rec.depth},
             {"n", rec.n},
             {"mean_lambda", to_json(rec.mean_lambda)},
             {"expected", to_json(rec.expected)},
             {"identity_holds", rec.identity_holds},
             {"resultant_vanishes", rec.resultant_vanishes},
             {"mean_numeric", rec.mean_numeric},
             {"archimedean_exact", rec.archimedean_exact},
             {"archimedean_direct", rec.archimedean_direct},
             {"discrepancy", rec.discrepancy},
             {"places", places}};
    if (!rec.orbit_sizes.empty()) out["orbit_sizes"] = rec.orbit_sizes;
    return out;
}

Json to_json(const ClosenessRecord& rec)
{
    return Json{{"depth", rec.depth},
                {"n", rec.n},
                {"max_log_inv_distance", rec.max_log_inv_distance},
                {"closest_index", rec.closest_index},
                {"h_alpha", rec.h_alpha},
                {"h_s", rec.h_s},
                {"field_degree", rec.field_degree},
                {"scale", rec.scale},
                {"ratio", rec.ratio}};
}

Json to_json(const CensusReport& rep)
{
    Json depths = Json::array();
    for (const auto& d : rep.depths) {
        Json classes = Json::array();
        for (const auto& c : d.classes) classes.push_back(to_json(c));
        depths.push_back(Json{{"depth", d.depth}, {"n", d.n}, {"classes", classes}});
    }
    return Json{{"alpha", format_rational(rep.alpha)},
                {"beta", format_rational(rep.beta)},
                {"d", rep.d},
                {"S", places_to_json(rep.S)},
                {"max_depth", rep.max_depth},
                {"large_class_threshold", rep.large_class_threshold},
                {"max_integral_size", rep.max_integral_size},
                {"max_integral_depth", rep.max_integral_depth},
                {"exceptional_count", rep.exceptional_count},
                {"s_fin", rep.s_fin},
                {"last_integral_depth", rep.last_integral_depth},
                {"stabilization_depth", rep.stabilization_depth},
                {"early_window", rep.early_window},
                {"early_max_size", rep.early_max_size},
                {"integral_above_early_max", rep.integral_above_early_max},
                {"depths", depths}};
}

Json to_json(const SuiteReport& rep)
{
    Json cells = Json::array();
    for (const auto& c : rep.cells) {
        Json rows = Json::array();
        for (const auto& r : c.rows)
            rows.push_back(Json{{"depth", r.depth}, {"n", r.n}, {"place", r.place}, {"lhs", r.lhs}, {"rhs", r.rhs},
                                {"pass", r.pass}});
        cells.push_back(Json{{"index", c.index},
                             {"kind", c.kind},
                             {"label", c.label},
                             {"pass", c.pass},
                             {"implied", c.implied},
                             {"message", c.message},
                             {"rows", rows}});
    }
    return Json{{"all_pass", rep.all_pass}, {"cells", cells}};
}

}  // namespace orbit_integra
