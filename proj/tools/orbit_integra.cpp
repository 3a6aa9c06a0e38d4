#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbit_integra/binomial_galois.hpp"
#include "orbit_integra/errors.hpp"
#include "orbit_integra/harness.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "orbit_integra/serialize.hpp"
#include "svg.hpp"

using namespace orbit_integra;

namespace {

// One CSV row: depth,n,class_index,class_size,place,value
struct Row {
    std::string depth, n, class_index, class_size, place, value;
};

struct Output {
    Json json;
    std::vector<Row> rows;
    std::vector<std::string> notes;  // table-mode summary lines
};

struct Globals {
    std::string format = "table";
    std::string output;
    long precision = kDefaultPrecision;
};

std::string str(std::uint64_t x) { return std::to_string(x); }

std::string real_str(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void render(const Output& out, const Globals& g)
{
    std::ostringstream s;
    if (g.format == "json") {
        s << out.json.dump(2) << "\n";
    } else if (g.format == "csv") {
        s << "depth,n,class_index,class_size,place,value\n";
        for (const Row& r : out.rows)
            s << csv_escape(r.depth) << ',' << csv_escape(r.n) << ',' << csv_escape(r.class_index) << ','
              << csv_escape(r.class_size) << ',' << csv_escape(r.place) << ',' << csv_escape(r.value) << "\n";
    } else {
        for (const auto& note : out.notes) s << note << "\n";
        const std::vector<std::string> head{"depth", "n", "class", "size", "place", "value"};
        std::vector<std::size_t> width(6);
        for (std::size_t k = 0; k < 6; ++k) width[k] = head[k].size();
        auto cells = [](const Row& r) {
            return std::vector<std::string>{r.depth, r.n, r.class_index, r.class_size, r.place, r.value};
        };
        for (const Row& r : out.rows) {
            const auto c = cells(r);
            for (std::size_t k = 0; k < 6; ++k) width[k] = std::max(width[k], c[k].size());
        }
        auto line = [&](const std::vector<std::string>& c) {
            for (std::size_t k = 0; k < 6; ++k) {
                s << c[k];
                if (k + 1 < 6) s << std::string(width[k] - c[k].size() + 2, ' ');
            }
            s << "\n";
        };
        if (!out.rows.empty()) {
            line(head);
            for (const Row& r : out.rows) line(cells(r));
        }
    }
    if (g.output.empty()) {
        std::cout << s.str();
    } else {
        std::ofstream f(g.output);
        if (!f) raise(ErrorKind::Input, "cannot write '" + g.output + "'");
        f << s.str();
    }
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path);
    if (!f) raise(ErrorKind::Input, "cannot write '" + path + "'");
    f << content;
}

std::vector<Place> parse_s(const std::string& text)
{
    std::vector<Place> S{Place::infinity()};
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const Place v = Place::parse(tok);
        if (v.is_finite()) S.push_back(v);
    }
    return S;
}

std::string witness_text(const SIntegralityReport& r)
{
    if (r.verdict) return "integral";
    std::string s = "not integral:";
    for (const auto& w : r.witnesses) s += " " + w.group.to_string() + "^" + w.valuation.get_str();
    return s;
}

// --- subcommands -------------------------------------------------------------

struct OrbitArgs {
    std::string beta;
    unsigned d = 2, depth = 1;
    std::string svg;
};

Output cmd_orbit(const OrbitArgs& a, const Globals& g)
{
    const OrbitLevel level = preimages(parse_rational(a.beta), a.d, a.depth);
    const GaloisOrbitPartition part = galois_orbits(level, g.precision);
    const auto values = embed_level(level, g.precision);
    Output out;
    Json points = Json::array();
    std::vector<std::pair<double, double>> xy;
    std::vector<std::size_t> cls;
    for (std::uint64_t j = 0; j < level.size(); ++j) {
        const std::size_t k = part.class_of(j);
        const double re = values[j].re.to_double(), im = values[j].im.to_double();
        xy.emplace_back(re, im);
        cls.push_back(k);
        points.push_back(Json{{"j", j}, {"phase", format_rational(level.point(j).phase())},
                              {"re", values[j].re.to_string(25)}, {"im", values[j].im.to_string(25)}, {"class", k}});
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
        out.rows.push_back({str(a.depth), str(level.size()), str(k), str(part.classes[k].size()), "inf", buf});
    }
    out.json = Json{{"beta", format_rational(level.beta())}, {"d", a.d}, {"depth", a.depth},
                    {"n", level.size()}, {"points", points}, {"partition", to_json(part)}};
    std::string sizes;
    for (std::size_t s : part.sizes()) sizes += (sizes.empty() ? "" : ", ") + std::to_string(s);
    out.notes.push_back(std::to_string(level.size()) + " points, " + std::to_string(part.classes.size()) +
                        (part.classes.size() == 1 ? " class" : " classes") + " of size " + sizes);
    for (std::size_t k = 0; k < part.classes.size(); ++k)
        out.notes.push_back("class " + std::to_string(k) + ": " + part.classes[k].factor.to_string());
    if (!a.svg.empty())
        write_file(a.svg, tools::scatter_svg(xy, cls, "x^" + std::to_string(level.size()) + " = " + a.beta));
    return out;
}

struct FactorArgs {
    std::string beta;
    std::uint64_t n = 1;
};

Output cmd_factor(const FactorArgs& a, const Globals&)
{
    const Rational beta = parse_rational(a.beta);
    const auto factors = factor_binomial(a.n, beta);
    Output out;
    Json strings = Json::array();
    for (std::size_t k = 0; k < factors.size(); ++k) {
        strings.push_back(factors[k].to_string());
        out.rows.push_back({"", str(a.n), str(k), std::to_string(factors[k].degree()), "", factors[k].to_string()});
    }
    out.json = Json{{"beta", format_rational(beta)},
                    {"n", a.n},
                    {"binomial", IntPolynomial::binomial_model(a.n, beta).to_string()},
                    {"irreducible", capelli_irreducible(a.n, beta)},
                    {"factors", to_json(factors)},
                    {"factor_strings", strings}};
    out.notes.push_back(IntPolynomial::binomial_model(a.n, beta).to_string() + ": " + std::to_string(factors.size()) +
                        (factors.size() == 1 ? " factor" : " factors"));
    return out;
}

struct NewtonArgs {
    std::string alpha, beta, primes = "2";
    std::uint64_t n = 0;
    unsigned d = 2, depth = 1;
};

Output cmd_newton(const NewtonArgs& a, const Globals&)
{
    const Rational alpha = parse_rational(a.alpha), beta = parse_rational(a.beta);
    std::uint64_t n = a.n;
    std::string depth_text;
    if (n == 0) {
        n = checked_power(a.d, a.depth);
        if (n == 0) raise(ErrorKind::Resource, "level size d^depth exceeds 2^20");
        depth_text = std::to_string(a.depth);
    }
    Output out;
    Json per_prime = Json::array();
    for (const Place& v : parse_s(a.primes)) {
        if (v.is_infinite()) continue;
        const auto poly = distance_polygon(alpha, beta, n, v.prime());
        const auto profile = poly.root_valuations();
        per_prime.push_back(Json{{"prime", integer_to_json(v.prime())},
                                 {"profile", profile_to_json(profile)},
                                 {"polygon", to_json(poly)}});
        for (const auto& x : profile) out.rows.push_back({depth_text, str(n), "", "", v.to_string(), x.get_str()});
        std::string text;
        for (const auto& seg : poly.segments)
            text += (text.empty() ? "" : ", ") + seg.root_valuation.get_str() + " x" + std::to_string(seg.multiplicity);
        out.notes.push_back("p = " + v.to_string() + ": " + text);
    }
    out.json = Json{{"alpha", format_rational(alpha)}, {"beta", format_rational(beta)}, {"n", n}, {"places", per_prime}};
    return out;
}

struct IntegralArgs {
    std::string alpha, beta, S;
    unsigned d = 2, depth = 4;
    std::size_t threshold = 2;
};

Output cmd_integral(const IntegralArgs& a, const Globals& g)
{
    CensusOptions opts;
    opts.large_class_threshold = a.threshold;
    opts.precision = g.precision;
    const CensusReport r =
        s_integral_census(parse_rational(a.alpha), parse_rational(a.beta), a.d, parse_s(a.S), a.depth, opts);
    Output out;
    out.json = to_json(r);
    std::string s_text;
    for (const auto& v : r.S) s_text += (s_text.empty() ? "" : ",") + v.to_string();
    for (const auto& depth : r.depths)
        for (const auto& c : depth.classes)
            out.rows.push_back({str(depth.depth), str(depth.n), str(c.class_index), str(c.class_size), s_text,
                                witness_text(c)});
    out.notes.push_back("S = {" + s_text + "}; max integral class size " + std::to_string(r.max_integral_size) +
                        "; exceptional classes " + std::to_string(r.exceptional_count) + " (|S_fin| = " +
                        std::to_string(r.s_fin) + "); no integral class after depth " +
                        std::to_string(r.last_integral_depth));
    return out;
}

struct DiscrepancyArgs {
    std::string alpha, beta, place = "inf", svg;
    unsigned d = 2, from = 1, depth = 8;
};

Output cmd_discrepancy(const DiscrepancyArgs& a, const Globals& g)
{
    if (a.from > a.depth) raise(ErrorKind::Input, "--from " + std::to_string(a.from) + " exceeds --depth");
    const GaussianRational alpha = GaussianRational::parse(a.alpha);
    const Rational beta = parse_rational(a.beta);
    const Place v = Place::parse(a.place);
    Output out;
    Json rows = Json::array();
    std::vector<std::pair<double, double>> curve;
    for (unsigned m = a.from; m <= a.depth; ++m) {
        const std::uint64_t n = checked_power(a.d, m, ~std::uint64_t(0) >> 1);
        const double value = discrepancy(alpha, beta, a.d, m, v, g.precision);
        rows.push_back(Json{{"depth", m}, {"n", n}, {"place", v.to_string()}, {"D", value}});
        out.rows.push_back({str(m), str(n), "", "", v.to_string(), real_str(value)});
        curve.emplace_back(m, value);
    }
    out.json = Json{{"alpha", alpha.to_string()}, {"beta", format_rational(beta)}, {"d", a.d}, {"rows", rows}};
    if (!a.svg.empty())
        write_file(a.svg, tools::line_svg(curve, "D(n) for alpha = " + alpha.to_string() + ", beta = " + a.beta +
                                                     " at " + v.to_string(),
                                          "depth", "D(n)"));
    return out;
}

struct PairingArgs {
    std::string alpha, beta;
    unsigned d = 2, from = 0, depth = 6;
};

Output cmd_pairing(const PairingArgs& a, const Globals& g)
{
    PairingOptions opts;
    opts.first_depth = a.from;
    opts.precision = g.precision;
    const auto curve = az_pairing_curve(parse_rational(a.alpha), parse_rational(a.beta), a.d, a.depth, opts);
    Output out;
    Json records = Json::array();
    bool all = true;
    for (const auto& rec : curve) {
        records.push_back(to_json(rec));
        all = all && rec.identity_holds;
        out.rows.push_back({str(rec.depth), str(rec.n), "", "", "all", real_str(rec.mean_numeric)});
    }
    out.json = Json{{"alpha", a.alpha}, {"beta", a.beta}, {"d", a.d}, {"identity_holds", all}, {"depths", records}};
    out.notes.push_back(std::string("exact identity mean lambda = h(alpha) + h(beta)/n: ") +
                        (all ? "holds at every depth" : "FAILS"));
    return out;
}

struct VerifyArgs {
    std::string config, calibrate_out;
};

int cmd_verify(const VerifyArgs& a, const Globals& g)
{
    std::ifstream in(a.config);
    if (!in) raise(ErrorKind::Input, "cannot open config '" + a.config + "'");
    Json config;
    try {
        config = Json::parse(in);
    } catch (const Json::exception& e) {
        raise(ErrorKind::Input, "config '" + a.config + "' is not valid JSON: " + e.what());
    }
    const SuiteReport rep = bound_suite(config);
    Output out;
    out.json = to_json(rep);
    for (const auto& c : rep.cells) {
        std::string implied;
        for (const auto& [k, v] : c.implied) implied += " " + k + "=" + real_str(v);
        out.notes.push_back(std::string(c.pass ? "PASS " : "FAIL ") + c.label + ":" + implied +
                            (c.message.empty() ? "" : " (" + c.message + ")"));
        for (const auto& r : c.rows)
            out.rows.push_back({str(r.depth), str(r.n), str(c.index), "", r.place,
                                real_str(r.lhs) + (r.pass ? " <= " : " > ") + real_str(r.rhs)});
    }
    out.notes.push_back(rep.all_pass ? "all cells pass" : "some cells FAIL");
    if (!a.calibrate_out.empty()) {
        Json baseline{{"discrepancy", Json::object()}, {"implied", Json::object()}};
        for (const auto& c : rep.cells) {
            baseline["implied"][c.label] = c.implied;
            if (c.kind == "discrepancy")
                baseline["discrepancy"][c.label] = Json{{"baseline", c.implied.at("baseline")},
                                                        {"max_ratio_to_baseline", c.implied.at("max_ratio_to_baseline")},
                                                        {"monotone", c.implied.at("monotone") != 0}};
        }
        write_file(a.calibrate_out, baseline.dump(2) + "\n");
    }
    render(out, g);
    return rep.all_pass ? 0 : 1;
}

struct ConstantsArgs {
    double tau = 0.1;
    std::string place;
};

Output cmd_constants(const ConstantsArgs& a, const Globals&)
{
    std::vector<Place> places;
    if (a.place.empty()) places = {Place::infinity(), Place::finite(2)};
    else places = {Place::parse(a.place)};
    Output out;
    Json rows = Json::array();
    for (const Place& v : places) {
        const TruncationConstants k = truncation_constants(a.tau, v);
        const std::string label = v.is_infinite() ? "inf" : "finite";
        rows.push_back(Json{{"place", v.to_string()}, {"tau", a.tau}, {"lipschitz", k.lipschitz}, {"dirichlet", k.dirichlet}});
        out.rows.push_back({"", "", "lipschitz", "", v.to_string(), real_str(k.lipschitz)});
        out.rows.push_back({"", "", "dirichlet", "", v.to_string(), real_str(k.dirichlet)});
    }
    out.json = Json{{"tau", a.tau}, {"constants", rows}};
    return out;
}

long default_precision()
{
    if (const char* env = std::getenv("ORBIT_INTEGRA_PRECISION")) {
        char* end = nullptr;
        const long p = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || p < 32 || p > 65536)
            raise(ErrorKind::Input, std::string("ORBIT_INTEGRA_PRECISION='") + env + "' is not a precision in [32, 65536]");
        return p;
    }
    return kDefaultPrecision;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Backward orbits of z^d: Galois orbits, local heights and S-integrality"};
    app.require_subcommand(1);
    Globals g;
    long precision_flag = 0;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--output,-o", g.output, "Write the main output to a file");
    app.add_option("--precision", precision_flag, "Archimedean precision in bits (overrides ORBIT_INTEGRA_PRECISION)")
        ->check(CLI::Range(32L, 65536L));

    OrbitArgs orbit;
    auto* c_orbit = app.add_subcommand("orbit", "List a preimage level and its Galois classes");
    c_orbit->add_option("--beta", orbit.beta, "Base point")->required();
    c_orbit->add_option("--d", orbit.d, "Degree of z^d")->check(CLI::Range(2u, 64u));
    c_orbit->add_option("--depth", orbit.depth, "Preimage depth");
    c_orbit->add_option("--svg", orbit.svg, "Scatter plot of the level against the unit circle");

    FactorArgs factor;
    auto* c_factor = app.add_subcommand("factor", "Factor x^n - beta over Q");
    c_factor->add_option("--beta", factor.beta, "Constant term")->required();
    c_factor->add_option("--n", factor.n, "Degree")->required()->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 20));

    NewtonArgs newton;
    auto* c_newton = app.add_subcommand("newton", "p-adic distance profiles of a level from alpha");
    c_newton->add_option("--alpha", newton.alpha, "Base point alpha")->required();
    c_newton->add_option("--beta", newton.beta, "Orbit base point")->required();
    c_newton->add_option("--n", newton.n, "Level size (alternative to --d/--depth)");
    c_newton->add_option("--d", newton.d, "Degree of z^d")->check(CLI::Range(2u, 64u));
    c_newton->add_option("--depth", newton.depth, "Preimage depth");
    c_newton->add_option("--p", newton.primes, "Comma-separated primes");

    IntegralArgs integral;
    auto* c_integral = app.add_subcommand("integral", "S-integrality census of Galois classes");
    c_integral->add_option("--alpha", integral.alpha, "Base point alpha")->required();
    c_integral->add_option("--beta", integral.beta, "Orbit base point")->required();
    c_integral->add_option("--d", integral.d, "Degree of z^d")->check(CLI::Range(2u, 64u));
    c_integral->add_option("--depth", integral.depth, "Maximum depth");
    c_integral->add_option("--S", integral.S, "Comma-separated finite primes of S (infinity is implied)");
    c_integral->add_option("--threshold", integral.threshold, "Size above which an integral class is exceptional");

    DiscrepancyArgs disc;
    auto* c_disc = app.add_subcommand("discrepancy", "Per-depth discrepancy D(n) at one place");
    c_disc->add_option("--alpha", disc.alpha, "Base point alpha (rational or a+bi)")->required();
    c_disc->add_option("--beta", disc.beta, "Orbit base point")->required();
    c_disc->add_option("--d", disc.d, "Degree of z^d")->check(CLI::Range(2u, 64u));
    c_disc->add_option("--from", disc.from, "First depth");
    c_disc->add_option("--depth", disc.depth, "Last depth");
    c_disc->add_option("--place", disc.place, "inf or a prime");
    c_disc->add_option("--svg", disc.svg, "Line chart of D(n) against depth");

    PairingArgs pairing;
    auto* c_pair = app.add_subcommand("pairing", "Exact mean local height identity per depth");
    c_pair->add_option("--alpha", pairing.alpha, "Base point alpha")->required();
    c_pair->add_option("--beta", pairing.beta, "Orbit base point")->required();
    c_pair->add_option("--d", pairing.d, "Degree of z^d")->check(CLI::Range(2u, 64u));
    c_pair->add_option("--from", pairing.from, "First depth");
    c_pair->add_option("--depth", pairing.depth, "Last depth");

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "Run a bound suite config");
    c_verify->add_option("--config", verify.config, "Suite config JSON")->required();
    c_verify->add_option("--calibrate-out", verify.calibrate_out, "Write the calibration baseline JSON here");

    ConstantsArgs constants;
    auto* c_const = app.add_subcommand("constants", "Lipschitz and Dirichlet constants of the truncated kernel");
    c_const->add_option("--tau", constants.tau, "Truncation radius in (0, 1]");
    c_const->add_option("--place", constants.place, "inf or a prime (default: both kinds)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        g.precision = precision_flag != 0 ? precision_flag : default_precision();
        if (*c_verify) return cmd_verify(verify, g);
        Output out;
        if (*c_orbit) out = cmd_orbit(orbit, g);
        else if (*c_factor) out = cmd_factor(factor, g);
        else if (*c_newton) out = cmd_newton(newton, g);
        else if (*c_integral) out = cmd_integral(integral, g);
        else if (*c_disc) out = cmd_discrepancy(disc, g);
        else if (*c_pair) out = cmd_pairing(pairing, g);
        else out = cmd_constants(constants, g);
        render(out, g);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
