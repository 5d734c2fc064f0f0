#include "ecs/json_io.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ecs {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
}

const Json& require(const Json& j, const std::string& field,
                    const std::string& context) {
    if (!j.is_object()) bad_field(context.empty() ? field : context, "expected an object");
    auto it = j.find(field);
    if (it == j.end())
        bad_field(context.empty() ? field : context + "." + field, "missing");
    return *it;
}

std::string scalar_text(const Json& v, const std::string& field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number_unsigned())
        return std::to_string(v.get<unsigned long long>());
    bad_field(field, "expected a decimal string");
}

bool bool_from_json(const Json& v, const std::string& field) {
    if (!v.is_boolean()) bad_field(field, "expected true or false");
    return v.get<bool>();
}

const Json& array_field(const Json& j, const std::string& field,
                        const std::string& context) {
    const Json& v = require(j, field, context);
    if (!v.is_array())
        bad_field(context.empty() ? field : context + "." + field,
                  "expected an array");
    return v;
}

}  // namespace

Json json_int(const BigInt& v) { return to_string(v); }
Json json_rat(const BigRational& v) { return to_string(v); }

BigInt int_from_json(const Json& v, const std::string& field) {
    const std::string s = scalar_text(v, field);
    try {
        return parse_bigint(s);
    } catch (const std::invalid_argument&) {
        bad_field(field, "not an integer: '" + s + "'");
    }
}

BigRational rat_from_json(const Json& v, const std::string& field) {
    const std::string s = scalar_text(v, field);
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        bad_field(field, "not a rational: '" + s + "'");
    }
}

long long_from_json(const Json& v, const std::string& field) {
    const std::string s = scalar_text(v, field);
    try {
        std::size_t used = 0;
        long r = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return r;
    } catch (const std::exception&) {
        bad_field(field, "not an integer: '" + s + "'");
    }
}

unsigned unsigned_from_json(const Json& v, const std::string& field) {
    long r = long_from_json(v, field);
    if (r < 0) bad_field(field, "must be nonnegative");
    return static_cast<unsigned>(r);
}

Json curve_to_json(const WeierstrassModel& e) {
    Json j;
    j["a"] = Json::array({json_int(e.a1()), json_int(e.a2()), json_int(e.a3()),
                          json_int(e.a4()), json_int(e.a6())});
    return j;
}

WeierstrassModel curve_from_json(const Json& j) {
    const Json& a = array_field(j, "a", "curve");
    if (a.size() != 5) bad_field("curve.a", "expected 5 coefficients [a1,a2,a3,a4,a6]");
    BigInt c[5];
    for (std::size_t i = 0; i < 5; ++i)
        c[i] = int_from_json(a[i], "curve.a[" + std::to_string(i) + "]");
    return WeierstrassModel(c[0], c[1], c[2], c[3], c[4]);
}

Json point_to_json(const CurvePoint& p) {
    Json j;
    if (p.is_infinity()) {
        j["infinity"] = true;
        return j;
    }
    j["x"] = json_rat(p.x());
    j["y"] = json_rat(p.y());
    return j;
}

CurvePoint point_from_json(const Json& j) {
    if (!j.is_object()) bad_field("point", "expected an object");
    if (auto it = j.find("infinity"); it != j.end()) {
        if (!bool_from_json(*it, "point.infinity"))
            bad_field("point.infinity", "must be true when present");
        return CurvePoint::infinity();
    }
    BigRational x = rat_from_json(require(j, "x", "point"), "point.x");
    BigRational y = rat_from_json(require(j, "y", "point"), "point.y");
    return CurvePoint(std::move(x), std::move(y));
}

Json model_map_to_json(const ModelMap& m) {
    Json j;
    j["u"] = json_rat(m.u);
    j["r"] = json_rat(m.r);
    j["s"] = json_rat(m.s);
    j["t"] = json_rat(m.t);
    return j;
}

ModelMap model_map_from_json(const Json& j) {
    ModelMap m = ModelMap::identity();
    m.u = rat_from_json(require(j, "u", "map"), "map.u");
    m.r = rat_from_json(require(j, "r", "map"), "map.r");
    m.s = rat_from_json(require(j, "s", "map"), "map.s");
    m.t = rat_from_json(require(j, "t", "map"), "map.t");
    return m;
}

std::string kodaira_to_string(const KodairaType& k) { return k.str(); }

KodairaType kodaira_from_string(const std::string& s) {
    KodairaType k;
    std::string body = s;
    bool star = false;
    if (!body.empty() && body.back() == '*') {
        star = true;
        body.pop_back();
    }
    if (body == "II") {
        k.kind = star ? KodairaKind::IIstar : KodairaKind::II;
        return k;
    }
    if (body == "III") {
        k.kind = star ? KodairaKind::IIIstar : KodairaKind::III;
        return k;
    }
    if (body == "IV") {
        k.kind = star ? KodairaKind::IVstar : KodairaKind::IV;
        return k;
    }
    if (body.size() >= 2 && body[0] == 'I') {
        unsigned n = 0;
        bool digits = true;
        for (std::size_t i = 1; i < body.size(); ++i) {
            if (body[i] < '0' || body[i] > '9') {
                digits = false;
                break;
            }
            n = n * 10 + static_cast<unsigned>(body[i] - '0');
        }
        if (digits) {
            if (star) {
                k.kind = n == 0 ? KodairaKind::I0star : KodairaKind::Instar;
            } else {
                k.kind = n == 0 ? KodairaKind::I0 : KodairaKind::In;
            }
            k.n = (k.kind == KodairaKind::In || k.kind == KodairaKind::Instar) ? n : 0;
            return k;
        }
    }
    bad_field("kodaira", "unknown symbol '" + s + "'");
}

ReductionClass reduction_class_from_string(const std::string& s) {
    if (s == "good") return ReductionClass::good;
    if (s == "multiplicative_split") return ReductionClass::multiplicative_split;
    if (s == "multiplicative_nonsplit") return ReductionClass::multiplicative_nonsplit;
    if (s == "additive") return ReductionClass::additive;
    bad_field("reduction", "unknown class '" + s + "'");
}

StableStatus stable_status_from_string(const std::string& s) {
    if (s == "in_S") return StableStatus::in_S;
    if (s == "good_integral") return StableStatus::good_integral;
    if (s == "mult_integral") return StableStatus::mult_integral;
    if (s == "additive_nonidentity") return StableStatus::additive_nonidentity;
    if (s == "meets_zero_section") return StableStatus::meets_zero_section;
    if (s == "additive_identity_component")
        return StableStatus::additive_identity_component;
    bad_field("status", "unknown status '" + s + "'");
}

Json valuation_to_json(long v) {
    if (v == val_infinity) return "inf";
    return std::to_string(v);
}

long valuation_from_json(const Json& v, const std::string& field) {
    if (v.is_string() && v.get<std::string>() == "inf") return val_infinity;
    return long_from_json(v, field);
}

Json local_reduction_to_json(const LocalReduction& r) {
    Json j;
    j["p"] = json_int(r.p);
    j["kodaira"] = r.kodaira.str();
    j["reduction"] = to_string(r.cls);
    j["v_discriminant"] = valuation_to_json(r.v_discriminant);
    j["v_c4"] = valuation_to_json(r.v_c4);
    j["v_c6"] = valuation_to_json(r.v_c6);
    j["tamagawa"] = json_int(r.tamagawa);
    j["conductor_exponent"] = std::to_string(r.conductor_exponent);
    if (r.singular_point) {
        Json sp;
        sp["x"] = json_int(r.singular_point->first);
        sp["y"] = json_int(r.singular_point->second);
        j["singular_point"] = sp;
    } else {
        j["singular_point"] = nullptr;
    }
    return j;
}

LocalReduction local_reduction_from_json(const Json& j) {
    LocalReduction r;
    r.p = int_from_json(require(j, "p", "place"), "place.p");
    const Json& kd = require(j, "kodaira", "place");
    if (!kd.is_string()) bad_field("place.kodaira", "expected a string");
    r.kodaira = kodaira_from_string(kd.get<std::string>());
    const Json& cls = require(j, "reduction", "place");
    if (!cls.is_string()) bad_field("place.reduction", "expected a string");
    r.cls = reduction_class_from_string(cls.get<std::string>());
    r.v_discriminant =
        valuation_from_json(require(j, "v_discriminant", "place"), "place.v_discriminant");
    r.v_c4 = valuation_from_json(require(j, "v_c4", "place"), "place.v_c4");
    r.v_c6 = valuation_from_json(require(j, "v_c6", "place"), "place.v_c6");
    r.tamagawa = int_from_json(require(j, "tamagawa", "place"), "place.tamagawa");
    r.conductor_exponent = long_from_json(require(j, "conductor_exponent", "place"),
                                          "place.conductor_exponent");
    const Json& sp = require(j, "singular_point", "place");
    if (!sp.is_null()) {
        BigInt x = int_from_json(require(sp, "x", "place.singular_point"),
                                 "place.singular_point.x");
        BigInt y = int_from_json(require(sp, "y", "place.singular_point"),
                                 "place.singular_point.y");
        r.singular_point = std::make_pair(std::move(x), std::move(y));
    }
    return r;
}

Json global_reduction_to_json(const GlobalReduction& g) {
    Json j;
    j["minimal_model"] = curve_to_json(g.minimal.model);
    j["map"] = model_map_to_json(g.minimal.map);
    j["u"] = json_int(g.minimal.u);
    Json places = Json::array();
    for (const auto& r : g.places) places.push_back(local_reduction_to_json(r));
    j["places"] = places;
    j["conductor"] = json_int(g.conductor);
    return j;
}

GlobalReduction global_reduction_from_json(const Json& j) {
    WeierstrassModel model = curve_from_json(require(j, "minimal_model", "reduction"));
    ModelMap map = model_map_from_json(require(j, "map", "reduction"));
    BigInt u = int_from_json(require(j, "u", "reduction"), "reduction.u");
    GlobalReduction g{MinimalModelResult{std::move(model), map, std::move(u)}, {}, BigInt(1)};
    for (const Json& p : array_field(j, "places", "reduction"))
        g.places.push_back(local_reduction_from_json(p));
    g.conductor = int_from_json(require(j, "conductor", "reduction"), "reduction.conductor");
    return g;
}

Json stable_report_to_json(const StableReport& r) {
    Json j;
    j["minimal_model"] = curve_to_json(r.curve);
    j["point"] = point_to_json(r.point);
    Json s = Json::array();
    for (const BigInt& p : r.S) s.push_back(json_int(p));
    j["S"] = s;
    j["verdict"] = r.verdict;
    Json ev = Json::array();
    for (const auto& [p, status] : r.per_prime_evidence) {
        Json row;
        row["p"] = json_int(p);
        row["status"] = to_string(status);
        ev.push_back(row);
    }
    j["evidence"] = ev;
    return j;
}

StableReport stable_report_from_json(const Json& j) {
    StableReport r{curve_from_json(require(j, "minimal_model", "report")),
                   point_from_json(require(j, "point", "report")),
                   {},
                   false,
                   {}};
    for (const Json& p : array_field(j, "S", "report"))
        r.S.push_back(int_from_json(p, "report.S"));
    r.verdict = bool_from_json(require(j, "verdict", "report"), "report.verdict");
    for (const Json& row : array_field(j, "evidence", "report")) {
        BigInt p = int_from_json(require(row, "p", "report.evidence"), "report.evidence.p");
        const Json& st = require(row, "status", "report.evidence");
        if (!st.is_string()) bad_field("report.evidence.status", "expected a string");
        r.per_prime_evidence.emplace_back(std::move(p),
                                          stable_status_from_string(st.get<std::string>()));
    }
    return r;
}

Json torsion_group_to_json(const TorsionGroup& g) {
    Json j;
    j["minimal_model"] = curve_to_json(g.minimal_model);
    j["order"] = std::to_string(g.order);
    Json inv = Json::array();
    for (unsigned f : g.invariant_factors) inv.push_back(std::to_string(f));
    j["invariant_factors"] = inv;
    j["structure"] = g.structure();
    Json pts = Json::array();
    for (const TorsionPoint& t : g.points) {
        Json row;
        row["point"] = point_to_json(t.point);
        row["order"] = std::to_string(t.order);
        pts.push_back(row);
    }
    j["points"] = pts;
    j["search_cap"] = std::to_string(g.search_cap);
    return j;
}

TorsionGroup torsion_group_from_json(const Json& j) {
    TorsionGroup g{curve_from_json(require(j, "minimal_model", "torsion")), 1, {}, {}, 12};
    g.order = unsigned_from_json(require(j, "order", "torsion"), "torsion.order");
    for (const Json& f : array_field(j, "invariant_factors", "torsion"))
        g.invariant_factors.push_back(unsigned_from_json(f, "torsion.invariant_factors"));
    for (const Json& row : array_field(j, "points", "torsion")) {
        TorsionPoint t;
        t.point = point_from_json(require(row, "point", "torsion.points"));
        t.order = unsigned_from_json(require(row, "order", "torsion.points"),
                                     "torsion.points.order");
        g.points.push_back(t);
    }
    g.search_cap =
        unsigned_from_json(require(j, "search_cap", "torsion"), "torsion.search_cap");
    return g;
}

Json threshold_to_json(const ThresholdVerdict& v) {
    Json j;
    j["n"] = json_int(v.n);
    j["d"] = std::to_string(v.d);
    j["g"] = std::to_string(v.g);
    j["c"] = json_int(v.c);
    j["satisfied"] = v.satisfied;
    if (v.prime_power) {
        Json pp;
        pp["p"] = json_int(v.prime_power->first);
        pp["k"] = std::to_string(v.prime_power->second);
        j["prime_power"] = pp;
    } else {
        j["prime_power"] = nullptr;
    }
    return j;
}

ThresholdVerdict threshold_from_json(const Json& j) {
    ThresholdVerdict v;
    v.n = int_from_json(require(j, "n", "threshold"), "threshold.n");
    v.d = unsigned_from_json(require(j, "d", "threshold"), "threshold.d");
    v.g = unsigned_from_json(require(j, "g", "threshold"), "threshold.g");
    v.c = int_from_json(require(j, "c", "threshold"), "threshold.c");
    v.satisfied =
        bool_from_json(require(j, "satisfied", "threshold"), "threshold.satisfied");
    const Json& pp = require(j, "prime_power", "threshold");
    if (!pp.is_null()) {
        BigInt p = int_from_json(require(pp, "p", "threshold.prime_power"),
                                 "threshold.prime_power.p");
        unsigned k = unsigned_from_json(require(pp, "k", "threshold.prime_power"),
                                        "threshold.prime_power.k");
        v.prime_power = std::make_pair(std::move(p), k);
    }
    return v;
}

Json kummer_point_to_json(const KummerPoint& k) {
    Json j;
    j["x1"] = json_rat(k.x1);
    j["x2"] = json_rat(k.x2);
    j["z"] = json_rat(k.z);
    return j;
}

KummerPoint kummer_point_from_json(const Json& j) {
    KummerPoint k;
    k.x1 = rat_from_json(require(j, "x1", "kummer"), "kummer.x1");
    k.x2 = rat_from_json(require(j, "x2", "kummer"), "kummer.x2");
    k.z = rat_from_json(require(j, "z", "kummer"), "kummer.z");
    return k;
}

Json twist_entry_to_json(const TwistScanEntry& e) {
    Json j;
    j["t"] = json_int(e.t);
    Json pts = Json::array();
    for (const CurvePoint& p : e.points) pts.push_back(point_to_json(p));
    j["points"] = pts;
    Json km = Json::array();
    for (const KummerPoint& k : e.kummer) km.push_back(kummer_point_to_json(k));
    j["kummer"] = km;
    return j;
}

TwistScanEntry twist_entry_from_json(const Json& j) {
    TwistScanEntry e;
    e.t = int_from_json(require(j, "t", "entry"), "entry.t");
    for (const Json& p : array_field(j, "points", "entry"))
        e.points.push_back(point_from_json(p));
    for (const Json& k : array_field(j, "kummer", "entry"))
        e.kummer.push_back(kummer_point_from_json(k));
    return e;
}

Json eisenstein_to_json(const Eisenstein& z) {
    Json j;
    j["a"] = json_rat(z.a);
    j["b"] = json_rat(z.b);
    return j;
}

Eisenstein eisenstein_from_json(const Json& j) {
    Eisenstein z;
    z.a = rat_from_json(require(j, "a", "scalar"), "scalar.a");
    z.b = rat_from_json(require(j, "b", "scalar"), "scalar.b");
    return z;
}

Json plane_point_to_json(const PlanePoint& p) {
    Json j;
    j["X"] = eisenstein_to_json(p.X);
    j["Y"] = eisenstein_to_json(p.Y);
    j["Z"] = eisenstein_to_json(p.Z);
    return j;
}

PlanePoint plane_point_from_json(const Json& j) {
    PlanePoint p;
    p.X = eisenstein_from_json(require(j, "X", "plane_point"));
    p.Y = eisenstein_from_json(require(j, "Y", "plane_point"));
    p.Z = eisenstein_from_json(require(j, "Z", "plane_point"));
    return p;
}

Json poly_to_json(const MultiPoly<BigRational>& p) {
    Json j;
    j["variables"] = std::to_string(p.nvars());
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json term;
        Json exps = Json::array();
        for (unsigned k : e) exps.push_back(std::to_string(k));
        term["exponents"] = exps;
        term["coefficient"] = json_rat(c);
        terms.push_back(term);
    }
    j["terms"] = terms;
    return j;
}

MultiPoly<BigRational> poly_from_json(const Json& j) {
    unsigned nvars =
        unsigned_from_json(require(j, "variables", "polynomial"), "polynomial.variables");
    MultiPoly<BigRational> p(nvars);
    for (const Json& term : array_field(j, "terms", "polynomial")) {
        const Json& exps = array_field(term, "exponents", "polynomial.terms");
        if (exps.size() != nvars)
            bad_field("polynomial.terms.exponents", "arity mismatch");
        Exponents e;
        for (const Json& v : exps)
            e.push_back(unsigned_from_json(v, "polynomial.terms.exponents"));
        BigRational c = rat_from_json(require(term, "coefficient", "polynomial.terms"),
                                      "polynomial.terms.coefficient");
        p.add_term(e, c);
    }
    return p;
}

Json correlation_report_to_json(const CorrelationReport& r) {
    Json j;
    j["n"] = std::to_string(r.n);
    j["degree"] = std::to_string(r.degree);
    j["tuple_count"] = std::to_string(r.tuple_count);
    j["monomial_count"] = std::to_string(r.monomial_count);
    j["rank"] = std::to_string(r.rank);
    j["correlated"] = r.correlated;
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(poly_to_json(w));
    j["witnesses"] = ws;
    j["bound"] = std::to_string(r.bound);
    Json lv = Json::array();
    for (std::size_t c : r.per_level) lv.push_back(std::to_string(c));
    j["per_level"] = lv;
    Json ex = Json::array();
    for (const BigRational& t : r.excluded_fibers) ex.push_back(json_rat(t));
    j["excluded_fibers"] = ex;
    j["statement"] = r.statement;
    return j;
}

CorrelationReport correlation_report_from_json(const Json& j) {
    CorrelationReport r;
    r.n = unsigned_from_json(require(j, "n", "report"), "report.n");
    r.degree = unsigned_from_json(require(j, "degree", "report"), "report.degree");
    r.tuple_count =
        unsigned_from_json(require(j, "tuple_count", "report"), "report.tuple_count");
    r.monomial_count = unsigned_from_json(require(j, "monomial_count", "report"),
                                          "report.monomial_count");
    r.rank = unsigned_from_json(require(j, "rank", "report"), "report.rank");
    r.correlated =
        bool_from_json(require(j, "correlated", "report"), "report.correlated");
    for (const Json& w : array_field(j, "witnesses", "report"))
        r.witnesses.push_back(poly_from_json(w));
    r.bound = unsigned_from_json(require(j, "bound", "report"), "report.bound");
    for (const Json& c : array_field(j, "per_level", "report"))
        r.per_level.push_back(unsigned_from_json(c, "report.per_level"));
    for (const Json& t : array_field(j, "excluded_fibers", "report"))
        r.excluded_fibers.push_back(rat_from_json(t, "report.excluded_fibers"));
    const Json& st = require(j, "statement", "report");
    if (!st.is_string()) bad_field("report.statement", "expected a string");
    r.statement = st.get<std::string>();
    return r;
}

Json fibered_point_set_to_json(const FiberedPointSet& ps) {
    Json fibers = Json::object();
    for (const auto& [t, pts] : ps.fibers) {
        Json rows = Json::array();
        for (const auto& p : pts) {
            Json row = Json::array();
            for (const BigRational& c : p) row.push_back(json_rat(c));
            rows.push_back(row);
        }
        fibers[to_string(t)] = rows;
    }
    Json j;
    j["fibers"] = fibers;
    return j;
}

FiberedPointSet fibered_point_set_from_json(const Json& j) {
    const Json& fibers = require(j, "fibers", "dataset");
    if (!fibers.is_object()) bad_field("dataset.fibers", "expected an object");
    FiberedPointSet ps;
    for (auto it = fibers.begin(); it != fibers.end(); ++it) {
        BigRational t;
        try {
            t = parse_rational(it.key());
        } catch (const std::exception&) {
            bad_field("dataset.fibers", "key is not a rational: '" + it.key() + "'");
        }
        if (!it.value().is_array())
            bad_field("dataset.fibers['" + it.key() + "']", "expected an array of points");
        std::vector<std::vector<BigRational>> pts;
        for (const Json& row : it.value()) {
            if (!row.is_array())
                bad_field("dataset.fibers['" + it.key() + "']",
                          "each point must be an array of coordinates");
            std::vector<BigRational> p;
            for (const Json& c : row)
                p.push_back(rat_from_json(c, "dataset.fibers['" + it.key() + "']"));
            pts.push_back(std::move(p));
        }
        ps.fibers[t] = std::move(pts);
    }
    return ps;
}

namespace {

std::string csv_escape(const std::string& s) {
    bool quote = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void csv_walk(const Json& j, const std::string& path, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            csv_walk(it.value(), path.empty() ? it.key() : path + "/" + it.key(), out);
        return;
    }
    if (j.is_array()) {
        std::size_t i = 0;
        for (const Json& v : j) {
            csv_walk(v, path + "/" + std::to_string(i), out);
            ++i;
        }
        return;
    }
    std::string value;
    if (j.is_string()) value = j.get<std::string>();
    else if (j.is_boolean()) value = j.get<bool>() ? "true" : "false";
    else if (j.is_null()) value = "";
    else value = j.dump();
    out += csv_escape(path);
    out += ",";
    out += csv_escape(value);
    out += "\n";
}

}  // namespace

std::string csv_from_json(const Json& j) {
    std::string out = "path,value\n";
    csv_walk(j, "", out);
    return out;
}

}  // namespace ecs
