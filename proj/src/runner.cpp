#include "ecs/runner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>

#include "ecs/factor.hpp"
#include "ecs/rng.hpp"
#include "ecs/search.hpp"

namespace ecs {

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

// One side of an equation as a sum of recognized terms. Keys: "", "x",
// "x^2", "x^3", "y", "y^2", "xy".
std::map<std::string, BigInt> parse_side(const std::string& side,
                                         const std::string& which) {
    if (side.empty())
        throw std::invalid_argument("curve: empty " + which + " side");
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < side.size(); ++i) {
        char ch = side[i];
        if ((ch == '+' || ch == '-') && i > 0) {
            terms.push_back(cur);
            cur.clear();
        }
        cur += ch;
    }
    terms.push_back(cur);

    std::map<std::string, BigInt> out;
    for (const std::string& term : terms) {
        std::size_t i = 0;
        bool negative = false;
        if (term[i] == '+') {
            ++i;
        } else if (term[i] == '-') {
            negative = true;
            ++i;
        }
        std::string digits;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i])))
            digits += term[i++];
        std::string var = term.substr(i);
        if (var == "yx") var = "xy";
        static const std::set<std::string> known = {"", "x", "x^2", "x^3",
                                                    "y", "y^2", "xy"};
        if (!known.count(var) || (digits.empty() && var.empty()))
            throw std::invalid_argument("curve: unrecognized term '" + term + "'");
        BigInt coeff = digits.empty() ? BigInt(1) : parse_bigint(digits);
        if (negative) coeff = BigInt(-coeff);
        auto [it, fresh] = out.emplace(var, coeff);
        if (!fresh) it->second = BigInt(it->second + coeff);
    }
    return out;
}

BigInt side_coeff(const std::map<std::string, BigInt>& side, const std::string& key) {
    auto it = side.find(key);
    return it == side.end() ? BigInt(0) : it->second;
}

WeierstrassModel parse_equation(std::string s) {
    replace_all(s, "\xc2\xb2", "^2");
    replace_all(s, "\xc2\xb3", "^3");
    std::string compact;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '*') continue;
        if (c == 'X') c = 'x';
        if (c == 'Y') c = 'y';
        compact += c;
    }
    std::size_t eq = compact.find('=');
    if (eq == std::string::npos || compact.find('=', eq + 1) != std::string::npos)
        throw std::invalid_argument("curve: expected exactly one '='");

    auto lhs = parse_side(compact.substr(0, eq), "left");
    auto rhs = parse_side(compact.substr(eq + 1), "right");

    for (const auto& [key, coeff] : lhs) {
        if (key != "y^2" && key != "xy" && key != "y")
            throw std::invalid_argument(
                "curve: '" + key + "' does not belong on the left side");
        (void)coeff;
    }
    for (const auto& [key, coeff] : rhs) {
        if (key != "x^3" && key != "x^2" && key != "x" && key != "")
            throw std::invalid_argument(
                "curve: '" + key + "' does not belong on the right side");
        (void)coeff;
    }
    if (side_coeff(lhs, "y^2") != 1)
        throw std::invalid_argument(
            "curve: left side must contain y^2 with coefficient 1");
    if (side_coeff(rhs, "x^3") != 1)
        throw std::invalid_argument(
            "curve: right side must contain x^3 with coefficient 1");

    return WeierstrassModel(side_coeff(lhs, "xy"), side_coeff(rhs, "x^2"),
                            side_coeff(lhs, "y"), side_coeff(rhs, "x"),
                            side_coeff(rhs, ""));
}

Json parse_json_text(const std::string& text, const std::string& field) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(field + ": invalid JSON (" +
                                    std::string(e.what()) + ")");
    }
}

BigInt parse_int_flag(const std::string& text, const std::string& field) {
    try {
        return parse_bigint(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(field + ": not an integer: '" + text + "'");
    }
}

bool certified_point_order(const WeierstrassModel& e, const CurvePoint& p,
                           unsigned n) {
    if (!on_curve(e, p)) return false;
    if (!scalar_multiply(e, BigInt(n), p).is_infinity()) return false;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0 && scalar_multiply(e, BigInt(d), p).is_infinity())
            return false;
    return true;
}

}  // namespace

WeierstrassModel parse_curve_text(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\n\r");
    if (first == std::string::npos)
        throw std::invalid_argument("curve: empty input");
    if (text[first] == '{')
        return curve_from_json(parse_json_text(text, "curve"));
    return parse_equation(text);
}

CurvePoint parse_point_text(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\n\r");
    if (first == std::string::npos || text[first] != '{')
        throw std::invalid_argument(
            "point: expected JSON like {\"x\":\"-1\",\"y\":\"7\"}");
    return point_from_json(parse_json_text(text, "point"));
}

std::vector<BigInt> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<BigInt> out;
    std::string cur;
    auto flush = [&]() {
        std::string trimmed;
        for (char c : cur)
            if (c != ' ' && c != '\t') trimmed += c;
        if (trimmed.empty())
            throw std::invalid_argument(field + ": empty entry in list");
        out.push_back(parse_int_flag(trimmed, field));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    return out;
}

Json generate_corpus(const CorpusSpec& spec) {
    Json params = Json::object();
    Json entries = Json::array();

    if (spec.kind == "short") {
        if (spec.bound < 1)
            throw std::invalid_argument("bound: must be at least 1");
        params["bound"] = std::to_string(spec.bound);
        Rng rng(spec.seed);
        std::set<std::pair<long, long>> seen;
        std::uint64_t attempts = 0;
        while (entries.size() < spec.size) {
            if (++attempts > 1000000 + 1000 * spec.size)
                throw std::domain_error(
                    "corpus: cannot reach the requested size within the bound");
            long a = rng.range(-spec.bound, spec.bound);
            long b = rng.range(-spec.bound, spec.bound);
            if (!seen.insert({a, b}).second) continue;
            try {
                WeierstrassModel e = WeierstrassModel::short_form(BigInt(a), BigInt(b));
                Json entry;
                entry["curve"] = curve_to_json(e);
                entries.push_back(entry);
            } catch (const std::domain_error&) {
                // singular pair; draw again
            }
        }
    } else if (spec.kind == "torsion") {
        if (spec.order < 3 || spec.order > 10)
            throw std::invalid_argument("order: must be in 3..10");
        params["order"] = std::to_string(spec.order);
        const long budget = 1000 + 200 * static_cast<long>(spec.size);
        for (long t = 1; entries.size() < spec.size; ++t) {
            if (t > budget)
                throw std::domain_error("corpus: torsion parameter budget exhausted");
            try {
                WeierstrassModel e = tate_normal_curve(spec.order, BigRational(t));
                CurvePoint p(BigRational(0), BigRational(0));
                if (!certified_point_order(e, p, spec.order)) continue;
                Json entry;
                entry["curve"] = curve_to_json(e);
                entry["parameter"] = std::to_string(t);
                entry["torsion_point"] = point_to_json(p);
                entry["order"] = std::to_string(spec.order);
                entries.push_back(entry);
            } catch (const std::domain_error&) {
                // singular parameter; next t
            }
        }
    } else if (spec.kind == "twist") {
        params["a"] = json_int(spec.a);
        params["b"] = json_int(spec.b);
        TwistCubic f{spec.a, spec.b};
        for (long t = 1; entries.size() < spec.size; ++t) {
            if (!is_squarefree(BigInt(t))) continue;
            TwistedCurve tw = twist_curve(f, BigInt(t));
            Json entry;
            entry["curve"] = curve_to_json(tw.model);
            entry["t"] = std::to_string(t);
            entries.push_back(entry);
        }
    } else if (spec.kind == "hesse") {
        if (spec.bound < 2)
            throw std::invalid_argument("bound: must be at least 2");
        params["bound"] = std::to_string(spec.bound);
        Rng rng(spec.seed);
        std::set<std::string> seen;
        std::uint64_t attempts = 0;
        while (entries.size() < spec.size) {
            if (++attempts > 1000000 + 1000 * spec.size)
                throw std::domain_error(
                    "corpus: cannot reach the requested size within the bound");
            long num = rng.range(-spec.bound, spec.bound);
            long den = rng.range(1, spec.bound);
            if (num == 0) continue;
            BigRational t = make_rational(BigInt(num), BigInt(den));
            if (t == 1) continue;  // singular member
            if (!seen.insert(to_string(t)).second) continue;
            HesseWeierstrass w =
                fiber_to_weierstrass(fiber_at(Eisenstein::from_rational(t), Eisenstein(1)));
            Json entry;
            entry["curve"] = curve_to_json(w.model);
            entry["t"] = json_rat(t);
            entries.push_back(entry);
        }
    } else {
        throw std::invalid_argument(
            "kind: must be one of short, torsion, twist, hesse");
    }

    Json j;
    j["kind"] = spec.kind;
    j["seed"] = std::to_string(spec.seed);
    j["size"] = std::to_string(spec.size);
    j["params"] = params;
    j["entries"] = entries;
    return j;
}

namespace {

Json run_analyze(const RunConfig& cfg) {
    WeierstrassModel e = parse_curve_text(cfg.curve_text);
    GlobalReduction g = global_reduction(e);
    TorsionGroup tg = torsion_subgroup(e);
    Json report;
    report["input"] = curve_to_json(e);
    report["reduction"] = global_reduction_to_json(g);
    report["torsion"] = torsion_group_to_json(tg);
    return report;
}

Json run_minimal(const RunConfig& cfg) {
    WeierstrassModel e = parse_curve_text(cfg.curve_text);
    MinimalModelResult m = minimalize(e);
    Json report;
    report["input"] = curve_to_json(e);
    report["minimal_model"] = curve_to_json(m.model);
    report["map"] = model_map_to_json(m.map);
    report["u"] = json_int(m.u);
    report["already_minimal"] = is_minimal(e);
    return report;
}

Json run_tate(const RunConfig& cfg) {
    WeierstrassModel e = parse_curve_text(cfg.curve_text);
    BigInt p = parse_int_flag(cfg.p_text, "p");
    MinimalModelResult m = minimalize(e);
    LocalReduction lr = tate_local(m.model, p);
    Json report;
    report["input"] = curve_to_json(e);
    report["model"] = curve_to_json(m.model);
    report["local"] = local_reduction_to_json(lr);
    return report;
}

Json run_stable(const RunConfig& cfg) {
    WeierstrassModel e = parse_curve_text(cfg.curve_text);
    CurvePoint p = parse_point_text(cfg.point_text);
    std::vector<BigInt> s = parse_int_list(cfg.s_text, "S");
    StableReport r = is_stably_integral(e, p, s);
    return stable_report_to_json(r);
}

Json run_search(const RunConfig& cfg) {
    WeierstrassModel e = parse_curve_text(cfg.curve_text);
    std::vector<BigInt> s = parse_int_list(cfg.s_text, "S");
    BigInt height = parse_int_flag(cfg.height_text, "height");
    Json report;
    std::vector<CurvePoint> pts;
    if (cfg.stable_filter) {
        MinimalModelResult m = minimalize(e);
        pts = enumerate_stably_integral(e, s, height, cfg.jobs);
        report["model"] = curve_to_json(m.model);
    } else {
        pts = search_s_integral_points(e, s, height, cfg.jobs);
        report["model"] = curve_to_json(e);
    }
    Json sj = Json::array();
    for (const BigInt& q : s) sj.push_back(json_int(q));
    report["S"] = sj;
    report["height"] = json_int(height);
    report["stable_only"] = cfg.stable_filter;
    Json pj = Json::array();
    for (const CurvePoint& p : pts) pj.push_back(point_to_json(p));
    report["points"] = pj;
    report["count"] = std::to_string(pts.size());
    return report;
}

Json run_hesse(const RunConfig& cfg) {
    if (cfg.singular_fibers && !cfg.hesse_t.empty())
        throw std::invalid_argument(
            "hesse: choose one of --singular-fibers or --t, not both");
    if (!cfg.singular_fibers && cfg.hesse_t.empty())
        throw std::invalid_argument(
            "hesse: one of --singular-fibers or --t is required");

    Json report;
    if (cfg.singular_fibers) {
        Json fibers = Json::array();
        for (const auto& [lambda, mu] : find_singular_fibers()) {
            HesseFiber f = fiber_at(lambda, mu);
            Json fj;
            fj["lambda"] = eisenstein_to_json(lambda);
            fj["mu"] = eisenstein_to_json(mu);
            Json nodes = Json::array();
            for (const FiberNode& n : fiber_nodes(f)) {
                Json nj;
                nj["point"] = plane_point_to_json(n.point);
                nj["type"] = n.local_type;
                nodes.push_back(nj);
            }
            fj["nodes"] = nodes;
            fibers.push_back(fj);
        }
        report["singular_fibers"] = fibers;
        report["fiber_count"] = std::to_string(fibers.size());
        Json bpj = Json::array();
        std::size_t rational = 0;
        for (const PlanePoint& p : base_points()) {
            bpj.push_back(plane_point_to_json(p));
            if (p.X.is_rational() && p.Y.is_rational() && p.Z.is_rational())
                ++rational;
        }
        report["base_points"] = bpj;
        report["base_point_count"] = std::to_string(bpj.size());
        report["rational_base_point_count"] = std::to_string(rational);
        return report;
    }

    HesseFiber fiber = [&]() {
        if (cfg.hesse_t == "inf")
            return fiber_at(Eisenstein(1), Eisenstein(0));
        BigRational t;
        try {
            t = parse_rational(cfg.hesse_t);
        } catch (const std::exception&) {
            throw std::invalid_argument("t: not a rational (or 'inf'): '" +
                                        cfg.hesse_t + "'");
        }
        return fiber_at(Eisenstein::from_rational(t), Eisenstein(1));
    }();
    HesseWeierstrass w = fiber_to_weierstrass(fiber);
    report["t"] = w.t_infinite ? Json("inf") : json_rat(w.t);
    report["model"] = curve_to_json(w.model);
    report["j"] = json_rat(w.model.j_invariant());
    Json rows = Json::array();
    for (const auto& row : w.rows) {
        Json rj = Json::array();
        for (const BigRational& v : row) rj.push_back(json_rat(v));
        rows.push_back(rj);
    }
    Json map;
    map["rows"] = rows;
    map["alpha"] = json_rat(w.alpha);
    map["u"] = json_int(w.u);
    report["map"] = map;
    Json images = Json::array();
    for (const PlanePoint& p : base_points()) {
        if (!(p.X.is_rational() && p.Y.is_rational() && p.Z.is_rational()))
            continue;
        Json entry;
        entry["plane"] = plane_point_to_json(p);
        entry["image"] = point_to_json(hesse_point_to_curve(w, p.X.a, p.Y.a, p.Z.a));
        images.push_back(entry);
    }
    report["base_point_images"] = images;
    return report;
}

Json run_twist_scan(const RunConfig& cfg) {
    BigInt a = parse_int_flag(cfg.a_text, "a");
    BigInt b = parse_int_flag(cfg.b_text, "b");
    TwistCubic f{a, b};
    std::vector<BigInt> ts;
    if (!cfg.t_list_text.empty()) {
        ts = parse_int_list(cfg.t_list_text, "t-list");
    } else {
        if (cfg.t_max < 1)
            throw std::invalid_argument("t-max: must be at least 1");
        for (long t = 1; t <= cfg.t_max; ++t)
            if (is_squarefree(BigInt(t))) ts.push_back(BigInt(t));
    }
    std::vector<BigInt> s = parse_int_list(cfg.s_text, "S");
    BigInt height = parse_int_flag(cfg.height_text, "height");
    TwistFamily family{f, ts};
    std::vector<TwistScanEntry> entries = twist_scan(family, s, height, cfg.jobs);

    Json report;
    Json fj;
    fj["a"] = json_int(a);
    fj["b"] = json_int(b);
    report["f"] = fj;
    Json tj = Json::array();
    for (const BigInt& t : ts) tj.push_back(json_int(t));
    report["t_range"] = tj;
    Json sj = Json::array();
    for (const BigInt& q : s) sj.push_back(json_int(q));
    report["S"] = sj;
    report["height"] = json_int(height);
    Json ej = Json::array();
    std::size_t pairs = 0, violations = 0;
    for (const TwistScanEntry& e : entries) {
        ej.push_back(twist_entry_to_json(e));
        pairs += e.kummer.size();
        for (const KummerPoint& k : e.kummer)
            if (!on_kummer_surface(f, k)) ++violations;
    }
    report["entries"] = ej;
    report["pairs"] = std::to_string(pairs);
    report["violations"] = std::to_string(violations);
    return report;
}

Json run_torsion(const RunConfig& cfg) {
    int modes = (!cfg.curve_text.empty() ? 1 : 0) +
                (!cfg.threshold_n.empty() ? 1 : 0) +
                (!cfg.corollary_p.empty() ? 1 : 0) + (cfg.symplectic_g >= 0 ? 1 : 0);
    if (modes != 1)
        throw std::invalid_argument(
            "torsion: exactly one of --curve, --threshold, --corollary-p, "
            "--symplectic is required");

    if (!cfg.curve_text.empty()) {
        WeierstrassModel e = parse_curve_text(cfg.curve_text);
        return torsion_group_to_json(torsion_subgroup(e));
    }
    if (!cfg.threshold_n.empty()) {
        BigInt n = parse_int_flag(cfg.threshold_n, "threshold");
        return threshold_to_json(stable_integrality_threshold(n, cfg.d, cfg.g));
    }
    if (!cfg.corollary_p.empty()) {
        BigInt p = parse_int_flag(cfg.corollary_p, "corollary-p");
        Json report;
        report["d"] = std::to_string(cfg.d);
        report["g"] = std::to_string(cfg.g);
        report["p"] = json_int(p);
        report["c"] = json_int(symplectic_group_order(cfg.g));
        report["bound"] = json_int(corollary_bound(cfg.d, cfg.g, p));
        return report;
    }
    Json report;
    report["g"] = std::to_string(cfg.symplectic_g);
    report["order"] =
        json_int(symplectic_group_order(static_cast<unsigned>(cfg.symplectic_g)));
    return report;
}

Json run_correlate(const RunConfig& cfg) {
    if (cfg.data_path.empty())
        throw std::invalid_argument("data: a dataset file is required");
    std::ifstream in(cfg.data_path);
    if (!in)
        throw std::invalid_argument("data: cannot read '" + cfg.data_path + "'");
    Json dj;
    try {
        in >> dj;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("data: invalid JSON (" + std::string(e.what()) +
                                    ")");
    }
    FiberedPointSet ps = fibered_point_set_from_json(dj);
    CorrelationReport r = correlation_report(ps, cfg.arity, cfg.degree, cfg.jobs);
    return correlation_report_to_json(r);
}

Json run_corpus(const RunConfig& cfg) {
    CorpusSpec spec;
    spec.kind = cfg.kind;
    spec.seed = cfg.seed;
    spec.size = cfg.size;
    spec.bound = cfg.bound;
    spec.order = cfg.order;
    spec.a = parse_int_flag(cfg.a_text, "a");
    spec.b = parse_int_flag(cfg.b_text, "b");
    return generate_corpus(spec);
}

}  // namespace

Json execute_command(const RunConfig& cfg) {
    Json report;
    if (cfg.command == "analyze") report = run_analyze(cfg);
    else if (cfg.command == "minimal") report = run_minimal(cfg);
    else if (cfg.command == "tate") report = run_tate(cfg);
    else if (cfg.command == "stable") report = run_stable(cfg);
    else if (cfg.command == "search") report = run_search(cfg);
    else if (cfg.command == "hesse") report = run_hesse(cfg);
    else if (cfg.command == "twist-scan") report = run_twist_scan(cfg);
    else if (cfg.command == "torsion") report = run_torsion(cfg);
    else if (cfg.command == "correlate") report = run_correlate(cfg);
    else if (cfg.command == "corpus") report = run_corpus(cfg);
    else throw std::invalid_argument("command: unknown subcommand '" + cfg.command + "'");

    Json doc;
    doc["command"] = cfg.command;
    doc["report"] = report;
    return doc;
}

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"exact arithmetic toolkit for elliptic curves over Q"};
    app.name("ecs");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output_path,
                        "write the JSON report here (default: stdout)");
        sub->add_option("--csv", cfg.csv_path, "also write a CSV flattening here");
        sub->add_option("--jobs", cfg.jobs,
                        "worker count (the ECS_JOBS env var overrides this)");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "minimal model, reduction at every bad prime, and torsion");
    analyze->add_option("--curve", cfg.curve_text, "curve JSON or equation text")
        ->required();
    add_common(analyze);

    CLI::App* minimal =
        app.add_subcommand("minimal", "global minimal model and the coordinate change");
    minimal->add_option("--curve", cfg.curve_text, "curve JSON or equation text")
        ->required();
    add_common(minimal);

    CLI::App* tate = app.add_subcommand(
        "tate", "local reduction data at one prime (on the minimal model)");
    tate->add_option("--curve", cfg.curve_text, "curve JSON or equation text")
        ->required();
    tate->add_option("--p", cfg.p_text, "the prime to analyze")->required();
    add_common(tate);

    CLI::App* stable = app.add_subcommand(
        "stable", "stably S-integral verdict for one point with per-prime evidence");
    stable->add_option("--curve", cfg.curve_text, "curve JSON or equation text")
        ->required();
    stable->add_option("--point", cfg.point_text, "point JSON, e.g. {\"x\":\"-1\",\"y\":\"7\"}")
        ->required();
    stable->add_option("--S", cfg.s_text, "comma-separated primes, must include 2,3");
    add_common(stable);

    CLI::App* search =
        app.add_subcommand("search", "S-integral points up to a height bound");
    search->add_option("--curve", cfg.curve_text, "curve JSON or equation text")
        ->required();
    search->add_option("--S", cfg.s_text, "comma-separated primes");
    search->add_option("--height", cfg.height_text, "height bound (default 100)");
    search->add_flag("--stable", cfg.stable_filter,
                     "keep only stably S-integral points (on the minimal model)");
    add_common(search);

    CLI::App* hesse = app.add_subcommand(
        "hesse", "the plane cubic pencil: singular members or one fiber over Q");
    hesse->add_flag("--singular-fibers", cfg.singular_fibers,
                    "list the singular members with their nodes and the base points");
    hesse->add_option("--t", cfg.hesse_t, "fiber parameter: a rational or 'inf'");
    add_common(hesse);

    CLI::App* twist = app.add_subcommand(
        "twist-scan", "scan quadratic twists t y^2 = x^3 + a x + b and map point "
                      "pairs onto the common surface");
    twist->add_option("--a", cfg.a_text, "cubic coefficient a (default -1)");
    twist->add_option("--b", cfg.b_text, "cubic coefficient b (default 0)");
    twist->add_option("--t-max", cfg.t_max,
                      "scan squarefree t in 1..t-max (default 10)");
    twist->add_option("--t-list", cfg.t_list_text,
                      "explicit comma-separated twist parameters");
    twist->add_option("--S", cfg.s_text, "comma-separated primes");
    twist->add_option("--height", cfg.height_text, "search height per twist");
    add_common(twist);

    CLI::App* torsion = app.add_subcommand(
        "torsion", "torsion subgroup, integrality threshold, or image bounds");
    torsion->add_option("--curve", cfg.curve_text, "curve JSON or equation text");
    torsion->add_option("--threshold", cfg.threshold_n,
                        "evaluate the prime-power threshold at this n");
    torsion->add_option("--corollary-p", cfg.corollary_p,
                        "evaluate the cardinality bound at this prime");
    torsion->add_option("--symplectic", cfg.symplectic_g,
                        "order of the mod-5 symplectic group of this genus");
    torsion->add_option("--d", cfg.d, "field degree parameter (default 1)");
    torsion->add_option("--g", cfg.g, "genus parameter (default 1)");
    add_common(torsion);

    CLI::App* correlate = app.add_subcommand(
        "correlate", "fit hypersurfaces through tuple data and bound fiber counts");
    correlate->add_option("--data", cfg.data_path, "dataset JSON file")->required();
    correlate->add_option("--n", cfg.arity, "tuple arity (default 2)")
        ->check(CLI::PositiveNumber);
    correlate->add_option("--degree", cfg.degree, "degree bound (default 1)")
        ->check(CLI::PositiveNumber);
    add_common(correlate);

    CLI::App* corpus =
        app.add_subcommand("corpus", "deterministic curve corpus generation");
    corpus->add_option("--kind", cfg.kind, "short | torsion | twist | hesse")
        ->required();
    corpus->add_option("--seed", cfg.seed, "RNG seed (default 1)");
    corpus->add_option("--size", cfg.size, "number of entries (default 10)");
    corpus->add_option("--bound", cfg.bound, "coefficient bound (default 50)");
    corpus->add_option("--order", cfg.order, "torsion kind: point order (default 5)");
    corpus->add_option("--a", cfg.a_text, "twist kind: cubic coefficient a");
    corpus->add_option("--b", cfg.b_text, "twist kind: cubic coefficient b");
    add_common(corpus);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (const char* name :
         {"analyze", "minimal", "tate", "stable", "search", "hesse", "twist-scan",
          "torsion", "correlate", "corpus"})
        if (app.got_subcommand(name)) cfg.command = name;

    try {
        Json doc = execute_command(cfg);
        std::string text = doc.dump(2);
        text += "\n";
        if (cfg.output_path.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output_path, std::ios::binary);
            if (!f) {
                err << "i/o error: cannot write '" << cfg.output_path << "'\n";
                return 1;
            }
            f << text;
        }
        if (!cfg.csv_path.empty()) {
            std::ofstream c(cfg.csv_path, std::ios::binary);
            if (!c) {
                err << "i/o error: cannot write '" << cfg.csv_path << "'\n";
                return 1;
            }
            c << csv_from_json(doc);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ecs
