#ifndef WEIER_CLI_RUN_HPP
#define WEIER_CLI_RUN_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <weier/algebraic/tower.hpp>
#include <weier/cli/parse.hpp>
#include <weier/core/errors.hpp>
#include <weier/curve/curve.hpp>
#include <weier/differentials/differentials.hpp>

namespace weier
{

using Json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "weier/1";

struct Request {
    std::string command;
    std::string curve;
    std::optional<std::string> x1, x2, xp;
    std::vector<std::string> a;
    std::size_t root1 = 0, root2 = 0, rootp = 0;
    std::vector<std::size_t> roota;
    // rational ordinates, an alternative to root indices
    std::optional<std::string> y1, y2, yp;
    std::vector<std::string> b;
    int digits = 30;
    bool json = false;
    bool assume_smooth = false;
    int series_order = 2;
    bool timings = false;
    // test hook: perturbs E0 before verification
    bool corrupt_e0 = false;
};

struct Outcome {
    int exit_code = 0;
    Json doc;
};

namespace detail
{

inline std::string generator_name(std::size_t i)
{
    return "t" + std::to_string(i + 1);
}

inline std::string exponent_string(const Exponents &e)
{
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += generator_name(j);
        if (e[j] > 1) {
            s += "^" + std::to_string(e[j]);
        }
    }
    return s.empty() ? "1" : s;
}

} // namespace detail

// Exact form (generators used, reduced representative) plus a decimal.
inline Json tower_json(const TowerElement &v, int digits)
{
    Json out;
    Json gens = Json::array();
    if (v.tower()) {
        Tower &tw = *v.tower();
        for (auto j : v.support()) {
            const auto d = tw.descriptor(j);
            std::vector<Rational> ic;
            for (const auto &c : primitive_integer_coeffs(d->modulus)) {
                ic.push_back(Rational(c));
            }
            gens.push_back({{"name", detail::generator_name(j)},
                            {"modulus", to_string(UPoly(std::move(ic)), detail::generator_name(j))},
                            {"root_id", d->root_id},
                            {"approx", tw.approximate(tw.generator(j), digits).str()}});
        }
    }
    out["generators"] = gens;
    Json terms = Json::array();
    for (const auto &[e, c] : v.terms()) {
        terms.push_back({{"monomial", detail::exponent_string(e)}, {"coeff", to_string(c)}});
    }
    out["terms"] = terms;
    if (v.is_rational()) {
        out["rational"] = to_string(v.rational_value());
        out["decimal"] = to_decimal(v.rational_value(), digits);
    } else {
        out["decimal"] = v.tower()->approximate(v, digits).str();
    }
    return out;
}

namespace detail
{

inline std::string decimal(const TowerElement &v, int digits)
{
    if (v.is_rational() || !v.tower()) {
        return to_decimal(v.rational_value(), digits);
    }
    return v.tower()->approximate(v, digits).str();
}

class Stopwatch
{
public:
    void stage(Json &timings, const std::string &name)
    {
        const auto now = std::chrono::steady_clock::now();
        timings[name] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Chosen {
    Point point;
    Json echo;
};

inline Chosen choose_point(const Curve &c, Tower &tw, const std::string &name, const std::optional<std::string> &xtext,
                           const std::optional<std::string> &ytext, std::size_t root, int digits)
{
    if (!xtext) {
        raise(errc::invalid_argument, "missing --" + name);
    }
    const Rational x = parse_abscissa(*xtext);
    Chosen out;
    out.echo["x"] = to_string(x);
    if (ytext) {
        const Rational y = parse_rational(*ytext);
        out.point = make_point(c, x, TowerElement(y));
        out.echo["y"] = to_string(y);
        return out;
    }
    const auto sec = section_roots(c, x, tw);
    if (root >= sec.size()) {
        raise(errc::invalid_argument, "root index " + std::to_string(root) + " out of range 0.." + std::to_string(sec.size() - 1));
    }
    out.point = sec[root];
    out.echo["root_index"] = root;
    out.echo["section"] = to_string(section_polynomial(c, x));
    out.echo["y"] = decimal(out.point.y, digits);
    return out;
}

inline Json input_echo(const Request &rq)
{
    Json in;
    in["curve"] = rq.curve;
    auto opt = [&in](const char *k, const std::optional<std::string> &v) {
        if (v) {
            in[k] = *v;
        }
    };
    opt("x1", rq.x1);
    opt("x2", rq.x2);
    opt("xp", rq.xp);
    if (!rq.a.empty()) {
        in["a"] = rq.a;
    }
    opt("y1", rq.y1);
    opt("y2", rq.y2);
    opt("yp", rq.yp);
    if (!rq.b.empty()) {
        in["b"] = rq.b;
    }
    in["root1"] = rq.root1;
    in["root2"] = rq.root2;
    in["rootp"] = rq.rootp;
    if (!rq.roota.empty()) {
        in["roota"] = rq.roota;
    }
    in["digits"] = rq.digits;
    in["assume_smooth"] = rq.assume_smooth;
    in["series_order"] = rq.series_order;
    return in;
}

inline Json system_json(std::size_t rows, std::size_t cols)
{
    return {{"equations", rows}, {"unknowns", cols}};
}

inline Json differential_json(const ParametricDifferential &d, int digits)
{
    Json out;
    Json e0 = Json::array();
    for (std::size_t u = 0; u < d.unknowns.size(); ++u) {
        e0.push_back({{"unknown", unknown_label(d.unknowns[u])}, {"value", tower_json(d.e0_coeffs[u], digits)}});
    }
    out["denominator"] = "(x-x1)*(x2-x)*f_y";
    out["E0"] = e0;
    Json fk = Json::array();
    for (const auto &g : d.first_kind) {
        fk.push_back(to_string(g));
    }
    out["first_kind_numerators"] = fk;
    Json pn = Json::array();
    for (const auto &g : d.param_numerators) {
        pn.push_back(to_string(g));
    }
    out["parameter_numerators"] = pn;
    return out;
}

struct Verdicts {
    Json list = Json::array();
    bool all = true;

    void add(const std::string &name, bool pass, Json detail = nullptr)
    {
        Json j{{"check", name}, {"pass", pass}};
        if (!detail.is_null()) {
            j["detail"] = std::move(detail);
        }
        list.push_back(std::move(j));
        all = all && pass;
    }
};

inline void residue_verdicts(Verdicts &v, const std::vector<ResidueCheck> &checks, const std::string &prefix, int digits)
{
    for (const auto &rc : checks) {
        Json detail{{"expected", to_string(rc.expected)}, {"value", decimal(rc.value, digits)}};
        if (!rc.note.empty()) {
            detail["note"] = rc.note;
        }
        v.add(prefix + "residue at " + fiber_label(rc.x, rc.index), rc.ok, std::move(detail));
    }
    v.add(prefix + "residue sum is zero", residue_sum_zero(checks));
}

inline void run_command(const Request &rq, Json &result, Json &timings, int &exit_code)
{
    Stopwatch sw;
    const BPoly f = parse_poly(rq.curve);
    result["curve"] = to_string(f);
    if (rq.command == "smooth") {
        const auto rep = is_smooth(f);
        sw.stage(timings, "smoothness");
        result["smooth"] = rep.smooth;
        if (!rep.smooth) {
            result["witness"] = rep.witness;
        }
        return;
    }
    const Curve c(f, rq.assume_smooth);
    sw.stage(timings, "smoothness");
    result["degree"] = c.degree();
    result["smoothness"] = c.smoothness_verified() ? "verified" : "assumed";
    result["genus"] = genus(c);
    if (rq.command == "genus") {
        return;
    }
    if (rq.command == "first-kind") {
        Json nums = Json::array();
        for (const auto &g : first_kind_basis(c).numerators) {
            nums.push_back(to_string(g));
        }
        result["basis"] = nums;
        result["denominator"] = "f_y";
        return;
    }

    TowerPtr tw = Tower::create();
    const int digits = rq.digits;
    const Chosen p1 = choose_point(c, *tw, "x1", rq.x1, rq.y1, rq.root1, digits);
    const Chosen p2 = choose_point(c, *tw, "x2", rq.x2, rq.y2, rq.root2, digits);
    result["P1"] = p1.echo;
    result["P2"] = p2.echo;
    sw.stage(timings, "sections");

    ThirdKindOptions opt;
    opt.series_order = rq.series_order;
    opt.verify = false;

    if (rq.command == "haupt") {
        const std::size_t p = static_cast<std::size_t>(genus(c));
        const Chosen pp = choose_point(c, *tw, "xp", rq.xp, rq.yp, rq.rootp, digits);
        result["Pprime"] = pp.echo;
        if (rq.a.size() != p) {
            raise(errc::invalid_argument, "haupt needs exactly " + std::to_string(p) + " --a abscissas (the genus)");
        }
        std::vector<Point> poles;
        Json aj = Json::array();
        for (std::size_t i = 0; i < p; ++i) {
            const std::optional<std::string> bi = i < rq.b.size() ? std::optional<std::string>(rq.b[i]) : std::nullopt;
            const std::size_t ri = i < rq.roota.size() ? rq.roota[i] : 0;
            const Chosen ai = choose_point(c, *tw, "a", rq.a[i], bi, ri, digits);
            poles.push_back(ai.point);
            aj.push_back(ai.echo);
        }
        result["A"] = aj;
        opt.verify = true;
        const HauptResult h = haupt_eval(c, p1.point, p2.point, pp.point, poles, opt);
        sw.stage(timings, "haupt");
        Json params = Json::array();
        for (const auto &l : h.params) {
            params.push_back(tower_json(l, digits));
        }
        result["parameters"] = params;
        result["value"] = tower_json(h.value, digits);
        Verdicts v;
        for (std::size_t i = 0; i < poles.size(); ++i) {
            v.add("u vanishes at a_" + std::to_string(i + 1), is_zero(eval_u(h.differential, poles[i], h.params)));
        }
        residue_verdicts(v, check_residues(h.differential, h.params, rq.series_order), "", digits);
        sw.stage(timings, "verification");
        result["verification"] = v.list;
        result["all_pass"] = v.all;
        exit_code = v.all ? 0 : static_cast<int>(errc::verification_failed);
        return;
    }

    if (rq.command != "third-kind" && rq.command != "verify") {
        raise(errc::invalid_argument, "unknown subcommand '" + rq.command + "'");
    }
    ParametricDifferential d = third_kind(c, p1.point, p2.point, opt);
    sw.stage(timings, "solve");
    if (rq.corrupt_e0) {
        d.e0.add_term({0, 0}, TowerElement(1));
        d.e0_coeffs[0] += TowerElement(1);
    }
    const auto r = static_cast<std::size_t>(c.degree());
    result["naive_system"] = system_json(2 * r, d.unknowns.size());
    Json sym = system_json(2 * r, d.unknowns.size());
    sym["matrix"] = "rational";
    sym["rank"] = d.rank;
    sym["nullspace_dimension"] = d.nullspace_dim;
    result["symmetrized_system"] = sym;
    result["differential"] = differential_json(d, digits);

    Verdicts v;
    const auto checks = check_residues(d, {}, rq.series_order);
    residue_verdicts(v, checks, "", digits);
    sw.stage(timings, "residues");
    if (rq.command == "verify") {
        v.add("nullspace dimension equals genus", d.nullspace_dim == static_cast<std::size_t>(genus(c)));
        v.add("vandermonde equivalence", vandermonde_equivalent(c, d.p1, d.p2, d.fibers));
        if (d.parameter_count() > 0) {
            std::vector<TowerElement> ones(d.parameter_count(), TowerElement(1));
            std::vector<TowerElement> mixed;
            for (std::size_t j = 0; j < d.parameter_count(); ++j) {
                mixed.push_back(TowerElement(Rational(static_cast<long>(2 * j + 3), 7)));
            }
            bool same = true;
            for (const auto &params : {ones, mixed}) {
                const auto other = check_residues(d, params, rq.series_order);
                for (std::size_t i = 0; i < other.size(); ++i) {
                    same = same && is_zero(other[i].value - checks[i].value);
                }
            }
            v.add("first-kind perturbation leaves residues unchanged", same);
        }
        if (c.degree() == 2) {
            v.add("genus-0 parametrization", genus0_parametrization_check(d));
        }
        sw.stage(timings, "checks");
    }
    result["verification"] = v.list;
    result["all_pass"] = v.all;
    exit_code = v.all ? 0 : static_cast<int>(errc::verification_failed);
}

inline void render_human(const Json &j, std::ostream &os, const std::string &indent)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json &v = it.value();
        const std::string key = j.is_object() ? it.key() + ":" : "-";
        if (v.is_structured()) {
            os << indent << key << "\n";
            render_human(v, os, indent + "  ");
        } else if (v.is_string()) {
            os << indent << key << " " << v.get<std::string>() << "\n";
        } else {
            os << indent << key << " " << v.dump() << "\n";
        }
    }
}

} // namespace detail

inline Outcome run(const Request &rq)
{
    Outcome out;
    out.doc["schema"] = schema_version;
    out.doc["command"] = rq.command;
    out.doc["input"] = detail::input_echo(rq);
    Json result = Json::object();
    Json timings = Json::object();
    try {
        detail::run_command(rq, result, timings, out.exit_code);
        out.doc["result"] = result;
    } catch (const error &e) {
        out.exit_code = static_cast<int>(e.code());
        if (!result.empty()) {
            out.doc["result"] = result;
        }
        out.doc["error"] = {{"code", static_cast<int>(e.code())}, {"name", std::string(e.name())}, {"message", e.what()}};
    } catch (const std::exception &e) {
        out.exit_code = static_cast<int>(errc::internal);
        out.doc["error"] = {{"code", out.exit_code}, {"name", "InternalError"}, {"message", e.what()}};
    }
    if (rq.timings) {
        out.doc["timings_ms"] = timings;
    }
    return out;
}

inline std::string render(const Outcome &o, bool json)
{
    if (json) {
        return o.doc.dump(2) + "\n";
    }
    std::ostringstream os;
    detail::render_human(o.doc, os, "");
    return os.str();
}

} // namespace weier

#endif
