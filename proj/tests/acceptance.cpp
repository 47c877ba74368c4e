// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <weier/cli/parse.hpp>
#include <weier/cli/run.hpp>
#include <weier/differentials/differentials.hpp>

#include "oracles.hpp"

using namespace weier;

namespace
{

// pinned tolerances
const oracle::real power_sum_tol("1e-30");
const oracle::real haupt_digit_tol("1e-50");
constexpr double cubic_time_limit_s = 5.0;
constexpr int random_cubics = 10;

const char *cubic_text = "x^3-y^3+2*x*y+x-2*y+1";
const char *circle_text = "x^2+y^2-1";

struct Result {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

Point pick(const Curve &c, const Rational &x, std::size_t root, Tower &tw)
{
    return section_roots(c, x, tw).at(root);
}

bool residues_exact(const ParametricDifferential &d)
{
    const auto checks = check_residues(d, {});
    if (checks.size() != 2 * static_cast<std::size_t>(d.curve.degree())) {
        return false;
    }
    return residues_ok(checks) && residue_sum_zero(checks);
}

Result criterion1()
{
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    const Curve c(parse_poly(cubic_text));
    auto tw = Tower::create();
    const Point p1 = pick(c, 0, 0, *tw), p2 = pick(c, 1, 0, *tw);
    const auto pf = pole_fibers(c, p1, p2);
    const auto naive = third_kind_system_naive(c, p1, p2, pf);
    const LinearSystem<Rational> sym = third_kind_system_sym(c, p1, p2, pf);
    const auto d = third_kind(c, p1, p2);
    const bool ok = residues_exact(d);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.require(naive.matrix.rows() == 6 && naive.matrix.cols() == 6, "naive system is 6x6");
    r.require(sym.matrix.rows() == 6 && sym.matrix.cols() == 6, "symmetrized system is 6x6");
    r.require(ok, "residue verification");
    r.require(secs < cubic_time_limit_s, "time limit");
    r.note << " naive 6x6, symmetrized matrix Rational, rank " << d.rank << ", " << secs << " s";
    return r;
}

Result criterion2()
{
    Result r;
    {
        const Curve c(parse_poly(cubic_text));
        auto tw = Tower::create();
        r.require(residues_exact(third_kind(c, pick(c, 0, 0, *tw), pick(c, 1, 0, *tw))), "cubic fixture");
    }
    oracle::Gen g(20261016);
    int built = 0, attempts = 0;
    while (built < random_cubics && attempts < 1000) {
        ++attempts;
        const BPoly f = g.bpoly(3, 4);
        if (!is_smooth(f).smooth) {
            continue;
        }
        const Curve c(f);
        const Rational x1 = g.rational(5, 3), x2 = g.rational(5, 3);
        if (x1 == x2) {
            continue;
        }
        const UPoly s1 = section_polynomial(c, x1), s2 = section_polynomial(c, x2);
        if (s1.degree() != 3 || s2.degree() != 3 || !is_squarefree(s1) || !is_squarefree(s2)) {
            continue;
        }
        auto tw = Tower::create();
        const auto root = [&] { return static_cast<std::size_t>(g.integer(0, 2)); };
        const auto d = third_kind(c, pick(c, x1, root(), *tw), pick(c, x2, root(), *tw));
        r.require(residues_exact(d), to_string(f));
        ++built;
    }
    r.require(built >= random_cubics, "enough random cubics");
    r.note << " fixture + " << built << " random smooth cubics, 6 exact residues each";
    return r;
}

Result criterion3()
{
    Result r;
    {
        const Curve c(parse_poly(cubic_text));
        auto tw = Tower::create();
        const Point p1 = pick(c, 0, 0, *tw), p2 = pick(c, 1, 0, *tw);
        r.require(vandermonde_equivalent(c, p1, p2, pole_fibers(c, p1, p2)), "cubic");
    }
    {
        const Curve c(parse_poly(circle_text));
        auto tw = Tower::create();
        const Point p1 = pick(c, 0, 1, *tw), p2 = pick(c, Rational(1, 2), 0, *tw);
        r.require(vandermonde_equivalent(c, p1, p2, pole_fibers(c, p1, p2)), "conic");
    }
    r.note << " cubic and conic, both abscissas";
    return r;
}

// rank of the nullspace together with the embedded (x-x1)(x2-x) G_j
bool nullspace_spans_first_kind(const Curve &c, const Point &p1, const Point &p2, std::size_t &dim)
{
    const auto pf = pole_fibers(c, p1, p2);
    const auto sys = third_kind_system_sym(c, p1, p2, pf);
    const auto sol = ff_solve(sys.matrix, Matrix<TowerElement>::column(sys.rhs));
    dim = sol.nullspace.size();
    const auto basis = first_kind_basis(c).numerators;
    if (dim != basis.size()) {
        return false;
    }
    const BPoly x = BPoly::x();
    const BPoly lin = (x - BPoly(p1.x)) * (BPoly(p2.x) - x);
    RatMatrix m(2 * dim, sys.unknowns.size());
    for (std::size_t j = 0; j < dim; ++j) {
        const BPoly n = lin * basis[j];
        for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
            m(j, u) = n.coeff(sys.unknowns[u]);
            m(dim + j, u) = sol.nullspace[j][u];
        }
    }
    return dim == 0 || rank(m) == dim;
}

Result criterion4()
{
    Result r;
    r.require(genus(Curve(parse_poly(circle_text))) == 0, "conic genus");
    r.require(genus(Curve(parse_poly(cubic_text))) == 1, "cubic genus");
    r.require(genus(Curve(parse_poly("x^4+y^4-1"))) == 3, "quartic genus");
    std::size_t dc = 0, dq = 0;
    {
        const Curve c(parse_poly(cubic_text));
        auto tw = Tower::create();
        r.require(nullspace_spans_first_kind(c, pick(c, 0, 0, *tw), pick(c, 1, 0, *tw), dc) && dc == 1, "cubic nullspace");
    }
    {
        const Curve c(parse_poly(circle_text));
        auto tw = Tower::create();
        r.require(nullspace_spans_first_kind(c, pick(c, 0, 1, *tw), pick(c, Rational(1, 2), 0, *tw), dq) && dq == 0, "conic nullspace");
    }
    r.note << " genus 0/1/3, nullspace dim cubic " << dc << ", conic " << dq;
    return r;
}

Result criterion5()
{
    Result r;
    r.require(power_sums(UPoly({Rational(-1), Rational(2), Rational(0), Rational(1)}), 4) == std::vector<Rational>{3, 0, -4, 3}, "y^3+2y-1");
    r.require(power_sums(UPoly({Rational(-3), Rational(0), Rational(0), Rational(1)}), 4) == std::vector<Rational>{3, 0, 0, 9}, "y^3-3");
    oracle::Gen g(5);
    int tested = 0;
    oracle::real worst = 0;
    while (tested < 20) {
        const UPoly p = g.upoly(static_cast<int>(g.integer(1, 6)), 9);
        if (!is_squarefree(p)) {
            continue;
        }
        ++tested;
        const auto exact = power_sums(p, 7);
        const auto numeric = oracle::power_sums(p, 7);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            const oracle::real e = oracle::to_real(exact[k]);
            const oracle::real err = abs(numeric[k] - oracle::cplx(e)) / std::max(oracle::real(1), oracle::real(abs(e)));
            worst = std::max(worst, err);
        }
    }
    r.require(worst < power_sum_tol, "numeric agreement");
    r.note << " fixtures exact, 20 random polynomials, worst relative error " << std::setprecision(3) << static_cast<double>(worst);
    return r;
}

Result criterion6()
{
    Result r;
    const Curve c(parse_poly(circle_text));
    auto tw = Tower::create();
    const Rational x1 = 0, x2(1, 2);
    const Point p1 = pick(c, x1, 1, *tw), p2 = pick(c, x2, 0, *tw);
    const auto d = third_kind(c, p1, p2);
    r.require(d.parameter_count() == 0, "unique differential");
    // x = X/W, y = 2t/W with X = 1-t^2, W = 1+t^2. Pulled back, the
    // differential is -En / ((X - x1 W)(x2 W - X)) dt, En = e00 W + e10 X + 2 e01 t.
    using TP = Poly<TowerElement>;
    const TP X{TowerElement(1), TowerElement(), TowerElement(-1)};
    const TP W{TowerElement(1), TowerElement(), TowerElement(1)};
    const TP T{TowerElement(), TowerElement(1)};
    const TP en = W.scaled(d.e0.coeff({0, 0})) + X.scaled(d.e0.coeff({1, 0})) + T.scaled(d.e0.coeff({0, 1}) * Rational(2));
    const TP num = -en;
    const TP den = (X - W.scaled(TowerElement(x1))) * (W.scaled(TowerElement(x2)) - X);
    const TowerElement t1 = p1.y / TowerElement(1 + x1);
    const TowerElement t2 = p2.y / TowerElement(1 + x2);
    r.require(!is_zero(t1 - t2), "distinct poles");
    // R = NUM/DEN must equal (t1 - t2) / ((t - t1)(t - t2)): two simple poles,
    // residue +1 at t1 and -1 at t2.
    const TP check = num * TP{-t1, TowerElement(1)} * TP{-t2, TowerElement(1)} - den.scaled(t1 - t2);
    bool zero = true;
    for (const auto &cf : check.coeffs()) {
        zero = zero && is_zero(cf);
    }
    r.require(zero, "pullback identity");
    r.require(genus0_parametrization_check(d), "line-pencil check");
    r.note << " R(t) = 1/(t-t1) - 1/(t-t2) exactly, t1 = " << tw->approximate(t1, 6).str() << ", t2 = " << tw->approximate(t2, 6).str();
    return r;
}

Result criterion7()
{
    Result r;
    const Curve c(parse_poly(cubic_text));
    auto tw = Tower::create();
    const Point p1 = pick(c, 0, 0, *tw), p2 = pick(c, 1, 0, *tw);
    const Point a = pick(c, 2, 0, *tw), pp = pick(c, 3, 0, *tw);
    const auto h = haupt_eval(c, p1, p2, pp, {a});
    r.require(h.params.size() == 1, "one parameter");
    r.require(is_zero(eval_u(h.differential, a, h.params)), "u vanishes at (2, b1)");
    const auto d50 = tw->approximate(h.value, 50);
    const auto d100 = tw->approximate(h.value, 100);
    const oracle::cplx v50{oracle::real(d50.re), oracle::real(d50.im)};
    const oracle::cplx v100{oracle::real(d100.re), oracle::real(d100.im)};
    r.require(abs(v50 - v100) < haupt_digit_tol, "50 vs 100 digits");
    r.note << " h = " << d50.str();
    return r;
}

Result criterion8()
{
    Result r;
    auto req = [](const std::string &x1, const std::string &x2) {
        Request rq;
        rq.command = "third-kind";
        rq.curve = circle_text;
        rq.x1 = x1;
        rq.x2 = x2;
        rq.json = true;
        return rq;
    };
    Request tangent = req("0", "1");
    Request same = req("1/2", "1/2");
    same.root2 = 1;
    Request off = req("0", "1/2");
    off.y2 = "1";
    const Outcome a = run(tangent), b = run(same), o = run(off);
    auto name = [](const Outcome &x) { return x.doc.contains("error") ? x.doc["error"]["name"].get<std::string>() : std::string("none"); };
    r.require(name(a) == "MultipleRoots", "tangent abscissa");
    r.require(name(b) == "SameAbscissa", "same abscissa");
    r.require(name(o) == "PointNotOnCurve", "off-curve point");
    r.require(a.exit_code != b.exit_code && b.exit_code != o.exit_code && a.exit_code != o.exit_code && a.exit_code && b.exit_code && o.exit_code,
              "distinct exit codes");
    r.note << " exit codes " << a.exit_code << "/" << b.exit_code << "/" << o.exit_code;
    return r;
}

} // namespace

int main()
{
    const std::pair<const char *, std::function<Result()>> criteria[] = {
        {"1 cubic end-to-end", criterion1},
        {"2 exact residue certification", criterion2},
        {"3 vandermonde equivalence", criterion3},
        {"4 genus and nullspace", criterion4},
        {"5 power sums", criterion5},
        {"6 genus-0 closed form", criterion6},
        {"7 fundamental function", criterion7},
        {"8 error paths", criterion8},
    };
    int failed = 0;
    for (const auto &[name, fn] : criteria) {
        Result r;
        try {
            r = fn();
        } catch (const std::exception &e) {
            r.pass = false;
            r.note << " [exception: " << e.what() << "]";
        }
        failed += r.pass ? 0 : 1;
        std::cout << (r.pass ? "PASS " : "FAIL ") << name << ":" << r.note.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
