#ifndef WEIER_DIFFERENTIALS_DIFFERENTIALS_HPP
#define WEIER_DIFFERENTIALS_DIFFERENTIALS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <weier/algebraic/tower.hpp>
#include <weier/core/bpoly.hpp>
#include <weier/core/errors.hpp>
#include <weier/core/linsolve.hpp>
#include <weier/core/matrix.hpp>
#include <weier/curve/curve.hpp>

namespace weier
{

using TowerBPoly = BivariatePoly<TowerElement>;

inline TowerBPoly lift(const BPoly &p)
{
    TowerBPoly out;
    for (const auto &[m, c] : p.terms()) {
        out.add_term(m, TowerElement(c));
    }
    return out;
}

template <typename T>
TowerElement eval_at(const BivariatePoly<T> &p, const Point &pt)
{
    return p(TowerElement(pt.x), pt.y);
}

// Monomials of total degree <= d, by degree, then by ascending power of y.
inline std::vector<Monomial> monomials_up_to(int d)
{
    std::vector<Monomial> out;
    for (int k = 0; k <= d; ++k) {
        for (int j = 0; j <= k; ++j) {
            out.push_back({static_cast<unsigned>(k - j), static_cast<unsigned>(j)});
        }
    }
    return out;
}

inline std::string unknown_label(Monomial m)
{
    return "c_{" + std::to_string(m.x) + "," + std::to_string(m.y) + "}";
}

struct FirstKindBasis {
    // E with deg E <= r-3; the differentials are E dx / f_y
    std::vector<BPoly> numerators;
};

inline FirstKindBasis first_kind_basis(const Curve &c)
{
    FirstKindBasis b;
    for (const auto &m : monomials_up_to(c.degree() - 3)) {
        b.numerators.push_back(BPoly::term(m, Rational(1)));
    }
    return b;
}

template <typename S>
struct LinearSystem {
    Matrix<S> matrix;
    std::vector<TowerElement> rhs;
    std::vector<Monomial> unknowns;
    // which condition produced each row
    std::vector<std::string> row_labels;
};

// The two pole fibers: all ordinates over x1 and x2 in canonical order, with
// the pole itself substituted at its position.
struct PoleFibers {
    std::vector<Point> fiber1, fiber2;
    std::size_t pole1 = 0, pole2 = 0;
};

namespace detail
{

inline TowerPtr tower_of(std::initializer_list<const Point *> pts)
{
    for (const auto *p : pts) {
        if (p->y.tower()) {
            return p->y.tower();
        }
    }
    return Tower::create();
}

inline std::size_t locate(const std::vector<Point> &fiber, const Point &p)
{
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        if (is_zero(fiber[i].y - p.y)) {
            if (hit) {
                raise(errc::internal, "point matches two section ordinates");
            }
            hit = i;
        }
    }
    if (!hit) {
        raise(errc::point_not_on_curve, "point is not among the section ordinates over x = " + to_string(p.x));
    }
    return *hit;
}

inline std::string fiber_label(const Rational &x, std::size_t j)
{
    return "x=" + to_string(x) + ",y#" + std::to_string(j);
}

} // namespace detail

inline PoleFibers pole_fibers(const Curve &c, const Point &p1, const Point &p2)
{
    if (p1.x == p2.x) {
        raise(errc::same_abscissa, "poles share the abscissa " + to_string(p1.x));
    }
    make_point(c, p1.x, p1.y);
    make_point(c, p2.x, p2.y);
    TowerPtr tw = detail::tower_of({&p1, &p2});
    PoleFibers pf;
    pf.fiber1 = section_roots(c, p1.x, *tw);
    pf.fiber2 = section_roots(c, p2.x, *tw);
    pf.pole1 = detail::locate(pf.fiber1, p1);
    pf.pole2 = detail::locate(pf.fiber2, p2);
    pf.fiber1[pf.pole1] = p1;
    pf.fiber2[pf.pole2] = p2;
    return pf;
}

namespace detail
{

// Residue condition value (x2-x1) f_y at a pole; the same sign serves both
// poles because (x2-x) changes sign relative to (x-x1).
inline TowerElement pole_rhs(const Curve &c, const Point &p, const Rational &x1, const Rational &x2)
{
    return fy_at(c, p) * (x2 - x1);
}

} // namespace detail

// E(x_i, y) = 0 at every non-pole ordinate, E = (x2-x1) f_y at the poles.
inline LinearSystem<TowerElement> third_kind_system_naive(const Curve &c, const Point &p1, const Point &p2, const PoleFibers &pf)
{
    LinearSystem<TowerElement> sys;
    sys.unknowns = monomials_up_to(c.degree() - 1);
    const std::size_t r = static_cast<std::size_t>(c.degree());
    sys.matrix = Matrix<TowerElement>(2 * r, sys.unknowns.size());
    std::size_t row = 0;
    for (int i = 0; i < 2; ++i) {
        const auto &fiber = i == 0 ? pf.fiber1 : pf.fiber2;
        const std::size_t pole = i == 0 ? pf.pole1 : pf.pole2;
        for (std::size_t j = 0; j < fiber.size(); ++j, ++row) {
            const Point &pt = fiber[j];
            std::vector<TowerElement> ypow{TowerElement(1)};
            for (std::size_t k = 1; k < r; ++k) {
                ypow.push_back(ypow.back() * pt.y);
            }
            for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
                const Monomial m = sys.unknowns[u];
                sys.matrix(row, u) = ypow[m.y] * pow(pt.x, m.x);
            }
            if (j == pole) {
                sys.rhs.push_back(detail::pole_rhs(c, pt, p1.x, p2.x));
                sys.row_labels.push_back("residue(" + detail::fiber_label(pt.x, j) + ")");
            } else {
                sys.rhs.push_back(TowerElement());
                sys.row_labels.push_back("vanish(" + detail::fiber_label(pt.x, j) + ")");
            }
        }
    }
    return sys;
}

// Row k of fiber i: sum_j y_j^k E(x_i, y_j) = y_pole^k (x2-x1) f_y(pole).
// The coefficients are power sums of f(x_i, y), hence rational.
inline LinearSystem<Rational> third_kind_system_sym(const Curve &c, const Point &p1, const Point &p2, const PoleFibers &pf)
{
    LinearSystem<Rational> sys;
    sys.unknowns = monomials_up_to(c.degree() - 1);
    const std::size_t r = static_cast<std::size_t>(c.degree());
    sys.matrix = RatMatrix(2 * r, sys.unknowns.size());
    std::size_t row = 0;
    for (int i = 0; i < 2; ++i) {
        const Point &pole = i == 0 ? p1 : p2;
        const std::size_t pidx = i == 0 ? pf.pole1 : pf.pole2;
        const Point &pt = (i == 0 ? pf.fiber1 : pf.fiber2)[pidx];
        const std::vector<Rational> ps = power_sums(section_polynomial(c, pole.x), 2 * r - 1);
        const TowerElement base = detail::pole_rhs(c, pt, p1.x, p2.x);
        TowerElement yk(1);
        for (std::size_t k = 0; k < r; ++k, ++row) {
            for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
                const Monomial m = sys.unknowns[u];
                sys.matrix(row, u) = pow(pole.x, m.x) * ps[k + m.y];
            }
            sys.rhs.push_back(yk * base);
            sys.row_labels.push_back("sym(x=" + to_string(pole.x) + ",k=" + std::to_string(k) + ")");
            yk = yk * pt.y;
        }
    }
    return sys;
}

// A third-kind differential plus the first-kind family:
// u dx = (E0 + (x-x1)(x2-x) sum_j l_j G_j) dx / ((x-x1)(x2-x) f_y).
struct ParametricDifferential {
    Curve curve;
    Point p1, p2;
    PoleFibers fibers;
    std::vector<Monomial> unknowns;
    // coefficients of E0 on `unknowns`
    std::vector<TowerElement> e0_coeffs;
    TowerBPoly e0;
    std::vector<BPoly> first_kind;
    // (x-x1)(x2-x) G_j
    std::vector<BPoly> param_numerators;
    std::size_t rank = 0;
    std::size_t nullspace_dim = 0;

    std::size_t parameter_count() const noexcept
    {
        return first_kind.size();
    }

    TowerBPoly numerator(const std::vector<TowerElement> &params) const
    {
        if (!params.empty() && params.size() != param_numerators.size()) {
            raise(errc::invalid_argument, "expected " + std::to_string(param_numerators.size()) + " parameters");
        }
        TowerBPoly e = e0;
        for (std::size_t j = 0; j < params.size(); ++j) {
            for (const auto &[m, c] : param_numerators[j].terms()) {
                e.add_term(m, params[j] * c);
            }
        }
        return e;
    }

    // (x-x1)(x2-x)
    BPoly pole_factor() const
    {
        const BPoly x = BPoly::x();
        return (x - BPoly(p1.x)) * (BPoly(p2.x) - x);
    }
};

namespace detail
{

inline std::vector<Rational> embed(const BPoly &p, const std::vector<Monomial> &unknowns)
{
    std::vector<Rational> v(unknowns.size());
    for (const auto &[m, c] : p.terms()) {
        std::size_t u = 0;
        while (u < unknowns.size() && !(unknowns[u] == m)) {
            ++u;
        }
        if (u == unknowns.size()) {
            raise(errc::internal, "monomial outside the unknown space");
        }
        v[u] = c;
    }
    return v;
}

} // namespace detail

struct ResidueCheck {
    Rational x;
    std::size_t index = 0;
    Rational expected;
    TowerElement value;
    bool ok = false;
    std::string note;
};

// Residue of the assigned differential at a point over x1 or x2, from the
// local series x = x0 + t, y = y(t), independently of the linear system.
inline TowerElement residue_at(const ParametricDifferential &d, const Point &p, const std::vector<TowerElement> &params, int order = 2)
{
    if (p.x != d.p1.x && p.x != d.p2.x) {
        raise(errc::invalid_argument, "residue_at: point must lie over a pole abscissa");
    }
    const Curve &c = d.curve;
    const LocalSeries ls = local_series(c, p, order);
    const Series y = ls.y_series();
    const Series num = substitute(d.numerator(params), p.x, y, order);
    const Series fy = substitute(c.fy(), p.x, y, order);
    const Series lin = mul_trunc(Series{TowerElement(p.x - d.p1.x), TowerElement(1)}, Series{TowerElement(d.p2.x - p.x), TowerElement(-1)}, order);
    const Series den = mul_trunc(lin, fy, order);

    auto valuation = [order](const Series &s) {
        for (int k = 0; k <= s.degree() && k <= order; ++k) {
            if (!is_zero(s.coeffs()[static_cast<std::size_t>(k)])) {
                return k;
            }
        }
        return order + 1;
    };
    const int vd = valuation(den);
    if (vd > order) {
        raise(errc::internal, "denominator vanishes to the series order");
    }
    const int vn = valuation(num);
    if (vn >= vd) {
        return TowerElement();
    }
    if (vd - vn > 1) {
        raise(errc::higher_order_pole, "pole of order " + std::to_string(vd - vn) + " over x = " + to_string(p.x));
    }
    return num.coeffs()[static_cast<std::size_t>(vn)] / den.coeffs()[static_cast<std::size_t>(vd)];
}

// +1 at P1, -1 at P2, 0 at the other 2r-2 section points.
inline std::vector<ResidueCheck> check_residues(const ParametricDifferential &d, const std::vector<TowerElement> &params, int order = 2)
{
    std::vector<ResidueCheck> out;
    for (int i = 0; i < 2; ++i) {
        const auto &fiber = i == 0 ? d.fibers.fiber1 : d.fibers.fiber2;
        const std::size_t pole = i == 0 ? d.fibers.pole1 : d.fibers.pole2;
        for (std::size_t j = 0; j < fiber.size(); ++j) {
            ResidueCheck rc;
            rc.x = fiber[j].x;
            rc.index = j;
            rc.expected = j == pole ? Rational(i == 0 ? 1 : -1) : Rational(0);
            try {
                rc.value = residue_at(d, fiber[j], params, order);
                rc.ok = is_zero(rc.value - TowerElement(rc.expected));
            } catch (const error &e) {
                rc.ok = false;
                rc.note = std::string(e.name()) + ": " + e.what();
            }
            out.push_back(std::move(rc));
        }
    }
    return out;
}

inline bool residues_ok(const std::vector<ResidueCheck> &checks)
{
    for (const auto &c : checks) {
        if (!c.ok) {
            return false;
        }
    }
    return true;
}

inline bool residue_sum_zero(const std::vector<ResidueCheck> &checks)
{
    TowerElement s;
    for (const auto &c : checks) {
        s += c.value;
    }
    return is_zero(s);
}

struct ThirdKindOptions {
    int series_order = 2;
    // construction normally refuses to return an uncertified differential
    bool verify = true;
};

inline ParametricDifferential third_kind(const Curve &c, const Point &p1, const Point &p2, const ThirdKindOptions &opt = {})
{
    PoleFibers pf = pole_fibers(c, p1, p2);
    const LinearSystem<Rational> sys = third_kind_system_sym(c, p1, p2, pf);
    const auto sol = ff_solve(sys.matrix, Matrix<TowerElement>::column(sys.rhs));

    ParametricDifferential d{c, pf.fiber1[pf.pole1], pf.fiber2[pf.pole2], std::move(pf), sys.unknowns, {}, {}, {}, {}, sol.rank, sol.nullspace.size()};
    d.first_kind = first_kind_basis(c).numerators;
    const std::size_t p = d.first_kind.size();
    if (sol.nullspace.size() != p) {
        raise(errc::internal, "nullspace dimension " + std::to_string(sol.nullspace.size()) + " differs from the genus " + std::to_string(p));
    }
    const BPoly lin = d.pole_factor();
    RatMatrix span(2 * p, sys.unknowns.size());
    for (std::size_t j = 0; j < p; ++j) {
        d.param_numerators.push_back(lin * d.first_kind[j]);
        const auto v = detail::embed(d.param_numerators[j], sys.unknowns);
        for (std::size_t u = 0; u < v.size(); ++u) {
            span(j, u) = v[u];
            span(p + j, u) = sol.nullspace[j][u];
        }
    }
    if (p > 0 && rank(span) != p) {
        raise(errc::internal, "nullspace is not spanned by the first-kind numerators");
    }

    // E0: particular solution minus its projection on the nullspace.
    const std::size_t n = sys.unknowns.size();
    std::vector<TowerElement> e0(n);
    for (std::size_t u = 0; u < n; ++u) {
        e0[u] = sol.particular(u, 0);
    }
    if (p > 0) {
        RatMatrix gram(p, p);
        Matrix<TowerElement> proj(p, 1);
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = 0; b < p; ++b) {
                Rational s = 0;
                for (std::size_t u = 0; u < n; ++u) {
                    s += sol.nullspace[a][u] * sol.nullspace[b][u];
                }
                gram(a, b) = s;
            }
            TowerElement s;
            for (std::size_t u = 0; u < n; ++u) {
                s += e0[u] * sol.nullspace[a][u];
            }
            proj(a, 0) = s;
        }
        const auto lam = ff_solve(gram, proj);
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t u = 0; u < n; ++u) {
                e0[u] -= lam.particular(a, 0) * sol.nullspace[a][u];
            }
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        d.e0.add_term(sys.unknowns[u], e0[u]);
    }
    d.e0_coeffs = std::move(e0);

    if (opt.verify) {
        for (const auto &rc : check_residues(d, {}, opt.series_order)) {
            if (!rc.ok) {
                raise(errc::verification_failed, "residue check failed at " + detail::fiber_label(rc.x, rc.index) + (rc.note.empty() ? "" : " (" + rc.note + ")"));
            }
        }
    }
    return d;
}

// Value of u = E / ((x-x1)(x2-x) f_y) at a point off the pole fibers.
inline TowerElement eval_u(const ParametricDifferential &d, const Point &p, const std::vector<TowerElement> &params)
{
    if (p.x == d.p1.x || p.x == d.p2.x) {
        raise(errc::evaluation_at_pole, "eval_u over a pole abscissa x = " + to_string(p.x));
    }
    const TowerElement fy = fy_at(d.curve, p);
    if (is_zero(fy)) {
        raise(errc::evaluation_at_pole, "f_y vanishes at the evaluation point");
    }
    const Rational lin = (p.x - d.p1.x) * (d.p2.x - p.x);
    return eval_at(d.numerator(params), p) / (fy * lin);
}

struct HauptResult {
    TowerElement value;
    std::vector<TowerElement> params;
    ParametricDifferential differential;
};

// Fundamental function at P1: poles at P' and the A_i, residue -1 at P',
// zero at P2. Step 2 fixes the first-kind parameters so that u vanishes at
// every A_i; step 3 evaluates u at P'.
inline HauptResult haupt_eval(const Curve &c, const Point &p1, const Point &p2, const Point &pp, const std::vector<Point> &poles, const ThirdKindOptions &opt = {})
{
    const std::size_t p = static_cast<std::size_t>(genus(c));
    if (poles.size() != p) {
        raise(errc::invalid_argument, "haupt_eval needs " + std::to_string(p) + " points a_i, got " + std::to_string(poles.size()));
    }
    std::vector<Rational> xs{p1.x, p2.x, pp.x};
    for (const auto &a : poles) {
        xs.push_back(a.x);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i] == xs[j]) {
                raise(errc::same_abscissa, "abscissa " + to_string(xs[i]) + " is used twice");
            }
        }
    }
    make_point(c, pp.x, pp.y);
    for (const auto &a : poles) {
        make_point(c, a.x, a.y);
    }

    HauptResult out{TowerElement(), {}, third_kind(c, p1, p2, opt)};
    const ParametricDifferential &d = out.differential;

    // M l = -u(A) with M[i][j] = G_j(A_i) / f_y(A_i)
    Matrix<TowerElement> m(p, p + 1);
    for (std::size_t i = 0; i < p; ++i) {
        const TowerElement fy = fy_at(c, poles[i]);
        if (is_zero(fy)) {
            raise(errc::evaluation_at_pole, "f_y vanishes at a_" + std::to_string(i + 1));
        }
        const TowerElement inv = invert(fy);
        for (std::size_t j = 0; j < p; ++j) {
            m(i, j) = eval_at(d.first_kind[j], poles[i]) * inv;
        }
        m(i, p) = -eval_u(d, poles[i], {});
    }
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t piv = k;
        while (piv < p && is_zero(m(piv, k))) {
            ++piv;
        }
        if (piv == p) {
            raise(errc::degenerate_points, "the points a_i are not in general position (singular step-2 system)");
        }
        m.swap_rows(k, piv);
        const TowerElement inv = invert(m(k, k));
        for (std::size_t j = k; j <= p; ++j) {
            m(k, j) = m(k, j) * inv;
        }
        for (std::size_t i = 0; i < p; ++i) {
            if (i == k || is_null(m(i, k))) {
                continue;
            }
            const TowerElement f = m(i, k);
            for (std::size_t j = k; j <= p; ++j) {
                m(i, j) = m(i, j) - f * m(k, j);
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        out.params.push_back(m(i, p));
    }
    out.value = eval_u(d, pp, out.params);
    return out;
}

// Multiplying each naive fiber block by the Vandermonde matrix of the fiber
// ordinates must give the symmetrized block, entry by entry and on the rhs.
inline bool vandermonde_equivalent(const Curve &c, const Point &p1, const Point &p2, const PoleFibers &pf)
{
    const auto naive = third_kind_system_naive(c, p1, p2, pf);
    const auto sym = third_kind_system_sym(c, p1, p2, pf);
    const std::size_t r = static_cast<std::size_t>(c.degree());
    for (std::size_t i = 0; i < 2; ++i) {
        const auto &fiber = i == 0 ? pf.fiber1 : pf.fiber2;
        std::vector<TowerElement> ys;
        for (const auto &pt : fiber) {
            ys.push_back(pt.y);
        }
        const auto v = vandermonde(ys);
        const auto lhs = v * naive.matrix.row_block(i * r, r);
        std::vector<TowerElement> nrhs(naive.rhs.begin() + static_cast<std::ptrdiff_t>(i * r), naive.rhs.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
        const auto rhs = v * Matrix<TowerElement>::column(nrhs);
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t u = 0; u < lhs.cols(); ++u) {
                if (!is_zero(lhs(k, u) - TowerElement(sym.matrix(i * r + k, u)))) {
                    return false;
                }
            }
            if (!is_zero(rhs(k, 0) - sym.rhs[i * r + k])) {
                return false;
            }
        }
    }
    return true;
}

// Genus-0 cross-check for conics. Lines of slope s through P1 parametrize
// the curve: x = x1 - L/Q, y = y1 - s L/Q with L = f_x(P1) + s f_y(P1) and
// Q = f_2(1, s). The pulled-back differential R(s) ds must equal
// ds/(s-s1) - ds/(s-s2), s1 the tangent slope at P1 and s2 the slope of
// the chord P1P2.
inline bool genus0_parametrization_check(const ParametricDifferential &d)
{
    const Curve &c = d.curve;
    if (c.degree() != 2) {
        raise(errc::invalid_argument, "parametrization check needs a conic");
    }
    const Point &p1 = d.p1;
    const Point &p2 = d.p2;
    const TowerElement fx1 = eval_bpoly(c.fx(), p1.x, p1.y);
    const TowerElement fy1 = fy_at(c, p1);
    const Series l{fx1, fy1};
    const BPoly top = c.f().form(2);
    const UPoly q_rat = top.at_x(1);
    std::vector<TowerElement> qv;
    for (const auto &q : q_rat.coeffs()) {
        qv.push_back(TowerElement(q));
    }
    const Series q(std::move(qv));
    const Series s{TowerElement(), TowerElement(1)};
    // homogeneous coordinates (X : Y : Z) of the parametrized point
    const Series xh = q * Series(TowerElement(p1.x)) - l;
    const Series yh = q * Series(p1.y) - s * l;
    const Series zh = q;

    auto homog1 = [&](const TowerBPoly &e) {
        // e has degree <= 1
        Series acc;
        for (const auto &[m, cf] : e.terms()) {
            if (m.x == 1) {
                acc = acc + xh * Series(cf);
            } else if (m.y == 1) {
                acc = acc + yh * Series(cf);
            } else {
                acc = acc + zh * Series(cf);
            }
        }
        return acc;
    };
    const Series en = homog1(d.numerator({}));
    const Series fn = homog1(lift(c.fy()));
    const Series num = en * (derivative(l) * q - l * derivative(q));
    const Series den = l * (q * Series(TowerElement(p2.x - p1.x)) + l) * fn;
    const TowerElement s1 = -(fx1 / fy1);
    const TowerElement s2 = (p2.y - p1.y) / TowerElement(p2.x - p1.x);
    const Series check = num * Series{-s1, TowerElement(1)} * Series{-s2, TowerElement(1)} - den * Series(s1 - s2);
    if (den.is_zero()) {
        return false;
    }
    for (const auto &cf : check.coeffs()) {
        if (!is_zero(cf)) {
            return false;
        }
    }
    return true;
}

} // namespace weier

#endif
