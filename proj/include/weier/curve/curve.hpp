#ifndef WEIER_CURVE_CURVE_HPP
#define WEIER_CURVE_CURVE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <weier/algebraic/tower.hpp>
#include <weier/core/bpoly.hpp>
#include <weier/core/errors.hpp>
#include <weier/core/resultant.hpp>
#include <weier/core/upoly.hpp>

namespace weier
{

struct SmoothnessReport {
    bool smooth = true;
    // empty when smooth; otherwise describes where f, f_x, f_y meet
    std::string witness;
};

namespace detail
{

// Polynomial in y whose coefficients are polynomials in x, lowest first.
using YPoly = std::vector<UPoly>;

inline YPoly coeffs_in_y(const BPoly &p)
{
    YPoly out(static_cast<std::size_t>(std::max(p.degree_y(), -1) + 1));
    for (const auto &[m, c] : p.terms()) {
        out[m.y] = out[m.y] + UPoly::monomial(c, m.x);
    }
    return out;
}

inline void trim(YPoly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

inline YPoly reduce_mod(YPoly p, const UPoly &g)
{
    for (auto &c : p) {
        c = divmod(c, g).second;
    }
    trim(p);
    return p;
}

struct Branch {
    UPoly g;
    YPoly gcd;
};

// gcd in y of a and b over Q[x]/(g) for square-free g. Whenever a leading
// coefficient turns out to be a zero divisor, g is split and both factors
// are continued separately, so each branch has a gcd of uniform degree.
inline void split_gcd(const UPoly &g, YPoly a, YPoly b, std::vector<Branch> &out)
{
    a = reduce_mod(std::move(a), g);
    b = reduce_mod(std::move(b), g);
    for (;;) {
        if (b.empty()) {
            if (!a.empty()) {
                const UPoly h = gcd(a.back(), g);
                if (h.degree() > 0) {
                    split_gcd(h, a, b, out);
                    split_gcd(divmod(g, h).first, a, b, out);
                    return;
                }
            }
            out.push_back({g, std::move(a)});
            return;
        }
        const UPoly h = gcd(b.back(), g);
        if (h.degree() > 0) {
            split_gcd(h, a, b, out);
            split_gcd(divmod(g, h).first, a, b, out);
            return;
        }
        const UPoly inv = xgcd(b.back(), g).s;
        const std::size_t db = b.size() - 1;
        while (!a.empty() && a.size() > db) {
            const std::size_t shift = a.size() - 1 - db;
            const UPoly q = divmod(a.back() * inv, g).second;
            for (std::size_t j = 0; j <= db; ++j) {
                a[shift + j] = divmod(a[shift + j] - q * b[j], g).second;
            }
            trim(a);
        }
        std::swap(a, b);
    }
}

inline std::string describe_branch(const Branch &br)
{
    std::string ys;
    if (br.g.degree() == 1) {
        const Rational x0 = -br.g.coeffs()[0] / br.g.coeffs()[1];
        UPoly py;
        for (std::size_t j = 0; j < br.gcd.size(); ++j) {
            py = py + UPoly::monomial(br.gcd[j](x0), j);
        }
        return "x = " + to_string(x0) + ", y a root of " + to_string(monic(py), "y");
    }
    return "x a root of " + to_string(br.g, "x");
}

} // namespace detail

// Exact smoothness test of the projective closure of f = 0.
inline SmoothnessReport is_smooth(const BPoly &f)
{
    const int r = f.total_degree();
    if (r < 1) {
        raise(errc::invalid_argument, "is_smooth needs a nonconstant polynomial");
    }
    SmoothnessReport rep;
    const BPoly fx = f.derivative_x();
    const BPoly fy = f.derivative_y();

    // affine part
    if (f.degree_y() == 0) {
        if (r > 1) {
            rep.smooth = false;
            rep.witness = "curve is a union of " + std::to_string(r) + " parallel lines counted with multiplicity, meeting at [0:1:0]";
            return rep;
        }
    } else {
        const UPoly res = resultant_y(detail::coeffs_in_y(f), detail::coeffs_in_y(fy));
        if (res.is_zero()) {
            rep.smooth = false;
            rep.witness = "f and f_y share a component (repeated factor)";
            return rep;
        }
        if (res.degree() > 0) {
            const UPoly g = squarefree_part(res);
            std::vector<detail::Branch> first;
            detail::split_gcd(g, detail::coeffs_in_y(f), detail::coeffs_in_y(fx), first);
            for (const auto &b1 : first) {
                if (b1.gcd.size() < 2) {
                    continue;
                }
                std::vector<detail::Branch> second;
                detail::split_gcd(b1.g, b1.gcd, detail::coeffs_in_y(fy), second);
                for (const auto &b2 : second) {
                    if (b2.gcd.size() >= 2) {
                        rep.smooth = false;
                        rep.witness = "singular point with " + detail::describe_branch(b2);
                        return rep;
                    }
                }
            }
        }
    }

    // line at infinity: singular points satisfy d/dx f_r = d/dy f_r = f_(r-1) = 0
    const BPoly top = f.form(static_cast<unsigned>(r));
    const BPoly a = top.derivative_x();
    const BPoly b = top.derivative_y();
    const BPoly c = f.form(static_cast<unsigned>(r - 1));
    const UPoly g = gcd(gcd(a.at_y(1), b.at_y(1)), c.at_y(1));
    if (g.degree() != 0) {
        rep.smooth = false;
        rep.witness = g.is_zero() ? "singular along the line at infinity"
                                  : "singular point [x:1:0] with x a root of " + to_string(g, "x");
        return rep;
    }
    if (is_null(a.at_y(0)(Rational(1))) && is_null(b.at_y(0)(Rational(1))) && is_null(c.at_y(0)(Rational(1)))) {
        rep.smooth = false;
        rep.witness = "singular point [1:0:0]";
        return rep;
    }
    return rep;
}

class Curve
{
public:
    explicit Curve(BPoly f, bool assume_smooth = false) : f_(std::move(f))
    {
        r_ = f_.total_degree();
        if (r_ < 1) {
            raise(errc::invalid_argument, "curve polynomial must be nonconstant");
        }
        fx_ = f_.derivative_x();
        fy_ = f_.derivative_y();
        if (!assume_smooth) {
            const SmoothnessReport rep = is_smooth(f_);
            if (!rep.smooth) {
                raise(errc::not_smooth, "curve " + to_string(f_) + " is not smooth: " + rep.witness);
            }
            verified_ = true;
        }
    }

    const BPoly &f() const noexcept
    {
        return f_;
    }
    const BPoly &fx() const noexcept
    {
        return fx_;
    }
    const BPoly &fy() const noexcept
    {
        return fy_;
    }
    int degree() const noexcept
    {
        return r_;
    }
    bool smoothness_verified() const noexcept
    {
        return verified_;
    }

private:
    BPoly f_, fx_, fy_;
    int r_ = 0;
    bool verified_ = false;
};

inline int genus(const Curve &c)
{
    const int r = c.degree();
    return (r - 1) * (r - 2) / 2;
}

struct Point {
    Rational x;
    TowerElement y;
};

inline Point make_point(const Curve &c, const Rational &x, const TowerElement &y)
{
    if (!is_zero(eval_bpoly(c.f(), x, y))) {
        raise(errc::point_not_on_curve, "point with x = " + to_string(x) + " is not on the curve");
    }
    return {x, y};
}

inline UPoly section_polynomial(const Curve &c, const Rational &x0)
{
    return c.f().at_x(x0);
}

// All r ordinates over x0, in canonical root order.
inline std::vector<Point> section_roots(const Curve &c, const Rational &x0, Tower &tower)
{
    const UPoly s = section_polynomial(c, x0);
    if (s.degree() != c.degree()) {
        raise(errc::degree_drop, "f(" + to_string(x0) + ", y) has degree " + std::to_string(s.degree()) + " < " + std::to_string(c.degree()));
    }
    if (!is_squarefree(s)) {
        raise(errc::multiple_roots, "f(" + to_string(x0) + ", y) = " + to_string(s) + " has a multiple root");
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(c.degree()); ++i) {
        out.push_back({x0, tower.adjoin(s, i)});
    }
    return out;
}

inline TowerElement fy_at(const Curve &c, const Point &p)
{
    return eval_bpoly(c.fy(), p.x, p.y);
}

// Truncated power series in t over the tower.
using Series = Poly<TowerElement>;

inline Series truncate(const Series &s, int n)
{
    if (s.degree() <= n) {
        return s;
    }
    std::vector<TowerElement> v(s.coeffs().begin(), s.coeffs().begin() + n + 1);
    return Series(std::move(v));
}

inline Series mul_trunc(const Series &a, const Series &b, int n)
{
    std::vector<TowerElement> v(static_cast<std::size_t>(std::max(0, std::min(a.degree() + b.degree(), n) + 1)));
    for (int i = 0; i <= a.degree() && i <= n; ++i) {
        for (int j = 0; j <= b.degree() && i + j <= n; ++j) {
            v[static_cast<std::size_t>(i + j)] += a.coeffs()[static_cast<std::size_t>(i)] * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    return Series(std::move(v));
}

// p(x0 + t, y(t)) mod t^(n+1), coefficients of p in Rational or TowerElement.
template <typename T>
Series substitute(const BivariatePoly<T> &p, const Rational &x0, const Series &y, int n)
{
    const int dx = std::max(p.degree_x(), 0);
    const int dy = std::max(p.degree_y(), 0);
    std::vector<Series> xp{Series(TowerElement(1))}, yp{Series(TowerElement(1))};
    const Series xt{TowerElement(x0), TowerElement(1)};
    for (int i = 1; i <= dx; ++i) {
        xp.push_back(mul_trunc(xp.back(), xt, n));
    }
    for (int j = 1; j <= dy; ++j) {
        yp.push_back(mul_trunc(yp.back(), y, n));
    }
    Series acc;
    for (const auto &[m, c] : p.terms()) {
        acc = acc + mul_trunc(xp[m.x], yp[m.y], n).scaled(TowerElement(c));
    }
    return acc;
}

struct LocalSeries {
    Point base;
    // c_1 .. c_n
    std::vector<TowerElement> coeffs;
    int order = 0;

    // y0 + c1 t + .. + cn t^n
    Series y_series() const
    {
        std::vector<TowerElement> v{base.y};
        v.insert(v.end(), coeffs.begin(), coeffs.end());
        return Series(std::move(v));
    }
};

// y(t) with f(x0 + t, y(t)) = O(t^(n+1)); c_k = -[t^k] f(x0+t, y_(k-1)(t)) / f_y(p).
inline LocalSeries local_series(const Curve &c, const Point &p, int n)
{
    const TowerElement fy = fy_at(c, p);
    if (is_zero(fy)) {
        raise(errc::vertical_tangent, "f_y vanishes at the point over x = " + to_string(p.x));
    }
    const TowerElement inv = invert(fy);
    LocalSeries s{p, {}, n};
    for (int k = 1; k <= n; ++k) {
        const Series r = substitute(c.f(), p.x, s.y_series(), k);
        const TowerElement rk = r.degree() >= k ? r.coeffs()[static_cast<std::size_t>(k)] : TowerElement();
        s.coeffs.push_back(-(rk * inv));
    }
    return s;
}

} // namespace weier

#endif
