#ifndef WEIER_CORE_BPOLY_HPP
#define WEIER_CORE_BPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <weier/core/rational.hpp>
#include <weier/core/upoly.hpp>

namespace weier
{

// Exponent pair (power of x, power of y).
struct Monomial {
    unsigned x = 0;
    unsigned y = 0;

    unsigned degree() const noexcept
    {
        return x + y;
    }
    friend bool operator<(const Monomial &a, const Monomial &b) noexcept
    {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    friend bool operator==(const Monomial &a, const Monomial &b) noexcept
    {
        return a.x == b.x && a.y == b.y;
    }
};

// Sparse bivariate polynomial in x, y. Zero coefficients are never stored,
// so degree queries are exact.
template <typename T>
class BivariatePoly
{
public:
    using map_type = std::map<Monomial, T>;

    BivariatePoly() = default;
    BivariatePoly(const T &c)
    {
        add_term({0, 0}, c);
    }

    static BivariatePoly x()
    {
        BivariatePoly p;
        p.add_term({1, 0}, T(1));
        return p;
    }
    static BivariatePoly y()
    {
        BivariatePoly p;
        p.add_term({0, 1}, T(1));
        return p;
    }
    static BivariatePoly term(Monomial m, const T &c)
    {
        BivariatePoly p;
        p.add_term(m, c);
        return p;
    }

    const map_type &terms() const noexcept
    {
        return t_;
    }
    bool is_zero() const noexcept
    {
        return t_.empty();
    }

    T coeff(Monomial m) const
    {
        auto it = t_.find(m);
        return it == t_.end() ? T{} : it->second;
    }

    void add_term(Monomial m, const T &c)
    {
        if (is_null(c)) {
            return;
        }
        auto [it, fresh] = t_.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (is_null(it->second)) {
                t_.erase(it);
            }
        }
    }

    // -1 for the zero polynomial.
    int total_degree() const noexcept
    {
        int d = -1;
        for (const auto &[m, c] : t_) {
            d = std::max(d, static_cast<int>(m.degree()));
        }
        return d;
    }
    int degree_x() const noexcept
    {
        int d = -1;
        for (const auto &[m, c] : t_) {
            d = std::max(d, static_cast<int>(m.x));
        }
        return d;
    }
    int degree_y() const noexcept
    {
        int d = -1;
        for (const auto &[m, c] : t_) {
            d = std::max(d, static_cast<int>(m.y));
        }
        return d;
    }

    BivariatePoly operator-() const
    {
        BivariatePoly out;
        for (const auto &[m, c] : t_) {
            out.t_.emplace(m, -c);
        }
        return out;
    }
    BivariatePoly &operator+=(const BivariatePoly &o)
    {
        for (const auto &[m, c] : o.t_) {
            add_term(m, c);
        }
        return *this;
    }
    BivariatePoly &operator-=(const BivariatePoly &o)
    {
        for (const auto &[m, c] : o.t_) {
            add_term(m, -c);
        }
        return *this;
    }
    friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly &b)
    {
        a += b;
        return a;
    }
    friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly &b)
    {
        a -= b;
        return a;
    }
    friend BivariatePoly operator*(const BivariatePoly &a, const BivariatePoly &b)
    {
        BivariatePoly out;
        for (const auto &[ma, ca] : a.t_) {
            for (const auto &[mb, cb] : b.t_) {
                out.add_term({ma.x + mb.x, ma.y + mb.y}, ca * cb);
            }
        }
        return out;
    }
    template <typename S>
    BivariatePoly scaled(const S &s) const
    {
        BivariatePoly out;
        for (const auto &[m, c] : t_) {
            out.add_term(m, c * s);
        }
        return out;
    }

    BivariatePoly derivative_x() const
    {
        BivariatePoly out;
        for (const auto &[m, c] : t_) {
            if (m.x > 0) {
                out.add_term({m.x - 1, m.y}, c * T(static_cast<long>(m.x)));
            }
        }
        return out;
    }
    BivariatePoly derivative_y() const
    {
        BivariatePoly out;
        for (const auto &[m, c] : t_) {
            if (m.y > 0) {
                out.add_term({m.x, m.y - 1}, c * T(static_cast<long>(m.y)));
            }
        }
        return out;
    }

    // Homogeneous part of total degree d.
    BivariatePoly form(unsigned d) const
    {
        BivariatePoly out;
        for (const auto &[m, c] : t_) {
            if (m.degree() == d) {
                out.t_.emplace(m, c);
            }
        }
        return out;
    }

    // p(x0, y) as a polynomial in y. X is any type T's coefficients multiply
    // into (typically Rational).
    Poly<T> at_x(const Rational &x0) const
    {
        std::vector<T> v(static_cast<std::size_t>(std::max(degree_y(), -1) + 1));
        for (const auto &[m, c] : t_) {
            v[m.y] = v[m.y] + c * T(pow(x0, m.x));
        }
        return Poly<T>(std::move(v));
    }
    // p(x, y0) as a polynomial in x.
    Poly<T> at_y(const Rational &y0) const
    {
        std::vector<T> v(static_cast<std::size_t>(std::max(degree_x(), -1) + 1));
        for (const auto &[m, c] : t_) {
            v[m.x] = v[m.x] + c * T(pow(y0, m.y));
        }
        return Poly<T>(std::move(v));
    }

    // Evaluation at ring values; U must accept T-valued scaling.
    template <typename U>
    U operator()(const U &xv, const U &yv) const
    {
        const int dx = degree_x();
        const int dy = degree_y();
        if (dx < 0) {
            return U{};
        }
        std::vector<U> xp(static_cast<std::size_t>(dx) + 1), yp(static_cast<std::size_t>(dy) + 1);
        xp[0] = U(1);
        for (int i = 1; i <= dx; ++i) {
            xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i) - 1] * xv;
        }
        yp[0] = U(1);
        for (int j = 1; j <= dy; ++j) {
            yp[static_cast<std::size_t>(j)] = yp[static_cast<std::size_t>(j) - 1] * yv;
        }
        U acc{};
        for (const auto &[m, c] : t_) {
            acc = acc + xp[m.x] * yp[m.y] * c;
        }
        return acc;
    }

    friend bool operator==(const BivariatePoly &a, const BivariatePoly &b)
    {
        return a.t_ == b.t_;
    }

private:
    map_type t_;
};

using BPoly = BivariatePoly<Rational>;

namespace detail
{

inline std::string monomial_string(Monomial m)
{
    std::string s;
    auto var = [&s](const char *v, unsigned e) {
        if (e == 0) {
            return;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += v;
        if (e > 1) {
            s += "^" + std::to_string(e);
        }
    };
    var("x", m.x);
    var("y", m.y);
    return s;
}

} // namespace detail

// Canonical term order: descending total degree, then descending power of x.
inline std::vector<Monomial> canonical_order(const BPoly &p)
{
    std::vector<Monomial> ms;
    for (const auto &[m, c] : p.terms()) {
        ms.push_back(m);
    }
    std::sort(ms.begin(), ms.end(), [](Monomial a, Monomial b) {
        if (a.degree() != b.degree()) {
            return a.degree() > b.degree();
        }
        return a.x > b.x;
    });
    return ms;
}

inline std::string to_string(const BPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &m : canonical_order(p)) {
        const Rational &c = p.terms().at(m);
        const bool neg = sgn(c) < 0;
        const Rational a = abs(c);
        if (!out.empty() || neg) {
            out += neg ? "-" : "+";
        }
        const std::string mono = detail::monomial_string(m);
        if (mono.empty()) {
            out += to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += to_string(a) + "*" + mono;
        }
    }
    return out;
}

} // namespace weier

#endif
