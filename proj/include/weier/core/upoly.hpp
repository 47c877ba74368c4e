#ifndef WEIER_CORE_UPOLY_HPP
#define WEIER_CORE_UPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <weier/core/errors.hpp>
#include <weier/core/rational.hpp>

namespace weier
{

// Dense univariate polynomial, lowest degree first. The coefficient ring T
// must provide +, -, *, a default constructor yielding zero and a free
// is_null(const T&) that tests the stored representative for zero.
template <typename T>
class Poly
{
public:
    using value_type = T;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs))
    {
        trim();
    }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs)
    {
        trim();
    }
    // Constant polynomial.
    Poly(const T &c) : c_{c}
    {
        trim();
    }

    static Poly monomial(const T &c, std::size_t k)
    {
        std::vector<T> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    // -1 for the zero polynomial.
    int degree() const noexcept
    {
        return static_cast<int>(c_.size()) - 1;
    }
    bool is_zero() const noexcept
    {
        return c_.empty();
    }
    std::size_t size() const noexcept
    {
        return c_.size();
    }
    const std::vector<T> &coeffs() const noexcept
    {
        return c_;
    }
    T coeff(std::size_t i) const
    {
        return i < c_.size() ? c_[i] : T{};
    }
    const T &lead() const
    {
        return c_.back();
    }

    void set_coeff(std::size_t i, const T &v)
    {
        if (i >= c_.size()) {
            c_.resize(i + 1);
        }
        c_[i] = v;
        trim();
    }

    Poly operator-() const
    {
        std::vector<T> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            v[i] = -c_[i];
        }
        return Poly(std::move(v));
    }

    Poly &operator+=(const Poly &o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] = c_[i] + o.c_[i];
        }
        trim();
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] = c_[i] - o.c_[i];
        }
        trim();
        return *this;
    }
    Poly &operator*=(const Poly &o)
    {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly &b)
    {
        a += b;
        return a;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        a -= b;
        return a;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return Poly();
        }
        std::vector<T> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_null(a.c_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (!is_null(b.c_[j])) {
                    v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
                }
            }
        }
        return Poly(std::move(v));
    }

    template <typename S>
    Poly scaled(const S &s) const
    {
        std::vector<T> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            v[i] = c_[i] * s;
        }
        return Poly(std::move(v));
    }

    // Horner evaluation; U is any ring that T multiplies into.
    template <typename U>
    U operator()(const U &x) const
    {
        U acc{};
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * x + U(c_[i]);
        }
        return acc;
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.c_ == b.c_;
    }

private:
    void trim()
    {
        while (!c_.empty() && is_null(c_.back())) {
            c_.pop_back();
        }
    }

    std::vector<T> c_;
};

using UPoly = Poly<Rational>;

template <typename T>
Poly<T> derivative(const Poly<T> &p)
{
    if (p.degree() < 1) {
        return Poly<T>();
    }
    std::vector<T> v(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        v[i - 1] = p.coeffs()[i] * T(static_cast<long>(i));
    }
    return Poly<T>(std::move(v));
}

// Polynomial composition p(q).
template <typename T>
Poly<T> compose(const Poly<T> &p, const Poly<T> &q)
{
    Poly<T> acc;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * q + Poly<T>(p.coeffs()[i]);
    }
    return acc;
}

inline UPoly monic(const UPoly &p)
{
    if (p.is_zero()) {
        return p;
    }
    return p.scaled(Rational(1) / p.lead());
}

// Division with remainder over Q.
inline std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b)
{
    if (b.is_zero()) {
        raise(errc::zero_division, "polynomial division by zero");
    }
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {UPoly(), a};
    }
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational inv = Rational(1) / b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
        const Rational q = rem[static_cast<std::size_t>(k + db)] * inv;
        quo[static_cast<std::size_t>(k)] = q;
        if (sgn(q) == 0) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd {
    UPoly g, s, t;
};

inline XGcd xgcd(const UPoly &a, const UPoly &b)
{
    UPoly r0 = a, r1 = b, s0(Rational(1)), s1, t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1;
        UPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        return {r0, s0, t0};
    }
    const Rational inv = Rational(1) / r0.lead();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

inline bool is_squarefree(const UPoly &a)
{
    if (a.is_zero()) {
        raise(errc::zero_polynomial, "is_squarefree of the zero polynomial");
    }
    return gcd(a, derivative(a)).degree() == 0;
}

// a / gcd(a, a'), monic.
inline UPoly squarefree_part(const UPoly &a)
{
    if (a.degree() < 1) {
        return monic(a);
    }
    return monic(divmod(a, gcd(a, derivative(a))).first);
}

// Scales p by a positive rational so that the coefficients are coprime
// integers (sign of the leading coefficient preserved).
inline std::vector<Integer> primitive_integer_coeffs(const UPoly &p)
{
    Integer l = 1;
    for (const auto &c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Integer> out;
    out.reserve(p.size());
    Integer g = 0;
    for (const auto &c : p.coeffs()) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (g > 1) {
        for (auto &v : out) {
            v /= g;
        }
    }
    return out;
}

// Power sums p_k = sum_j root_j^k for k = 0 .. count-1, by Newton's
// identities from the coefficients alone. p_0 is the degree.
inline std::vector<Rational> power_sums(const UPoly &a, std::size_t count)
{
    if (a.is_zero()) {
        raise(errc::zero_polynomial, "power_sums of the zero polynomial");
    }
    const int n = a.degree();
    if (n < 1) {
        raise(errc::invalid_argument, "power_sums needs degree >= 1");
    }
    // b_i: coefficient of y^(n-i) in the monic polynomial, i = 1..n.
    std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        b[static_cast<std::size_t>(i)] = a.coeffs()[static_cast<std::size_t>(n - i)] / a.lead();
    }
    std::vector<Rational> p(count);
    if (count == 0) {
        return p;
    }
    p[0] = n;
    for (std::size_t k = 1; k < count; ++k) {
        Rational s = 0;
        const std::size_t top = std::min<std::size_t>(k - 1, static_cast<std::size_t>(n));
        for (std::size_t i = 1; i <= top; ++i) {
            s += b[i] * p[k - i];
        }
        if (k <= static_cast<std::size_t>(n)) {
            s += Rational(static_cast<long>(k)) * b[k];
        }
        p[k] = -s;
    }
    return p;
}

// "3*y^2-1/2*y+1" style rendering, highest degree first.
inline std::string to_string(const UPoly &p, const std::string &var = "y")
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Rational &c = p.coeffs()[i];
        if (sgn(c) == 0) {
            continue;
        }
        const bool neg = sgn(c) < 0;
        const Rational a = abs(c);
        if (!out.empty() || neg) {
            out += neg ? "-" : "+";
        }
        std::string mono;
        if (i >= 1) {
            mono = var;
            if (i > 1) {
                mono += "^" + std::to_string(i);
            }
        }
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
