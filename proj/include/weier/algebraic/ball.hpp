#ifndef WEIER_ALGEBRAIC_BALL_HPP
#define WEIER_ALGEBRAIC_BALL_HPP

#include <string>

#include <weier/core/rational.hpp>

namespace weier
{

// Exact complex rational.
struct ComplexQ {
    Rational re;
    Rational im;

    ComplexQ() = default;
    ComplexQ(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexQ operator+(const ComplexQ &a, const ComplexQ &b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexQ operator-(const ComplexQ &a, const ComplexQ &b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexQ operator*(const ComplexQ &a, const ComplexQ &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexQ operator*(const ComplexQ &a, const Rational &s)
    {
        return {a.re * s, a.im * s};
    }
    friend ComplexQ operator/(const ComplexQ &a, const ComplexQ &b)
    {
        const Rational n = norm2(b);
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    ComplexQ operator-() const
    {
        return {-re, -im};
    }
    ComplexQ conj() const
    {
        return {re, -im};
    }
    friend Rational norm2(const ComplexQ &a)
    {
        return a.re * a.re + a.im * a.im;
    }
    // |re| + |im| >= |a|
    friend Rational abs_bound(const ComplexQ &a)
    {
        return Rational(abs(a.re) + abs(a.im));
    }
    friend bool operator==(const ComplexQ &a, const ComplexQ &b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

inline ComplexQ round_dyadic(const ComplexQ &z, long bits)
{
    return {round_dyadic(z.re, bits), round_dyadic(z.im, bits)};
}

// Closed disk {z : |z - mid| <= rad}, the unit of certified numerics.
struct Ball {
    ComplexQ mid;
    Rational rad;

    bool contains_zero() const
    {
        // |mid| <= rad, tested without square roots
        return norm2(mid) <= rad * rad;
    }
    bool excludes_zero() const
    {
        return !contains_zero();
    }
};

// Ball arithmetic at a fixed working precision: midpoints are rounded to
// multiples of 2^-bits and the rounding error is folded into the radius.
class BallContext
{
public:
    explicit BallContext(long bits) : bits_(bits) {}

    long bits() const noexcept
    {
        return bits_;
    }

    Ball exact(const Rational &q) const
    {
        return normalize({ComplexQ(q), Rational(0)});
    }

    Ball add(const Ball &a, const Ball &b) const
    {
        return normalize({a.mid + b.mid, a.rad + b.rad});
    }

    Ball mul(const Ball &a, const Ball &b) const
    {
        Rational rad = abs_bound(a.mid) * b.rad + abs_bound(b.mid) * a.rad + a.rad * b.rad;
        return normalize({a.mid * b.mid, rad});
    }

    Ball scale(const Ball &a, const Rational &s) const
    {
        return normalize({a.mid * s, Rational(a.rad * abs(s))});
    }

    Ball normalize(Ball b) const
    {
        ComplexQ r = round_dyadic(b.mid, bits_);
        Rational err = abs_bound(b.mid - r);
        b.rad = round_up_dyadic(b.rad + err);
        b.mid = std::move(r);
        return b;
    }

private:
    long bits_;
};

} // namespace weier

#endif
