#ifndef WEIER_CORE_RATIONAL_HPP
#define WEIER_CORE_RATIONAL_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <weier/core/errors.hpp>

namespace weier
{

using Integer = mpz_class;
// Always canonical (lowest terms, positive denominator); GMP normalizes after
// every arithmetic operation.
using Rational = mpq_class;

inline bool is_null(const Rational &q) noexcept
{
    return sgn(q) == 0;
}

inline bool is_zero(const Rational &q) noexcept
{
    return sgn(q) == 0;
}

inline bool is_integer(const Rational &q)
{
    return q.get_den() == 1;
}

inline Rational pow(const Rational &base, unsigned long e)
{
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational out(n, d);
    out.canonicalize();
    return out;
}

// q * 2^k for any sign of k.
inline Rational ldexp(const Rational &q, long k)
{
    Rational out;
    if (k >= 0) {
        mpq_mul_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpq_div_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return out;
}

inline Integer floor(const Rational &q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline Integer ceil(const Rational &q)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// Nearest multiple of 2^-bits.
inline Rational round_dyadic(const Rational &q, long bits)
{
    const Integer n = floor(ldexp(q, bits) + Rational(1, 2));
    return ldexp(Rational(n), -bits);
}

// Rough binary exponent: 2^(e-1) <= |q| < 2^(e+1). Only used to size precisions.
inline long log2_estimate(const Rational &q)
{
    if (sgn(q) == 0) {
        return 0;
    }
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

// Smallest dyadic with ~`mantissa` significant bits that is >= q (q >= 0).
inline Rational round_up_dyadic(const Rational &q, long mantissa = 40)
{
    if (sgn(q) <= 0) {
        return Rational(0);
    }
    const long k = mantissa - log2_estimate(q);
    return ldexp(Rational(ceil(ldexp(q, k))), -k);
}

// Upper bound for sqrt(q), q >= 0, with relative accuracy about 2^-bits.
inline Rational sqrt_upper(const Rational &q, long bits = 64)
{
    if (sgn(q) <= 0) {
        return Rational(0);
    }
    const long k = bits - log2_estimate(q) / 2;
    // sqrt(q) * 2^k = sqrt(q * 4^k)
    Integer s;
    const Integer scaled = ceil(ldexp(q, 2 * k));
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    s += 1;
    return ldexp(Rational(s), -k);
}

// Lower bound for sqrt(q), q >= 0.
inline Rational sqrt_lower(const Rational &q, long bits = 64)
{
    if (sgn(q) <= 0) {
        return Rational(0);
    }
    const long k = bits - log2_estimate(q) / 2;
    Integer s;
    const Integer scaled = floor(ldexp(q, 2 * k));
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    return ldexp(Rational(s), -k);
}

inline std::string to_string(const Rational &q)
{
    return q.get_str(10);
}

// Accepts "p", "-p", "p/q". No decimal point, no whitespace inside.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.erase(s.begin());
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    auto valid_int = [](std::string_view t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) {
            ++i;
        }
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        raise(errc::syntax_error, "not a rational literal: '" + s + "'");
    }
    Integer n(num[0] == '+' ? num.substr(1) : num, 10);
    Integer d(den, 10);
    if (d == 0) {
        raise(errc::zero_division, "zero denominator in '" + s + "'");
    }
    Rational out(n, d);
    out.canonicalize();
    return out;
}

// Decimal rounding of q to `digits` places after the point, half away from zero.
inline std::string to_decimal(const Rational &q, int digits)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const Rational a = abs(q) * scale;
    const Integer n = floor(a + Rational(1, 2));
    std::string s = n.get_str(10);
    if (static_cast<int>(s.size()) <= digits) {
        s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    }
    if (digits > 0) {
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    const bool negative = sgn(q) < 0 && n != 0;
    return negative ? "-" + s : s;
}

// Inverse of to_decimal for plain decimal strings ("-1.25").
inline Rational parse_decimal(std::string_view text)
{
    std::string s(text);
    const auto dot = s.find('.');
    if (dot == std::string::npos) {
        return parse_rational(s);
    }
    const std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot) + frac;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    return parse_rational(whole) / Rational(scale);
}

} // namespace weier

#endif
