#ifndef WEIER_CORE_RESULTANT_HPP
#define WEIER_CORE_RESULTANT_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include <weier/core/errors.hpp>
#include <weier/core/matrix.hpp>
#include <weier/core/upoly.hpp>

namespace weier
{

// Sylvester matrix for coefficient vectors (lowest degree first) of formal
// degrees m = a.size()-1 and n = b.size()-1; leading entries may be zero.
inline RatMatrix sylvester(const std::vector<Rational> &a, const std::vector<Rational> &b)
{
    const std::size_t m = a.size() - 1;
    const std::size_t n = b.size() - 1;
    RatMatrix s(m + n, m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k <= m; ++k) {
            s(i, i + k) = a[m - k];
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k <= n; ++k) {
            s(n + i, i + k) = b[n - k];
        }
    }
    return s;
}

// n shifted rows of a's coefficients on top, then m rows of b's, highest
// coefficient first.
inline RatMatrix sylvester(const UPoly &a, const UPoly &b)
{
    return sylvester(a.coeffs(), b.coeffs());
}

// res(a, b) = det sylvester(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r).
// With this convention res(y-1, y-2) = -1.
inline Rational resultant(const UPoly &a, const UPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        raise(errc::zero_polynomial, "resultant with the zero polynomial");
    }
    return determinant(sylvester(a, b));
}

// disc(a) = (-1)^(n(n-1)/2) res(a, a') / lc(a).
inline Rational discriminant(const UPoly &a)
{
    const long n = a.degree();
    if (n < 1) {
        raise(errc::invalid_argument, "discriminant needs degree >= 1");
    }
    if (n == 1) {
        return Rational(1);
    }
    Rational r = resultant(a, derivative(a)) / a.lead();
    if ((n * (n - 1) / 2) % 2 != 0) {
        r = -r;
    }
    return r;
}

// Newton interpolation through (xs[i], ys[i]), distinct xs.
inline UPoly interpolate(const std::vector<Rational> &xs, const std::vector<Rational> &ys)
{
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
        }
    }
    UPoly acc;
    for (std::size_t i = n; i-- > 0;) {
        acc = acc * UPoly{Rational(-xs[i]), Rational(1)} + UPoly(dd[i]);
    }
    return acc;
}

// Resultant in the second variable of two bivariate polynomials given as
// coefficient lists in y (each coefficient a polynomial in x), formal
// degrees taken from the list lengths. Evaluates the Sylvester determinant
// at enough abscissas and interpolates.
inline UPoly resultant_y(const std::vector<UPoly> &a, const std::vector<UPoly> &b)
{
    if (a.empty() || b.empty()) {
        raise(errc::zero_polynomial, "resultant with the zero polynomial");
    }
    int da = 0, db = 0;
    for (const auto &c : a) {
        da = std::max(da, c.degree());
    }
    for (const auto &c : b) {
        db = std::max(db, c.degree());
    }
    const std::size_t m = a.size() - 1;
    const std::size_t n = b.size() - 1;
    const std::size_t bound = n * static_cast<std::size_t>(da) + m * static_cast<std::size_t>(db);
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= bound; ++k) {
        const Rational x(static_cast<long>(k));
        std::vector<Rational> av, bv;
        for (const auto &c : a) {
            av.push_back(c(x));
        }
        for (const auto &c : b) {
            bv.push_back(c(x));
        }
        xs.push_back(x);
        ys.push_back(determinant(sylvester(av, bv)));
    }
    return interpolate(xs, ys);
}

} // namespace weier

#endif
