// Test-side oracles and generators. Nothing here calls into the kernel's
// root isolation or tower numerics, so agreement is evidence.
#ifndef WEIER_TESTS_ORACLES_HPP
#define WEIER_TESTS_ORACLES_HPP

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <weier/core/bpoly.hpp>
#include <weier/core/upoly.hpp>

namespace oracle
{

using real = boost::multiprecision::cpp_bin_float_100;
using cplx = boost::multiprecision::cpp_complex_100;

inline real to_real(const weier::Rational &q)
{
    return real(q.get_num().get_str()) / real(q.get_den().get_str());
}

// Durand-Kerner (Weierstrass) iteration at 100 digits.
inline std::vector<cplx> roots(const weier::UPoly &p)
{
    const int n = p.degree();
    std::vector<cplx> a(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        a[static_cast<std::size_t>(i)] = cplx(to_real(p.coeffs()[static_cast<std::size_t>(i)] / p.lead()));
    }
    auto eval = [&](const cplx &z) {
        cplx v = 0;
        for (int i = n; i >= 0; --i) {
            v = v * z + a[static_cast<std::size_t>(i)];
        }
        return v;
    };
    std::vector<cplx> z(static_cast<std::size_t>(n));
    const cplx seed(real("0.4"), real("0.9"));
    cplx w = 1;
    for (auto &zi : z) {
        zi = w;
        w *= seed;
    }
    const real tol("1e-95");
    for (int it = 0; it < 5000; ++it) {
        real change = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            cplx den = 1;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != k) {
                    den *= z[k] - z[j];
                }
            }
            const cplx step = eval(z[k]) / den;
            z[k] -= step;
            change = std::max(change, real(abs(step)));
        }
        if (change < tol) {
            break;
        }
    }
    return z;
}

inline std::vector<cplx> power_sums(const weier::UPoly &p, std::size_t count)
{
    const auto z = roots(p);
    std::vector<cplx> out;
    for (std::size_t k = 0; k < count; ++k) {
        cplx s = 0;
        for (const auto &r : z) {
            s += pow(r, static_cast<int>(k));
        }
        out.push_back(s);
    }
    return out;
}

// Hand-rolled generators over a fixed-seed engine.
class Gen
{
public:
    explicit Gen(unsigned seed) : eng_(seed) {}

    long integer(long lo, long hi)
    {
        return std::uniform_int_distribution<long>(lo, hi)(eng_);
    }
    weier::Rational rational(long span, long max_den)
    {
        weier::Rational q(integer(-span, span), integer(1, max_den));
        q.canonicalize();
        return q;
    }
    weier::UPoly upoly(int degree, long span)
    {
        std::vector<weier::Rational> c;
        for (int i = 0; i < degree; ++i) {
            c.push_back(weier::Rational(integer(-span, span)));
        }
        long lead = 0;
        while (lead == 0) {
            lead = integer(-span, span);
        }
        c.push_back(weier::Rational(lead));
        return weier::UPoly(std::move(c));
    }
    // Bivariate polynomial of total degree r with nonzero y^r coefficient.
    weier::BPoly bpoly(int r, long span)
    {
        weier::BPoly p;
        for (int d = 0; d <= r; ++d) {
            for (int j = 0; j <= d; ++j) {
                p.add_term({static_cast<unsigned>(d - j), static_cast<unsigned>(j)}, weier::Rational(integer(-span, span)));
            }
        }
        long lead = 0;
        while (lead == 0) {
            lead = integer(-span, span);
        }
        p.add_term({0, static_cast<unsigned>(r)}, weier::Rational(lead) - p.coeff({0, static_cast<unsigned>(r)}));
        return p;
    }
    std::mt19937 &engine()
    {
        return eng_;
    }

private:
    std::mt19937 eng_;
};

} // namespace oracle

#endif
