#include <gtest/gtest.h>

#include <weier/core/bpoly.hpp>
#include <weier/core/linsolve.hpp>
#include <weier/core/matrix.hpp>
#include <weier/core/rational.hpp>
#include <weier/core/resultant.hpp>
#include <weier/core/upoly.hpp>

#include "oracles.hpp"

using namespace weier;

namespace
{

UPoly P(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) {
        v.emplace_back(x);
    }
    return UPoly(std::move(v));
}

} // namespace

TEST(Rational, LiteralsAndDecimals)
{
    EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_THROW(parse_rational("1.5"), error);
    EXPECT_THROW(parse_rational("1/0"), error);
    EXPECT_EQ(to_decimal(Rational(3, 7), 3), "0.429");
    EXPECT_EQ(to_decimal(Rational(-1, 3), 2), "-0.33");
    EXPECT_EQ(to_decimal(Rational(-1, 1000), 2), "0.00");
}

TEST(Rational, AddSubRoundTrip)
{
    oracle::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const Rational a = g.rational(1000000, 1000000);
        const Rational b = g.rational(1000000, 1000000);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ(a.get_den() > 0, true);
    }
}

TEST(UPoly, Gcd)
{
    EXPECT_EQ(gcd(P({-1, 0, 1}), P({-1, 1})), P({-1, 1}));
    const UPoly f = P({-1, 2, 0, 1}); // y^3+2y-1
    EXPECT_EQ(gcd(f, derivative(f)), P({1}));
    EXPECT_EQ(gcd(P({2, 4}), UPoly()), UPoly({Rational(1, 2), Rational(1)}));
    EXPECT_TRUE(gcd(UPoly(), UPoly()).is_zero());
}

TEST(UPoly, SquareFree)
{
    EXPECT_TRUE(is_squarefree(P({-1, 2, 0, 1})));
    EXPECT_FALSE(is_squarefree(P({0, 0, 1})));
    EXPECT_TRUE(is_squarefree(P({-3, 0, 0, 1})));
    EXPECT_THROW(is_squarefree(UPoly()), error);
}

TEST(Resultant, Examples)
{
    // documented convention: res(y-1, y-2) = -1
    EXPECT_EQ(resultant(P({-1, 1}), P({-2, 1})), -1);
    EXPECT_EQ(resultant(P({1, 0, 1}), P({0, 1})), 1);
    const UPoly f = P({-1, 2, 0, 1});
    const Rational r = resultant(f, P({2, 0, 3}));
    EXPECT_NE(r, 0);
    // res(f, f') = -disc(f) for a monic cubic; disc(y^3+py+q) = -4p^3-27q^2
    EXPECT_EQ(discriminant(f), Rational(-4 * 8 - 27));
    EXPECT_EQ(r, Rational(59));
    EXPECT_THROW(resultant(UPoly(), f), error);
}

TEST(Resultant, VanishesIffCommonFactor)
{
    oracle::Gen g(5);
    for (int i = 0; i < 60; ++i) {
        UPoly a = g.upoly(static_cast<int>(g.integer(1, 3)), 4);
        UPoly b = g.upoly(static_cast<int>(g.integer(1, 3)), 4);
        if (i % 2 == 0) {
            const UPoly common = g.upoly(1, 3);
            a = a * common;
            b = b * common;
        }
        EXPECT_EQ(sgn(resultant(a, b)) == 0, gcd(a, b).degree() > 0) << to_string(a) << " | " << to_string(b);
    }
}

TEST(Resultant, BivariateMatchesSpecialization)
{
    // Res_y of f = y^2 - x^3 - 1 and f_y = 2y, compared with the univariate
    // resultant at sample abscissas.
    const std::vector<UPoly> f{P({-1, 0, 0, -1}), UPoly(), P({1})};
    const std::vector<UPoly> fy{UPoly(), P({2})};
    const UPoly r = resultant_y(f, fy);
    for (long x = -3; x <= 3; ++x) {
        const UPoly fx{f[0](Rational(x)), Rational(0), Rational(1)};
        EXPECT_EQ(r(Rational(x)), resultant(fx, P({0, 2})));
    }
}

TEST(Interpolate, RecoversPolynomial)
{
    const UPoly p = P({3, -1, 0, 2});
    std::vector<Rational> xs, ys;
    for (long k = 0; k < 4; ++k) {
        xs.emplace_back(k * 2 - 1);
        ys.push_back(p(xs.back()));
    }
    EXPECT_EQ(interpolate(xs, ys), p);
}

TEST(PowerSums, NewtonFixtures)
{
    EXPECT_EQ(power_sums(P({-1, 2, 0, 1}), 4), (std::vector<Rational>{3, 0, -4, 3}));
    EXPECT_EQ(power_sums(P({-3, 0, 0, 1}), 4), (std::vector<Rational>{3, 0, 0, 9}));
    EXPECT_EQ(power_sums(P({2, -3, 1}), 3), (std::vector<Rational>{2, 3, 5}));
    // non-monic input: same roots as its monic form
    EXPECT_EQ(power_sums(P({1, -2, 0, -1}), 4), (std::vector<Rational>{3, 0, -4, 3}));
    EXPECT_THROW(power_sums(UPoly(), 3), error);
}

TEST(PowerSums, AgreeWithNumericRoots)
{
    oracle::Gen g(2024);
    const oracle::real tol("1e-30");
    int tested = 0;
    while (tested < 20) {
        const UPoly p = g.upoly(static_cast<int>(g.integer(1, 6)), 9);
        if (!is_squarefree(p)) {
            continue;
        }
        ++tested;
        const auto exact = power_sums(p, 8);
        const auto numeric = oracle::power_sums(p, 8);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            const oracle::real err = abs(numeric[k] - oracle::cplx(oracle::to_real(exact[k])));
            const oracle::real scale = std::max(oracle::real(1), oracle::real(abs(oracle::to_real(exact[k]))));
            EXPECT_LT(err / scale, tol) << to_string(p) << " k=" << k;
        }
    }
}

TEST(FFSolve, Identity)
{
    const RatMatrix a = RatMatrix::identity(2);
    RatMatrix b(2, 1);
    b(0, 0) = Rational(3, 4);
    b(1, 0) = -5;
    const auto s = ff_solve(a, b);
    EXPECT_EQ(s.particular(0, 0), Rational(3, 4));
    EXPECT_EQ(s.particular(1, 0), -5);
    EXPECT_TRUE(s.nullspace.empty());
}

TEST(FFSolve, RankOne)
{
    RatMatrix a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 1;
    a(1, 0) = 2;
    a(1, 1) = 2;
    RatMatrix b(2, 1);
    b(0, 0) = 1;
    b(1, 0) = 2;
    const auto s = ff_solve(a, b);
    EXPECT_EQ(s.rank, 1u);
    ASSERT_EQ(s.nullspace.size(), 1u);
    EXPECT_EQ(s.nullspace[0][0] + s.nullspace[0][1], 0);
    EXPECT_EQ(s.particular(0, 0) + s.particular(1, 0), 1);
    b(1, 0) = 3;
    EXPECT_THROW(ff_solve(a, b), error);
}

TEST(FFSolve, RandomSystemsSatisfyEquations)
{
    oracle::Gen g(77);
    for (int it = 0; it < 40; ++it) {
        const std::size_t m = static_cast<std::size_t>(g.integer(1, 6));
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 6));
        RatMatrix a(m, n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = g.integer(0, 2) == 0 ? Rational(0) : g.rational(5, 3);
            }
        }
        // consistent right-hand side A x0
        RatMatrix x0(n, 2);
        for (std::size_t j = 0; j < n; ++j) {
            x0(j, 0) = g.rational(7, 4);
            x0(j, 1) = g.rational(7, 4);
        }
        const RatMatrix b = a * x0;
        const auto s = ff_solve(a, b);
        const RatMatrix ax = a * s.particular;
        for (std::size_t i = 0; i < m; ++i) {
            EXPECT_EQ(ax(i, 0), b(i, 0));
            EXPECT_EQ(ax(i, 1), b(i, 1));
        }
        EXPECT_EQ(s.rank + s.nullspace.size(), n);
        for (const auto &v : s.nullspace) {
            for (std::size_t i = 0; i < m; ++i) {
                Rational acc = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    acc += a(i, j) * v[j];
                }
                EXPECT_EQ(acc, 0);
            }
        }
    }
}

TEST(Vandermonde, Examples)
{
    const auto v = vandermonde(std::vector<Rational>{1, 2});
    EXPECT_EQ(v(0, 0), 1);
    EXPECT_EQ(v(0, 1), 1);
    EXPECT_EQ(v(1, 0), 1);
    EXPECT_EQ(v(1, 1), 2);
    const auto one = vandermonde(std::vector<Rational>{Rational(5)});
    EXPECT_EQ(one.rows(), 1u);
    EXPECT_EQ(one(0, 0), 1);
    const auto w = vandermonde(std::vector<Rational>{-1, Rational(1, 2), 3, 7});
    EXPECT_NE(determinant(w), 0);
    EXPECT_EQ(determinant(vandermonde(std::vector<Rational>{1, 2, 1})), 0);
}

TEST(BPoly, DegreesAndPrinting)
{
    const BPoly x = BPoly::x(), y = BPoly::y();
    const BPoly f = x * x * x - y * y * y + BPoly(Rational(2)) * x * y + x - BPoly(Rational(2)) * y + BPoly(Rational(1));
    EXPECT_EQ(f.total_degree(), 3);
    EXPECT_EQ(to_string(f), "x^3-y^3+2*x*y+x-2*y+1");
    const BPoly cancel = x * y - y * x;
    EXPECT_EQ(cancel.total_degree(), -1);
    EXPECT_EQ(to_string(f.derivative_y()), "-3*y^2+2*x-2");
    EXPECT_EQ(f.at_x(Rational(1)), UPoly({Rational(3), Rational(0), Rational(0), Rational(-1)}));
}
