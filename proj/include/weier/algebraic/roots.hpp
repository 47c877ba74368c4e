#ifndef WEIER_ALGEBRAIC_ROOTS_HPP
#define WEIER_ALGEBRAIC_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include <weier/algebraic/ball.hpp>
#include <weier/core/errors.hpp>
#include <weier/core/resultant.hpp>
#include <weier/core/upoly.hpp>

namespace weier
{

// A disk that contains exactly one root of its polynomial.
struct RootApprox {
    ComplexQ center;
    Rational radius;
    // certified real (center on the real axis, disk isolates the root)
    bool real = false;
};

struct RootIsolation {
    std::vector<RootApprox> roots;
    // positive lower bound on the distance between any two distinct roots
    Rational separation_bound;
};

namespace detail
{

inline ComplexQ horner(const UPoly &p, const ComplexQ &z)
{
    ComplexQ acc;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * z + ComplexQ(p.coeffs()[i]);
    }
    return acc;
}

// Upper bound for n |p(z)| / |p'(z)|; a root of p lies within that distance
// of z because p'/p = sum 1/(z - r_j). Returns -1 when p'(z) = 0.
inline Rational inclusion_radius(const UPoly &p, const UPoly &dp, const ComplexQ &z)
{
    const ComplexQ v = horner(p, z);
    const Rational nv = norm2(v);
    if (sgn(nv) == 0) {
        return Rational(0);
    }
    const Rational nd = norm2(horner(dp, z));
    if (sgn(nd) == 0) {
        return Rational(-1);
    }
    const long n = p.degree();
    return round_up_dyadic(sqrt_upper(Rational(n * n) * nv / nd));
}

// Mahler: sep(P) > sqrt(3 |disc P|) n^(-(n+2)/2) |P|_2^(-(n-1)) for a
// square-free integer polynomial P of degree n >= 2.
inline Rational mahler_separation_bound(const UPoly &m)
{
    const long n = m.degree();
    if (n < 2) {
        return Rational(1);
    }
    const auto ic = primitive_integer_coeffs(m);
    std::vector<Rational> qc(ic.begin(), ic.end());
    const UPoly p(std::move(qc));
    Rational norm2 = 0;
    for (const auto &c : p.coeffs()) {
        norm2 += c * c;
    }
    const Rational disc = abs(discriminant(p));
    const Rational bound_sq = Rational(3) * disc / (pow(Rational(n), static_cast<unsigned long>(n + 2)) * pow(norm2, static_cast<unsigned long>(n - 1)));
    return sqrt_lower(bound_sq, 32);
}

inline std::vector<std::complex<double>> aberth_double(const UPoly &p)
{
    const int n = p.degree();
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        a[static_cast<std::size_t>(i)] = Rational(p.coeffs()[static_cast<std::size_t>(i)] / p.lead()).get_d();
    }
    double bound = 0;
    for (int i = 0; i < n; ++i) {
        bound = std::max(bound, std::abs(a[static_cast<std::size_t>(i)]));
    }
    bound += 1;
    using cd = std::complex<double>;
    auto eval = [&](cd z, cd &dv) {
        cd v = 0;
        dv = 0;
        for (int i = n; i >= 0; --i) {
            dv = dv * z + v;
            v = v * z + a[static_cast<std::size_t>(i)];
        }
        return v;
    };
    std::vector<cd> z(static_cast<std::size_t>(n));
    const double pi = std::acos(-1.0);
    for (int k = 0; k < n; ++k) {
        z[static_cast<std::size_t>(k)] = std::polar(0.5 * bound, 2 * pi * k / n + 0.4);
    }
    for (int it = 0; it < 500; ++it) {
        double maxstep = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            cd dv;
            const cd v = eval(z[k], dv);
            if (v == cd(0) || dv == cd(0)) {
                continue;
            }
            const cd ratio = v / dv;
            cd s = 0;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != k && z[j] != z[k]) {
                    s += 1.0 / (z[k] - z[j]);
                }
            }
            const cd w = ratio / (1.0 - ratio * s);
            z[k] -= w;
            maxstep = std::max(maxstep, std::abs(w) / (1 + std::abs(z[k])));
        }
        if (maxstep < 1e-15) {
            break;
        }
    }
    return z;
}

// Aberth iterations in exact complex rationals rounded to `bits`.
inline void aberth_refine(const UPoly &p, const UPoly &dp, std::vector<ComplexQ> &z, long bits)
{
    const Rational tol = ldexp(Rational(1), -bits);
    for (int it = 0; it < 200; ++it) {
        Rational maxstep = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const ComplexQ v = horner(p, z[k]);
            if (sgn(norm2(v)) == 0) {
                continue;
            }
            const ComplexQ dv = horner(dp, z[k]);
            if (sgn(norm2(dv)) == 0) {
                z[k] = z[k] + ComplexQ(ldexp(Rational(1), -bits / 2), ldexp(Rational(1), -bits / 2));
                maxstep = 1;
                continue;
            }
            const ComplexQ ratio = v / dv;
            ComplexQ s;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != k && !(z[j] == z[k])) {
                    s = s + ComplexQ(1) / (z[k] - z[j]);
                }
            }
            const ComplexQ denom = ComplexQ(1) - ratio * s;
            const ComplexQ w = sgn(norm2(denom)) == 0 ? ratio : ratio / denom;
            z[k] = round_dyadic(z[k] - w, bits + 8);
            maxstep = std::max(maxstep, abs_bound(w));
        }
        if (maxstep < tol) {
            break;
        }
    }
}

inline bool disks_disjoint(const RootApprox &a, const RootApprox &b)
{
    const Rational r = a.radius + b.radius;
    return norm2(a.center - b.center) > r * r;
}

// Snaps real roots onto the axis and makes conjugate pairs exactly
// conjugate. Returns false if the disks do not support that structure yet.
inline bool impose_conjugate_symmetry(std::vector<RootApprox> &roots)
{
    std::vector<std::size_t> upper, lower;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        auto &r = roots[k];
        if (abs(r.center.im) <= r.radius) {
            r.radius = round_up_dyadic(r.radius + abs(r.center.im));
            r.center.im = 0;
            r.real = true;
        } else if (sgn(r.center.im) > 0) {
            upper.push_back(k);
        } else {
            lower.push_back(k);
        }
    }
    if (upper.size() != lower.size()) {
        return false;
    }
    std::vector<bool> used(roots.size(), false);
    for (auto k : upper) {
        const ComplexQ target = roots[k].center.conj();
        std::size_t best = roots.size();
        Rational best_d;
        for (auto j : lower) {
            if (used[j]) {
                continue;
            }
            const Rational d = norm2(roots[j].center - target);
            if (best == roots.size() || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best == roots.size()) {
            return false;
        }
        const Rational reach = roots[k].radius + roots[best].radius;
        if (best_d > reach * reach) {
            return false;
        }
        used[best] = true;
        roots[best].center = target;
        roots[best].radius = roots[k].radius;
    }
    return true;
}

// True when every pair is certified ordered by real part, or is a conjugate
// pair (real parts exactly equal, imaginary parts of opposite sign).
inline bool real_parts_resolved(const std::vector<RootApprox> &roots)
{
    for (std::size_t a = 0; a < roots.size(); ++a) {
        for (std::size_t b = a + 1; b < roots.size(); ++b) {
            const auto &ra = roots[a];
            const auto &rb = roots[b];
            if (ra.center.re == rb.center.re && ra.center.im == -rb.center.im) {
                continue;
            }
            if (abs(ra.center.re - rb.center.re) <= ra.radius + rb.radius) {
                return false;
            }
        }
    }
    return true;
}

constexpr long max_isolation_bits = 1L << 15;
constexpr long tie_break_bits = 4096;

} // namespace detail

// Certified isolation of all complex roots of a square-free polynomial,
// ordered by ascending real part, ties by ascending imaginary part.
inline RootIsolation isolate_roots(const UPoly &m)
{
    if (m.is_zero()) {
        raise(errc::zero_polynomial, "isolate_roots of the zero polynomial");
    }
    if (!is_squarefree(m)) {
        raise(errc::not_square_free, "isolate_roots: " + to_string(m) + " is not square-free");
    }
    RootIsolation out;
    out.separation_bound = detail::mahler_separation_bound(m);
    const int n = m.degree();
    if (n < 1) {
        return out;
    }
    if (n == 1) {
        out.roots.push_back({ComplexQ(-m.coeffs()[0] / m.coeffs()[1]), Rational(0), true});
        return out;
    }
    const UPoly p = monic(m);
    const UPoly dp = derivative(p);

    std::vector<ComplexQ> z;
    for (const auto &c : detail::aberth_double(p)) {
        z.push_back(round_dyadic(ComplexQ(Rational(c.real()), Rational(c.imag())), 60));
    }
    const Rational quarter_sep = out.separation_bound / 4;
    for (long bits = 64; bits <= detail::max_isolation_bits; bits *= 2) {
        detail::aberth_refine(p, dp, z, bits);
        std::vector<RootApprox> roots;
        bool ok = true;
        for (const auto &c : z) {
            const Rational r = detail::inclusion_radius(p, dp, c);
            if (sgn(r) < 0) {
                ok = false;
                break;
            }
            roots.push_back({c, r, false});
        }
        if (!ok || !detail::impose_conjugate_symmetry(roots)) {
            continue;
        }
        for (const auto &r : roots) {
            if (r.radius >= quarter_sep) {
                ok = false;
            }
        }
        for (std::size_t a = 0; ok && a < roots.size(); ++a) {
            for (std::size_t b = a + 1; ok && b < roots.size(); ++b) {
                ok = detail::disks_disjoint(roots[a], roots[b]);
            }
        }
        if (!ok) {
            continue;
        }
        if (!detail::real_parts_resolved(roots) && bits < detail::tie_break_bits) {
            continue;
        }
        std::sort(roots.begin(), roots.end(), [](const RootApprox &a, const RootApprox &b) {
            if (a.center.re != b.center.re) {
                return a.center.re < b.center.re;
            }
            return a.center.im < b.center.im;
        });
        out.roots = std::move(roots);
        return out;
    }
    raise(errc::internal, "root isolation did not converge for " + to_string(m));
}

// Shrinks the disk of one isolated root to radius <= 2^-bits; the new disk
// lies inside the old one, so it still identifies the same root.
inline RootApprox refine_root(const UPoly &m, const RootApprox &r, long bits)
{
    const Rational target = ldexp(Rational(1), -bits);
    if (r.radius <= target) {
        return r;
    }
    const UPoly p = monic(m);
    const UPoly dp = derivative(p);
    ComplexQ z = r.center;
    for (long work = bits + 8; work <= bits + detail::max_isolation_bits; work *= 2) {
        for (int it = 0; it < 200; ++it) {
            const ComplexQ v = detail::horner(p, z);
            if (sgn(norm2(v)) == 0) {
                break;
            }
            const ComplexQ dv = detail::horner(dp, z);
            if (sgn(norm2(dv)) == 0) {
                break;
            }
            const ComplexQ w = v / dv;
            z = round_dyadic(z - w, work);
            if (abs_bound(w) < ldexp(Rational(1), -work)) {
                break;
            }
        }
        if (r.real) {
            z.im = 0;
        }
        const Rational rad = detail::inclusion_radius(p, dp, z);
        if (sgn(rad) < 0) {
            z = r.center;
            continue;
        }
        if (rad <= target && abs_bound(z - r.center) + rad <= r.radius) {
            return {z, rad, r.real};
        }
    }
    raise(errc::internal, "root refinement failed for " + to_string(m));
}

} // namespace weier

#endif
