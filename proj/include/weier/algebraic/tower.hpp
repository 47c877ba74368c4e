#ifndef WEIER_ALGEBRAIC_TOWER_HPP
#define WEIER_ALGEBRAIC_TOWER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <weier/algebraic/ball.hpp>
#include <weier/algebraic/roots.hpp>
#include <weier/core/bpoly.hpp>
#include <weier/core/errors.hpp>
#include <weier/core/rational.hpp>
#include <weier/core/upoly.hpp>

namespace weier
{

class Tower;
using TowerPtr = std::shared_ptr<Tower>;

// Exponent vector over the tower generators, trailing zeros trimmed so that
// each monomial has exactly one representation.
using Exponents = std::vector<std::uint16_t>;

// An element of Q[t1..tk]/(m1(t1), .., mk(tk)), every mi square-free over Q.
// The representative is kept fully reduced (deg_ti < deg mi). An element
// without a tower is a plain rational and combines with any tower.
class TowerElement
{
public:
    using term_map = std::map<Exponents, Rational>;

    TowerElement() = default;
    TowerElement(const Rational &q)
    {
        if (sgn(q) != 0) {
            terms_.emplace(Exponents{}, q);
        }
    }
    TowerElement(long v) : TowerElement(Rational(v)) {}
    TowerElement(int v) : TowerElement(Rational(v)) {}

    // Terms must already be reduced modulo the tower.
    static TowerElement from_terms(TowerPtr tower, term_map terms)
    {
        TowerElement out;
        out.tower_ = std::move(tower);
        for (auto &[e, c] : terms) {
            out.accumulate(e, c);
        }
        return out;
    }

    const TowerPtr &tower() const noexcept
    {
        return tower_;
    }
    const term_map &terms() const noexcept
    {
        return terms_;
    }

    bool is_rational() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational rational_value() const
    {
        auto it = terms_.find(Exponents{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Indices of the generators that occur in the representative.
    std::vector<std::size_t> support() const
    {
        std::vector<bool> seen;
        for (const auto &[e, c] : terms_) {
            if (e.size() > seen.size()) {
                seen.resize(e.size(), false);
            }
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j] != 0) {
                    seen[j] = true;
                }
            }
        }
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < seen.size(); ++j) {
            if (seen[j]) {
                out.push_back(j);
            }
        }
        return out;
    }

    TowerElement operator-() const
    {
        TowerElement out;
        out.tower_ = tower_;
        for (const auto &[e, c] : terms_) {
            out.terms_.emplace(e, -c);
        }
        return out;
    }

    friend TowerElement operator+(const TowerElement &a, const TowerElement &b)
    {
        TowerElement out;
        out.tower_ = merge(a.tower_, b.tower_);
        out.terms_ = a.terms_;
        for (const auto &[e, c] : b.terms_) {
            out.accumulate(e, c);
        }
        return out;
    }
    friend TowerElement operator-(const TowerElement &a, const TowerElement &b)
    {
        TowerElement out;
        out.tower_ = merge(a.tower_, b.tower_);
        out.terms_ = a.terms_;
        for (const auto &[e, c] : b.terms_) {
            out.accumulate(e, -c);
        }
        return out;
    }
    friend TowerElement operator*(const TowerElement &a, const TowerElement &b);

    friend TowerElement operator*(const TowerElement &a, const Rational &s)
    {
        TowerElement out;
        if (sgn(s) == 0) {
            return out;
        }
        out.tower_ = a.tower_;
        for (const auto &[e, c] : a.terms_) {
            out.terms_.emplace(e, c * s);
        }
        return out;
    }
    friend TowerElement operator*(const Rational &s, const TowerElement &a)
    {
        return a * s;
    }
    friend TowerElement operator/(const TowerElement &a, const Rational &s)
    {
        if (sgn(s) == 0) {
            raise(errc::zero_division, "tower element divided by zero");
        }
        return a * Rational(Rational(1) / s);
    }

    TowerElement &operator+=(const TowerElement &o)
    {
        return *this = *this + o;
    }
    TowerElement &operator-=(const TowerElement &o)
    {
        return *this = *this - o;
    }
    TowerElement &operator*=(const TowerElement &o)
    {
        return *this = *this * o;
    }

    // Structural equality of representatives (not the embedding test).
    friend bool operator==(const TowerElement &a, const TowerElement &b)
    {
        return a.terms_ == b.terms_;
    }

private:
    friend class Tower;

    static TowerPtr merge(const TowerPtr &a, const TowerPtr &b)
    {
        if (!a) {
            return b;
        }
        if (!b || a == b) {
            return a;
        }
        raise(errc::context_mismatch, "tower elements from different contexts combined");
    }

    void accumulate(const Exponents &e, const Rational &c)
    {
        if (sgn(c) == 0) {
            return;
        }
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    TowerPtr tower_;
    term_map terms_;
};

inline bool is_null(const TowerElement &a) noexcept
{
    return a.terms().empty();
}

struct ExtensionDescriptor {
    // monic, square-free
    UPoly modulus;
    std::size_t root_id = 0;
    std::size_t degree = 0;
    Rational separation_bound;
    // row e-d holds t^e reduced, for e = d .. 2d-2
    std::vector<std::vector<Rational>> reduction;
};

// Decimal rendering with certified error below 10^-digits per component.
struct DecimalApprox {
    std::string re;
    std::string im;
    bool real_form = true;

    std::string str() const
    {
        if (real_form) {
            return re;
        }
        std::string s = re;
        if (!im.empty() && im[0] == '-') {
            s += "-" + im.substr(1);
        } else {
            s += "+" + im;
        }
        return s + "i";
    }
};

// Element carries the failing generator and gcd(modulus, element) over the
// lower generators: a nontrivial factor of that generator's modulus.
class not_invertible_error : public error
{
public:
    not_invertible_error(std::size_t generator, Poly<TowerElement> witness, const std::string &what)
        : error(errc::not_invertible, what), generator_(generator), witness_(std::move(witness))
    {
    }
    std::size_t generator() const noexcept
    {
        return generator_;
    }
    const Poly<TowerElement> &witness() const noexcept
    {
        return witness_;
    }
    // The witness as a polynomial over Q when its coefficients are rational.
    std::optional<UPoly> rational_witness() const
    {
        std::vector<Rational> v;
        for (const auto &c : witness_.coeffs()) {
            if (!c.is_rational()) {
                return std::nullopt;
            }
            v.push_back(c.rational_value());
        }
        return UPoly(std::move(v));
    }

private:
    std::size_t generator_;
    Poly<TowerElement> witness_;
};

// Append-only flat tower. Every modulus is a polynomial over Q; generator
// i is one certified complex root of modulus i. Only root approximations
// mutate after adjoin, guarded by the mutex; refinement is monotone.
class Tower : public std::enable_shared_from_this<Tower>
{
public:
    static TowerPtr create()
    {
        return TowerPtr(new Tower());
    }

    // Adjoins root number `root_id` (canonical order) of m. Re-adjoining the
    // same (modulus, root) returns the existing generator.
    TowerElement adjoin(const UPoly &m, std::size_t root_id)
    {
        if (m.degree() < 1) {
            raise(errc::invalid_argument, "adjoin needs a modulus of degree >= 1");
        }
        if (!is_squarefree(m)) {
            raise(errc::not_square_free, "adjoin: " + to_string(m) + " is not square-free");
        }
        const UPoly mm = monic(m);
        std::size_t index;
        {
            std::lock_guard<std::mutex> lock(mu_);
            for (std::size_t i = 0; i < ext_.size(); ++i) {
                if (ext_[i]->modulus == mm && ext_[i]->root_id == root_id) {
                    return generator_unlocked(i);
                }
            }
        }
        const RootIsolation iso = isolation(mm);
        if (root_id >= iso.roots.size()) {
            raise(errc::invalid_argument, "root index " + std::to_string(root_id) + " out of range for " + to_string(mm));
        }
        auto d = std::make_shared<ExtensionDescriptor>();
        d->modulus = mm;
        d->root_id = root_id;
        d->degree = static_cast<std::size_t>(mm.degree());
        d->separation_bound = iso.separation_bound;
        const std::size_t deg = d->degree;
        std::vector<Rational> row(deg);
        for (std::size_t l = 0; l < deg; ++l) {
            row[l] = -mm.coeffs()[l];
        }
        for (std::size_t e = deg; e + 1 < 2 * deg; ++e) {
            d->reduction.push_back(row);
            // multiply by t and fold t^d back in
            std::vector<Rational> next(deg);
            const Rational top = row[deg - 1];
            for (std::size_t l = deg - 1; l > 0; --l) {
                next[l] = row[l - 1];
            }
            for (std::size_t l = 0; l < deg; ++l) {
                next[l] -= top * mm.coeffs()[l];
            }
            row = std::move(next);
        }
        std::lock_guard<std::mutex> lock(mu_);
        for (std::size_t i = 0; i < ext_.size(); ++i) {
            if (ext_[i]->modulus == mm && ext_[i]->root_id == root_id) {
                return generator_unlocked(i);
            }
        }
        ext_.push_back(d);
        approx_.push_back(iso.roots[root_id]);
        index = ext_.size() - 1;
        return generator_unlocked(index);
    }

    TowerElement generator(std::size_t i)
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (i >= ext_.size()) {
            raise(errc::invalid_argument, "no generator " + std::to_string(i));
        }
        return generator_unlocked(i);
    }

    TowerElement constant(const Rational &q)
    {
        TowerElement e(q);
        e.tower_ = shared_from_this();
        return e;
    }

    std::size_t size() const
    {
        std::lock_guard<std::mutex> lock(mu_);
        return ext_.size();
    }

    std::shared_ptr<const ExtensionDescriptor> descriptor(std::size_t i) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        return ext_.at(i);
    }

    RootApprox approximation(std::size_t i) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        return approx_.at(i);
    }

    // Refines generator i until its disk radius is <= 2^-bits.
    RootApprox approximation(std::size_t i, long bits)
    {
        std::lock_guard<std::mutex> lock(mu_);
        RootApprox &a = approx_.at(i);
        if (a.radius > ldexp(Rational(1), -bits)) {
            a = refine_root(ext_.at(i)->modulus, a, bits);
        }
        return a;
    }

    // Certified enclosure of the embedded value of a.
    Ball ball(const TowerElement &a, long bits)
    {
        const BallContext ctx(bits + 16);
        const auto sup = a.support();
        std::vector<std::vector<Ball>> powers(sup.empty() ? 0 : sup.back() + 1);
        for (auto j : sup) {
            const RootApprox r = approximation(j, bits + 8);
            const std::size_t deg = descriptor(j)->degree;
            auto &pw = powers[j];
            pw.push_back(ctx.exact(Rational(1)));
            const Ball g{r.center, r.radius};
            for (std::size_t e = 1; e < deg; ++e) {
                pw.push_back(ctx.mul(pw.back(), g));
            }
        }
        Ball acc = ctx.exact(Rational(0));
        for (const auto &[e, c] : a.terms()) {
            Ball t = ctx.exact(Rational(1));
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j] != 0) {
                    t = ctx.mul(t, powers[j][e[j]]);
                }
            }
            acc = ctx.add(acc, ctx.scale(t, c));
        }
        return acc;
    }

    // Certified decimal approximation: each component within 10^-digits.
    DecimalApprox approximate(const TowerElement &a, int digits)
    {
        const Rational tol = Rational(1, 2) / pow(Rational(10), static_cast<unsigned long>(digits));
        long bits = static_cast<long>(digits * 3.33) + 24;
        for (;;) {
            const Ball b = ball(a, bits);
            if (b.rad < tol) {
                DecimalApprox out;
                out.re = to_decimal(b.mid.re, digits);
                out.im = to_decimal(b.mid.im, digits);
                out.real_form = sgn(b.mid.im) == 0;
                return out;
            }
            bits *= 2;
        }
    }

private:
    friend TowerElement operator*(const TowerElement &a, const TowerElement &b);
    friend bool is_zero(const TowerElement &a);
    friend TowerElement invert(const TowerElement &a);

    Tower() = default;

    TowerElement generator_unlocked(std::size_t i)
    {
        TowerElement g;
        g.tower_ = shared_from_this();
        if (ext_[i]->degree == 1) {
            // a rational root: t_i is already reduced to a constant
            g.accumulate(Exponents{}, -ext_[i]->modulus.coeffs()[0]);
            return g;
        }
        Exponents e(i + 1, 0);
        e[i] = 1;
        g.terms_.emplace(std::move(e), Rational(1));
        return g;
    }

    RootIsolation isolation(const UPoly &mm)
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            for (const auto &[m, iso] : iso_cache_) {
                if (m == mm) {
                    return iso;
                }
            }
        }
        RootIsolation iso = isolate_roots(mm);
        std::lock_guard<std::mutex> lock(mu_);
        iso_cache_.emplace_back(mm, iso);
        return iso;
    }

    // Folds exponents >= deg back below deg, one generator at a time.
    void reduce(TowerElement::term_map &terms) const
    {
        std::size_t span = 0;
        for (const auto &[e, c] : terms) {
            span = std::max(span, e.size());
        }
        for (std::size_t j = 0; j < span; ++j) {
            const auto d = descriptor(j);
            const std::size_t deg = d->degree;
            bool needed = false;
            for (const auto &[e, c] : terms) {
                if (j < e.size() && e[j] >= deg) {
                    needed = true;
                    break;
                }
            }
            if (!needed) {
                continue;
            }
            TowerElement::term_map out;
            auto add = [&out](Exponents e, const Rational &c) {
                while (!e.empty() && e.back() == 0) {
                    e.pop_back();
                }
                auto [it, fresh] = out.emplace(std::move(e), c);
                if (!fresh) {
                    it->second += c;
                }
            };
            for (const auto &[e, c] : terms) {
                if (j >= e.size() || e[j] < deg) {
                    add(e, c);
                    continue;
                }
                const auto &row = d->reduction.at(e[j] - deg);
                for (std::size_t l = 0; l < deg; ++l) {
                    if (sgn(row[l]) == 0) {
                        continue;
                    }
                    Exponents e2 = e;
                    e2[j] = static_cast<std::uint16_t>(l);
                    add(std::move(e2), c * row[l]);
                }
            }
            for (auto it = out.begin(); it != out.end();) {
                it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
            }
            terms = std::move(out);
        }
    }

    // Lower bound for |a| at the embedding whenever a is nonzero there.
    // With L_j the lcm of the denominators of monic m_j, L_j t_j is an
    // algebraic integer, so D a is one for D = den(a) prod L_j^(deg_j - 1).
    // The product of the nonzero conjugates of D a (over all dim = prod deg_j
    // embeddings of the tensor algebra) is a nonzero integer, and every
    // conjugate is at most B = D sum |c_e| prod R_j^(e_j) in absolute value,
    // R_j = 1 + max |coeff of m_j| (Cauchy). Hence |a| >= 1 / (D B^(dim-1))
    // unless a vanishes at the embedding.
    Rational zero_bound(const TowerElement &a) const
    {
        const auto sup = a.support();
        std::size_t dim = 1;
        Integer den = 1;
        for (const auto &[e, c] : a.terms()) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
        Rational scale(den);
        std::vector<Rational> radius(sup.empty() ? 0 : sup.back() + 1);
        for (auto j : sup) {
            const auto d = descriptor(j);
            dim *= d->degree;
            Integer l = 1;
            Rational top = 0;
            for (const auto &c : d->modulus.coeffs()) {
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
                top = std::max(top, Rational(abs(c)));
            }
            radius[j] = top + 1;
            scale *= pow(Rational(l), static_cast<unsigned long>(d->degree - 1));
        }
        Rational b = 0;
        for (const auto &[e, c] : a.terms()) {
            Rational t = abs(c);
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j] != 0) {
                    t *= pow(radius[j], e[j]);
                }
            }
            b += t;
        }
        b = std::max(Rational(1), Rational(b * scale));
        return Rational(1) / (scale * pow(b, static_cast<unsigned long>(dim - 1)));
    }

    mutable std::mutex mu_;
    std::vector<std::shared_ptr<const ExtensionDescriptor>> ext_;
    std::vector<RootApprox> approx_;
    std::vector<std::pair<UPoly, RootIsolation>> iso_cache_;
};

inline TowerElement operator*(const TowerElement &a, const TowerElement &b)
{
    TowerElement out;
    out.tower_ = TowerElement::merge(a.tower_, b.tower_);
    if (a.terms_.empty() || b.terms_.empty()) {
        return out;
    }
    bool needs_reduction = false;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            Exponents e(std::max(ea.size(), eb.size()), 0);
            for (std::size_t j = 0; j < ea.size(); ++j) {
                e[j] = ea[j];
            }
            for (std::size_t j = 0; j < eb.size(); ++j) {
                e[j] = static_cast<std::uint16_t>(e[j] + eb[j]);
                needs_reduction = needs_reduction || (ea.size() > j && ea[j] != 0 && eb[j] != 0);
            }
            out.accumulate(e, ca * cb);
        }
    }
    if (needs_reduction && out.tower_) {
        out.tower_->reduce(out.terms_);
    }
    return out;
}

// Exact decision of whether the embedded value of a is zero. Structural
// zero first; otherwise a certified enclosure either excludes zero or drops
// below the bound of Tower::zero_bound.
inline bool is_zero(const TowerElement &a)
{
    if (a.terms().empty()) {
        return true;
    }
    if (a.is_rational() || !a.tower()) {
        return false;
    }
    Tower &tw = *a.tower();
    Ball b = tw.ball(a, 64);
    if (b.excludes_zero()) {
        return false;
    }
    const Rational bound = tw.zero_bound(a);
    for (long bits = 128;; bits *= 2) {
        b = tw.ball(a, bits);
        if (b.excludes_zero()) {
            return false;
        }
        if (abs_bound(b.mid) + b.rad < bound) {
            return true;
        }
    }
}

namespace detail
{

// a as a polynomial in generator k with coefficients free of generator k.
inline Poly<TowerElement> split_on(const TowerElement &a, std::size_t k)
{
    std::vector<TowerElement::term_map> parts;
    for (const auto &[e, c] : a.terms()) {
        const std::size_t deg = k < e.size() ? e[k] : 0;
        Exponents rest = e;
        if (k < rest.size()) {
            rest[k] = 0;
        }
        while (!rest.empty() && rest.back() == 0) {
            rest.pop_back();
        }
        if (parts.size() <= deg) {
            parts.resize(deg + 1);
        }
        parts[deg].emplace(std::move(rest), c);
    }
    std::vector<TowerElement> v;
    for (auto &p : parts) {
        v.push_back(TowerElement::from_terms(a.tower(), std::move(p)));
    }
    return Poly<TowerElement>(std::move(v));
}

inline TowerElement join_on(const Poly<TowerElement> &p, const TowerElement &gen)
{
    TowerElement acc;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * gen + p.coeffs()[i];
    }
    return acc;
}

} // namespace detail

// Exact inverse by extended Euclid on the highest generator, recursing into
// the lower generators for leading coefficients.
inline TowerElement invert(const TowerElement &a)
{
    if (a.terms().empty()) {
        raise(errc::zero_division, "inverse of zero");
    }
    if (a.is_rational()) {
        TowerElement out(Rational(1) / a.rational_value());
        if (a.tower()) {
            out = a.tower()->constant(out.rational_value());
        }
        return out;
    }
    Tower &tw = *a.tower();
    const std::size_t k = a.support().back();
    const TowerElement gen = tw.generator(k);
    const auto desc = tw.descriptor(k);
    std::vector<TowerElement> mc;
    for (const auto &c : desc->modulus.coeffs()) {
        mc.push_back(tw.constant(c));
    }
    Poly<TowerElement> r0(std::move(mc));
    Poly<TowerElement> r1 = detail::split_on(a, k);
    Poly<TowerElement> s0, s1(tw.constant(Rational(1)));

    auto poly_divmod = [](const Poly<TowerElement> &num, const Poly<TowerElement> &den) {
        const TowerElement inv = invert(den.lead());
        std::vector<TowerElement> rem = num.coeffs();
        const int dd = den.degree();
        std::vector<TowerElement> quo(static_cast<std::size_t>(std::max(num.degree() - dd + 1, 0)));
        for (int i = num.degree() - dd; i >= 0; --i) {
            const TowerElement q = rem[static_cast<std::size_t>(i + dd)] * inv;
            quo[static_cast<std::size_t>(i)] = q;
            for (int j = 0; j <= dd; ++j) {
                rem[static_cast<std::size_t>(i + j)] = rem[static_cast<std::size_t>(i + j)] - q * den.coeffs()[static_cast<std::size_t>(j)];
            }
        }
        rem.resize(static_cast<std::size_t>(dd));
        return std::make_pair(Poly<TowerElement>(std::move(quo)), Poly<TowerElement>(std::move(rem)));
    };

    for (;;) {
        if (r1.degree() == 0) {
            const TowerElement c = invert(r1.lead());
            return detail::join_on(s1, gen) * c;
        }
        auto [q, r] = poly_divmod(r0, r1);
        if (r.is_zero()) {
            Poly<TowerElement> witness = r1;
            try {
                witness = r1.scaled(invert(r1.lead()));
            } catch (const error &) {
            }
            std::string text;
            for (std::size_t i = witness.size(); i-- > 0;) {
                if (witness.coeffs()[i].is_rational()) {
                    const Rational &c = witness.coeffs()[i].rational_value();
                    if (sgn(c) == 0) {
                        continue;
                    }
                    text += (sgn(c) < 0 ? "-" : (text.empty() ? "" : "+")) + to_string(Rational(abs(c)));
                } else {
                    text += text.empty() ? "(..)" : "+(..)";
                }
                if (i > 0) {
                    text += "*t" + std::to_string(k + 1) + (i > 1 ? "^" + std::to_string(i) : "");
                }
            }
            throw not_invertible_error(k, std::move(witness),
                                       "element is a zero divisor: modulus of t" + std::to_string(k + 1) + " has the factor " + text);
        }
        Poly<TowerElement> s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

inline TowerElement operator/(const TowerElement &a, const TowerElement &b)
{
    return a * invert(b);
}

// p(x, y) with rational x and algebraic y.
inline TowerElement eval_bpoly(const BPoly &p, const Rational &x, const TowerElement &y)
{
    return p.at_x(x)(y);
}

} // namespace weier

#endif
