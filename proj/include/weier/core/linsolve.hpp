#ifndef WEIER_CORE_LINSOLVE_HPP
#define WEIER_CORE_LINSOLVE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <weier/core/errors.hpp>
#include <weier/core/matrix.hpp>
#include <weier/core/rational.hpp>

namespace weier
{

template <typename T>
struct FFSolution {
    // cols(A) x cols(B); free variables set to zero.
    Matrix<T> particular;
    // Basis of the rational nullspace of A, one vector of length cols(A) each.
    std::vector<std::vector<Rational>> nullspace;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

// Solves A X = B exactly. A is rational; the entries of B live in any
// commutative Q-algebra T (Rational, TowerElement, ...). Elimination is
// fraction-free on A (Bareiss) after clearing row denominators, and the very
// same row operations are replayed on B. T needs +, -, * Rational and a free
// is_zero(const T&) deciding equality with zero.
template <typename T>
FFSolution<T> ff_solve(const RatMatrix &a_in, const Matrix<T> &b_in)
{
    const std::size_t m = a_in.rows();
    const std::size_t n = a_in.cols();
    const std::size_t nb = b_in.cols();
    if (b_in.rows() != m) {
        raise(errc::invalid_argument, "ff_solve: row count of A and B differ");
    }
    RatMatrix a = a_in;
    Matrix<T> b = b_in;

    // Integer rows.
    for (std::size_t i = 0; i < m; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        }
        if (l != 1) {
            const Rational s(l);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) *= s;
            }
            for (std::size_t j = 0; j < nb; ++j) {
                b(i, j) = b(i, j) * s;
            }
        }
    }

    FFSolution<T> out;
    Rational prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && sgn(a(p, c)) == 0) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        a.swap_rows(r, p);
        b.swap_rows(r, p);
        const Rational piv = a(r, c);
        for (std::size_t i = r + 1; i < m; ++i) {
            const Rational f = a(i, c);
            for (std::size_t j = c + 1; j < n; ++j) {
                a(i, j) = (piv * a(i, j) - f * a(r, j)) / prev;
            }
            a(i, c) = 0;
            // b rows get the same fraction-free update
            const Rational inv_prev = Rational(1) / prev;
            for (std::size_t j = 0; j < nb; ++j) {
                b(i, j) = (b(i, j) * piv - b(r, j) * f) * inv_prev;
            }
        }
        prev = piv;
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.rank = r;

    for (std::size_t i = r; i < m; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            if (!is_zero(b(i, j))) {
                raise(errc::inconsistent, "linear system is inconsistent (row " + std::to_string(i) + ")");
            }
        }
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : out.pivot_columns) {
        is_pivot[c] = true;
    }

    out.particular = Matrix<T>(n, nb);
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t pc = out.pivot_columns[k];
        const Rational inv = Rational(1) / a(k, pc);
        for (std::size_t j = 0; j < nb; ++j) {
            T acc = b(k, j);
            for (std::size_t c = pc + 1; c < n; ++c) {
                if (is_pivot[c] && sgn(a(k, c)) != 0) {
                    acc = acc - out.particular(c, j) * a(k, c);
                }
            }
            out.particular(pc, j) = acc * inv;
        }
    }

    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> v(n);
        v[f] = 1;
        for (std::size_t k = r; k-- > 0;) {
            const std::size_t pc = out.pivot_columns[k];
            Rational acc = 0;
            for (std::size_t c = pc + 1; c < n; ++c) {
                acc -= a(k, c) * v[c];
            }
            v[pc] = acc / a(k, pc);
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

inline std::size_t rank(const RatMatrix &a)
{
    return ff_solve(a, RatMatrix(a.rows(), 0)).rank;
}

} // namespace weier

#endif
