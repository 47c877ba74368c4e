#ifndef WEIER_CORE_MATRIX_HPP
#define WEIER_CORE_MATRIX_HPP

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include <weier/core/errors.hpp>
#include <weier/core/rational.hpp>

namespace weier
{

// Row-major dense matrix. Dimensions are fixed at construction.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix column(const std::vector<T> &v)
    {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            m(i, 0) = v[i];
        }
        return m;
    }

    std::size_t rows() const noexcept
    {
        return rows_;
    }
    std::size_t cols() const noexcept
    {
        return cols_;
    }

    T &operator()(std::size_t i, std::size_t j)
    {
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * cols_ + j];
    }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] = (*this)(i, j);
        }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    // Rows [first, first+count) as a new matrix.
    Matrix row_block(std::size_t first, std::size_t count) const
    {
        Matrix m(count, cols_);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(i, j) = (*this)(first + i, j);
            }
        }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;

template <typename A, typename B>
auto operator*(const Matrix<A> &a, const Matrix<B> &b)
{
    // gmpxx products are expression templates, so pick the wider operand type.
    using R = std::conditional_t<std::is_same_v<A, Rational>, B, A>;
    if (a.cols() != b.rows()) {
        raise(errc::invalid_argument, "matrix product dimension mismatch");
    }
    Matrix<R> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_null(a(i, k))) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) = out(i, j) + a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

// Row k holds values^k, k = 0 .. n-1.
template <typename T>
Matrix<T> vandermonde(const std::vector<T> &values)
{
    const std::size_t n = values.size();
    Matrix<T> m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        T p(1);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, j) = p;
            p = p * values[j];
        }
    }
    return m;
}

// Fraction-free (Bareiss) determinant over Q.
inline Rational determinant(RatMatrix m)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        raise(errc::invalid_argument, "determinant of a non-square matrix");
    }
    if (n == 0) {
        return Rational(1);
    }
    Rational prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) {
                ++p;
            }
            if (p == n) {
                return Rational(0);
            }
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Rational(-m(n - 1, n - 1));
}

} // namespace weier

#endif
